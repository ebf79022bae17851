#include "tiltcover/rep.hpp"

#include "tiltcover/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace tiltcover {

int Rep::total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
}

void Rep::validate() const {
    if (!alg) throw InvalidInput("representation without an algebra");
    const Quiver& q = alg->quiver;
    if (dims.size() != q.vertices.size()) throw InvalidInput("dimension vector size mismatch");
    for (int d : dims)
        if (d < 0) throw InvalidInput("negative dimension");
    if (maps.size() != q.arrows.size()) throw InvalidInput("arrow map count mismatch");
    for (std::size_t a = 0; a < maps.size(); ++a) {
        if (maps[a].rows() != dims[q.arrows[a].src] || maps[a].cols() != dims[q.arrows[a].tgt])
            throw InvalidInput("arrow matrix shape mismatch");
    }
    for (const Relation& r : alg->relations) {
        QMat sum(dims[r.paths[0].src], dims[r.paths[0].tgt]);
        for (std::size_t k = 0; k < r.paths.size(); ++k)
            sum = sum + path_eval(*this, r.paths[k]).scaled(r.coeffs[k]);
        if (!sum.is_zero_matrix()) throw InvalidInput("relation does not vanish on representation");
    }
}

bool same_algebra(const Rep& a, const Rep& b) { return a.alg == b.alg; }

namespace {

void require_same_algebra(const Rep& a, const Rep& b) {
    if (!same_algebra(a, b)) throw InvalidInput("representations over different algebras");
}

}  // namespace

QMat path_eval(const Rep& m, const Path& p) {
    QMat acc = QMat::identity(m.dims[p.src]);
    for (int a : p.arrows) acc = acc * m.maps[a];
    return acc;
}

Rep zero_rep(AlgebraPtr alg) {
    Rep m;
    m.alg = std::move(alg);
    m.dims.assign(m.alg->vertex_count(), 0);
    for (int a = 0; a < m.alg->arrow_count(); ++a) m.maps.push_back(QMat(0, 0));
    return m;
}

Rep simple_rep(AlgebraPtr alg, int v) {
    Rep m = zero_rep(std::move(alg));
    m.dims[v] = 1;
    const Quiver& q = m.alg->quiver;
    for (int a = 0; a < m.alg->arrow_count(); ++a)
        m.maps[a] = QMat(m.dims[q.arrows[a].src], m.dims[q.arrows[a].tgt]);
    m.validate();
    return m;
}

Rep projective_rep(AlgebraPtr alg, int v) {
    Rep m;
    m.alg = std::move(alg);
    const Algebra& A = *m.alg;
    const Quiver& q = A.quiver;
    int nv = A.vertex_count();
    m.dims.resize(nv);
    // position of a global basis index inside pair_basis(v, w)
    std::map<int, int> pos;
    for (int w = 0; w < nv; ++w) {
        const auto& pb = A.pair_basis(v, w);
        m.dims[w] = static_cast<int>(pb.size());
        for (std::size_t i = 0; i < pb.size(); ++i) pos[pb[i]] = static_cast<int>(i);
    }
    for (int a = 0; a < A.arrow_count(); ++a) {
        int s = q.arrows[a].src, t = q.arrows[a].tgt;
        QMat mat(m.dims[s], m.dims[t]);
        const auto& pb = A.pair_basis(v, s);
        for (std::size_t i = 0; i < pb.size(); ++i) {
            Path p = A.basis_path(pb[i]);
            p.arrows.push_back(a);
            p.tgt = t;
            for (const auto& [g, c] : A.normal_form(p)) mat.set(static_cast<int>(i), pos.at(g), c);
        }
        m.maps.push_back(mat);
    }
    m.validate();
    return m;
}

Rep rep_from_maps(AlgebraPtr alg, std::vector<int> dims, std::vector<QMat> maps) {
    Rep m;
    m.alg = std::move(alg);
    m.dims = std::move(dims);
    m.maps = std::move(maps);
    m.validate();
    return m;
}

bool rep_less(const Rep& a, const Rep& b) {
    if (a.dims != b.dims) return a.dims < b.dims;
    for (std::size_t k = 0; k < a.maps.size(); ++k) {
        for (int r = 0; r < a.maps[k].rows(); ++r) {
            const auto& ra = a.maps[k].row(r);
            const auto& rb = b.maps[k].row(r);
            for (std::size_t i = 0; i < std::min(ra.size(), rb.size()); ++i) {
                if (ra[i].first != rb[i].first) return ra[i].first < rb[i].first;
                if (ra[i].second != rb[i].second) return ra[i].second < rb[i].second;
            }
            if (ra.size() != rb.size()) return ra.size() < rb.size();
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// morphisms

void RepMorphism::validate() const {
    require_same_algebra(source, target);
    const Quiver& q = source.alg->quiver;
    if (mats.size() != q.vertices.size()) throw InvalidInput("morphism matrix count mismatch");
    for (std::size_t v = 0; v < mats.size(); ++v)
        if (mats[v].rows() != source.dims[v] || mats[v].cols() != target.dims[v])
            throw InvalidInput("morphism matrix shape mismatch");
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        int s = q.arrows[a].src, t = q.arrows[a].tgt;
        if (!((source.maps[a] * mats[t]) == (mats[s] * target.maps[a])))
            throw InvalidInput("morphism squares do not commute");
    }
}

bool RepMorphism::is_zero() const {
    for (const QMat& m : mats)
        if (!m.is_zero_matrix()) return false;
    return true;
}

RepMorphism identity_morphism(const Rep& m) {
    RepMorphism f;
    f.source = m;
    f.target = m;
    for (int d : m.dims) f.mats.push_back(QMat::identity(d));
    return f;
}

RepMorphism zero_morphism(const Rep& m, const Rep& n) {
    require_same_algebra(m, n);
    RepMorphism f;
    f.source = m;
    f.target = n;
    for (std::size_t v = 0; v < m.dims.size(); ++v) f.mats.push_back(QMat(m.dims[v], n.dims[v]));
    return f;
}

RepMorphism morphism_from_mats(const Rep& m, const Rep& n, std::vector<QMat> mats) {
    RepMorphism f;
    f.source = m;
    f.target = n;
    f.mats = std::move(mats);
    f.validate();
    return f;
}

RepMorphism compose(const RepMorphism& f, const RepMorphism& g) {
    if (f.target.dims != g.source.dims || !same_algebra(f.target, g.source))
        throw InvalidInput("composition endpoint mismatch");
    RepMorphism h;
    h.source = f.source;
    h.target = g.target;
    for (std::size_t v = 0; v < f.mats.size(); ++v) h.mats.push_back(f.mats[v] * g.mats[v]);
    return h;
}

RepMorphism morphism_combo(const std::vector<RepMorphism>& basis,
                           const std::vector<Rational>& coeffs) {
    if (basis.empty() || basis.size() != coeffs.size())
        throw InvalidInput("morphism combination arity mismatch");
    RepMorphism f = zero_morphism(basis[0].source, basis[0].target);
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t v = 0; v < f.mats.size(); ++v)
            f.mats[v] = f.mats[v] + basis[k].mats[v].scaled(coeffs[k]);
    return f;
}

bool is_invertible(const RepMorphism& f) {
    for (std::size_t v = 0; v < f.mats.size(); ++v) {
        if (f.mats[v].rows() != f.mats[v].cols()) return false;
        if (rank(f.mats[v]) != f.mats[v].rows()) return false;
    }
    return true;
}

RepMorphism invert(const RepMorphism& f) {
    RepMorphism g;
    g.source = f.target;
    g.target = f.source;
    for (const QMat& m : f.mats) {
        auto inv = inverse(m);
        if (!inv) throw InvalidInput("morphism is not invertible");
        g.mats.push_back(*inv);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Hom spaces

std::vector<RepMorphism> hom_basis(const Rep& m, const Rep& n) {
    require_same_algebra(m, n);
    const Quiver& q = m.alg->quiver;
    int nv = static_cast<int>(q.vertices.size());

    // unknowns: entries of f_v, row-major, vertex blocks in order
    std::vector<int> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + m.dims[v] * n.dims[v];
    int unknowns = offset[nv];
    auto idx = [&](int v, int i, int j) { return offset[v] + i * n.dims[v] + j; };

    // one equation block per arrow: M_a f_t - f_s N_a = 0
    std::vector<std::map<int, Rational>> eqs;
    for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
        int s = q.arrows[a].src, t = q.arrows[a].tgt;
        for (int i = 0; i < m.dims[s]; ++i)
            for (int j = 0; j < n.dims[t]; ++j) {
                std::map<int, Rational> eq;
                for (const auto& [k, c] : m.maps[a].row(i)) eq[idx(t, k, j)] += c;
                // -(f_s N_a)_{ij} = -sum_l f_s[i,l] N_a[l,j]
                for (int l = 0; l < n.dims[s]; ++l) {
                    Rational c = n.maps[a].get(l, j);
                    if (!is_zero(c)) eq[idx(s, i, l)] -= c;
                }
                bool nonzero = false;
                for (const auto& [_, c] : eq) nonzero = nonzero || !is_zero(c);
                if (nonzero) eqs.push_back(std::move(eq));
            }
    }

    QMat sys(static_cast<int>(eqs.size()), unknowns);
    for (std::size_t r = 0; r < eqs.size(); ++r)
        for (const auto& [c, val] : eqs[r])
            if (!is_zero(val)) sys.set(static_cast<int>(r), c, val);

    QMat ker = unknowns == 0 ? QMat(0, 0) : kernel_basis(sys);
    std::vector<RepMorphism> out;
    for (int c = 0; c < ker.cols(); ++c) {
        RepMorphism f = zero_morphism(m, n);
        for (int v = 0; v < nv; ++v) {
            QMat mat(m.dims[v], n.dims[v]);
            for (int i = 0; i < m.dims[v]; ++i)
                for (int j = 0; j < n.dims[v]; ++j) {
                    Rational val = ker.get(idx(v, i, j), c);
                    if (!is_zero(val)) mat.set(i, j, val);
                }
            f.mats[v] = mat;
        }
        out.push_back(std::move(f));
    }
    return out;
}

int hom_dim(const Rep& m, const Rep& n) { return static_cast<int>(hom_basis(m, n).size()); }

// ---------------------------------------------------------------------------
// sums, subs, quotients

DirectSum direct_sum(const std::vector<Rep>& parts) {
    if (parts.empty()) throw InvalidInput("direct sum of an empty list");
    DirectSum ds;
    Rep& total = ds.rep;
    total.alg = parts[0].alg;
    int nv = total.alg->vertex_count();
    total.dims.assign(nv, 0);
    std::vector<std::vector<int>> voffset(parts.size(), std::vector<int>(nv, 0));
    for (std::size_t k = 0; k < parts.size(); ++k) {
        require_same_algebra(parts[0], parts[k]);
        for (int v = 0; v < nv; ++v) {
            voffset[k][v] = total.dims[v];
            total.dims[v] += parts[k].dims[v];
        }
    }
    const Quiver& q = total.alg->quiver;
    for (int a = 0; a < total.alg->arrow_count(); ++a) {
        int s = q.arrows[a].src, t = q.arrows[a].tgt;
        QMat mat(total.dims[s], total.dims[t]);
        for (std::size_t k = 0; k < parts.size(); ++k)
            for (int i = 0; i < parts[k].dims[s]; ++i)
                for (const auto& [j, c] : parts[k].maps[a].row(i))
                    mat.set(voffset[k][s] + i, voffset[k][t] + j, c);
        total.maps.push_back(mat);
    }
    for (std::size_t k = 0; k < parts.size(); ++k) {
        RepMorphism inc = zero_morphism(parts[k], total);
        RepMorphism prj = zero_morphism(total, parts[k]);
        for (int v = 0; v < nv; ++v)
            for (int i = 0; i < parts[k].dims[v]; ++i) {
                inc.mats[v].set(i, voffset[k][v] + i, Rational(1));
                prj.mats[v].set(voffset[k][v] + i, i, Rational(1));
            }
        ds.inclusions.push_back(std::move(inc));
        ds.projections.push_back(std::move(prj));
    }
    return ds;
}

SubQuot sub_rep(const Rep& m, const std::vector<QMat>& gens) {
    int nv = m.alg->vertex_count();
    if (static_cast<int>(gens.size()) != nv) throw InvalidInput("generator block count mismatch");
    std::vector<QMat> basis(nv, QMat(0, 0));
    for (int v = 0; v < nv; ++v) {
        if (gens[v].cols() != m.dims[v]) throw InvalidInput("generator width mismatch");
        basis[v] = row_space_basis(gens[v]);
    }
    SubQuot s;
    s.rep.alg = m.alg;
    s.rep.dims.resize(nv);
    for (int v = 0; v < nv; ++v) s.rep.dims[v] = basis[v].rows();
    const Quiver& q = m.alg->quiver;
    for (int a = 0; a < m.alg->arrow_count(); ++a) {
        int sv = q.arrows[a].src, tv = q.arrows[a].tgt;
        QMat pushed = basis[sv] * m.maps[a];
        auto coords = coords_in_rows(basis[tv], pushed);
        if (!coords) throw VerificationFailure("row span is not an invariant subspace");
        s.rep.maps.push_back(*coords);
    }
    s.map.source = s.rep;
    s.map.target = m;
    s.map.mats = basis;
    s.rep.validate();
    s.map.validate();
    return s;
}

namespace {

// canonical projection to the quotient by a row space: standard basis vectors at
// the free columns of the RREF represent the quotient basis
struct QuotChart {
    QMat pi;     // dim x q
    QMat sigma;  // q x dim, section with sigma * pi = id_q
};

QuotChart quotient_chart(const QMat& sub_rows, int dim) {
    std::vector<int> piv;
    QMat R = rref(sub_rows, &piv);
    std::vector<char> is_piv(dim, 0);
    for (int p : piv) is_piv[p] = 1;
    std::vector<int> free_cols;
    for (int j = 0; j < dim; ++j)
        if (!is_piv[j]) free_cols.push_back(j);
    int qd = static_cast<int>(free_cols.size());
    std::map<int, int> free_pos;
    for (int j = 0; j < qd; ++j) free_pos[free_cols[j]] = j;

    QuotChart ch{QMat(dim, qd), QMat(qd, dim)};
    for (int j = 0; j < qd; ++j) ch.sigma.set(j, free_cols[j], Rational(1));
    for (int i = 0; i < dim; ++i) {
        // reduce e_i modulo the pivot rows, keep free coordinates
        if (is_piv[i]) {
            // e_i - R_row(pivot i) is supported on free columns
            int r = 0;
            while (piv[r] != i) ++r;
            for (const auto& [c, val] : R.row(r)) {
                if (c == i) continue;
                ch.pi.set(i, free_pos.at(c), Rational(0) - val);
            }
        } else {
            ch.pi.set(i, free_pos.at(i), Rational(1));
        }
    }
    return ch;
}

}  // namespace

SubQuot quotient_rep(const Rep& m, const std::vector<QMat>& gens) {
    int nv = m.alg->vertex_count();
    if (static_cast<int>(gens.size()) != nv) throw InvalidInput("generator block count mismatch");
    // invariance is certified by constructing the subrepresentation first
    SubQuot sub = sub_rep(m, gens);

    std::vector<QuotChart> charts;
    for (int v = 0; v < nv; ++v) charts.push_back(quotient_chart(sub.map.mats[v], m.dims[v]));

    SubQuot qout;
    qout.rep.alg = m.alg;
    qout.rep.dims.resize(nv);
    for (int v = 0; v < nv; ++v) qout.rep.dims[v] = charts[v].pi.cols();
    const Quiver& q = m.alg->quiver;
    for (int a = 0; a < m.alg->arrow_count(); ++a) {
        int sv = q.arrows[a].src, tv = q.arrows[a].tgt;
        qout.rep.maps.push_back(charts[sv].sigma * m.maps[a] * charts[tv].pi);
    }
    qout.map.source = m;
    qout.map.target = qout.rep;
    for (int v = 0; v < nv; ++v) qout.map.mats.push_back(charts[v].pi);
    qout.rep.validate();
    qout.map.validate();
    return qout;
}

SubQuot kernel_rep(const RepMorphism& f) {
    std::vector<QMat> gens;
    for (const QMat& m : f.mats) gens.push_back(left_kernel(m));
    return sub_rep(f.source, gens);
}

SubQuot image_rep(const RepMorphism& f) {
    std::vector<QMat> gens = f.mats;
    return sub_rep(f.target, gens);
}

SubQuot cokernel_rep(const RepMorphism& f) { return quotient_rep(f.target, f.mats); }

// ---------------------------------------------------------------------------
// projective covers and resolutions

std::vector<int> top_dims(const Rep& m) {
    const Quiver& q = m.alg->quiver;
    int nv = m.alg->vertex_count();
    std::vector<int> t(nv);
    for (int v = 0; v < nv; ++v) {
        QMat stack(0, m.dims[v]);
        for (int a = 0; a < m.alg->arrow_count(); ++a)
            if (q.arrows[a].tgt == v) stack = QMat::vstack(stack, m.maps[a]);
        t[v] = m.dims[v] - rank(stack);
    }
    return t;
}

ProjCover projective_cover(const Rep& m) {
    const Quiver& q = m.alg->quiver;
    int nv = m.alg->vertex_count();

    // lifts of a basis of top(M): free columns of the radical row space
    std::vector<Rep> parts;
    std::vector<std::pair<int, int>> lifts;  // (vertex, unit-vector index)
    for (int v = 0; v < nv; ++v) {
        QMat stack(0, m.dims[v]);
        for (int a = 0; a < m.alg->arrow_count(); ++a)
            if (q.arrows[a].tgt == v) stack = QMat::vstack(stack, m.maps[a]);
        std::vector<int> piv;
        rref(stack, &piv);
        std::vector<char> is_piv(m.dims[v], 0);
        for (int p : piv) is_piv[p] = 1;
        for (int j = 0; j < m.dims[v]; ++j)
            if (!is_piv[j]) {
                parts.push_back(projective_rep(m.alg, v));
                lifts.push_back({v, j});
            }
    }

    ProjCover pc;
    if (parts.empty()) {
        pc.proj = zero_rep(m.alg);
        pc.onto = zero_morphism(pc.proj, m);
        if (!m.is_zero()) throw VerificationFailure("nonzero module with zero top");
        return pc;
    }

    DirectSum ds = direct_sum(parts);
    pc.proj = ds.rep;
    pc.onto = zero_morphism(pc.proj, m);
    // summand k covers via p -> u * M(p) for the lift u at vertex lifts[k]
    std::vector<int> roffset(nv, 0);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        auto [w, unit] = lifts[k];
        for (int x = 0; x < nv; ++x) {
            const auto& pb = m.alg->pair_basis(w, x);
            for (std::size_t i = 0; i < pb.size(); ++i) {
                QMat img = path_eval(m, m.alg->basis_path(pb[i]));  // dims[w] x dims[x]
                // row `unit` of img is u * M(p)
                int row_in_total = 0;
                // position of summand k's basis element i at vertex x inside the sum
                for (std::size_t k2 = 0; k2 < k; ++k2) row_in_total += parts[k2].dims[x];
                row_in_total += static_cast<int>(i);
                for (const auto& [j, c] : img.row(unit)) pc.onto.mats[x].set(row_in_total, j, c);
            }
        }
    }
    pc.onto.validate();
    for (int x = 0; x < nv; ++x)
        if (rank(pc.onto.mats[x]) != m.dims[x])
            throw VerificationFailure("projective cover is not surjective");
    return pc;
}

namespace {

std::optional<Resolution> try_resolve(const Rep& m, int cap) {
    Resolution res;
    Rep cur = m;
    RepMorphism prev_inc;  // inclusion of the current syzygy into the last projective
    bool have_inc = false;
    for (int step = 0; step <= cap; ++step) {
        ProjCover pc = projective_cover(cur);
        res.projectives.push_back(pc.proj);
        res.maps.push_back(have_inc ? compose(pc.onto, prev_inc) : pc.onto);
        SubQuot omega = kernel_rep(pc.onto);
        if (omega.rep.is_zero()) return res;
        cur = omega.rep;
        prev_inc = omega.map;
        have_inc = true;
    }
    return std::nullopt;
}

}  // namespace

Resolution projective_resolution(const Rep& m, int cap) {
    if (cap < 1) throw InvalidInput("resolution cap must be at least 1");
    auto res = try_resolve(m, cap);
    if (!res) throw CapExceeded("resolution exceeds cap");
    return *res;
}

std::optional<int> pd_at_most(const Rep& m, int cap) {
    auto res = try_resolve(m, cap);
    if (!res) return std::nullopt;
    return res->length();
}

// ---------------------------------------------------------------------------
// Ext^1

QMat flatten_morphisms(const std::vector<RepMorphism>& fs, int width) {
    QMat flat(static_cast<int>(fs.size()), width);
    for (std::size_t k = 0; k < fs.size(); ++k) {
        int off = 0;
        for (const QMat& m : fs[k].mats) {
            for (int i = 0; i < m.rows(); ++i)
                for (const auto& [j, c] : m.row(i))
                    flat.set(static_cast<int>(k), off + i * m.cols() + j, c);
            off += m.rows() * m.cols();
        }
    }
    return flat;
}

int hom_flat_width(const Rep& m, const Rep& n) {
    int w = 0;
    for (std::size_t v = 0; v < m.dims.size(); ++v) w += m.dims[v] * n.dims[v];
    return w;
}

QMat radical_coords(const std::vector<RepMorphism>& end_basis) {
    // tr(a * b) without forming the product
    auto trace_prod = [](const QMat& a, const QMat& b) {
        Rational t(0);
        for (int i = 0; i < a.rows(); ++i)
            for (const auto& [k, c] : a.row(i)) t += c * b.get(k, i);
        return t;
    };
    const int d = static_cast<int>(end_basis.size());
    QMat gram(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Rational t(0);
            for (std::size_t v = 0; v < end_basis[i].mats.size(); ++v)
                t += trace_prod(end_basis[i].mats[v], end_basis[j].mats[v]);
            if (t != 0) gram.set(i, j, t);
        }
    return kernel_basis(gram).transpose();
}

SyzygyData syzygy(const Rep& m) {
    SyzygyData sy;
    sy.cover = projective_cover(m);
    sy.omega = kernel_rep(sy.cover.onto);
    return sy;
}

RepMorphism lift_through(const RepMorphism& f, const RepMorphism& pi) {
    std::vector<RepMorphism> basis = hom_basis(f.source, pi.source);
    if (basis.empty()) {
        if (!f.is_zero()) throw VerificationFailure("projective lifting failed");
        return zero_morphism(f.source, pi.source);
    }
    std::vector<RepMorphism> through;
    through.reserve(basis.size());
    for (const RepMorphism& b : basis) through.push_back(compose(b, pi));
    int w = hom_flat_width(f.source, pi.target);
    auto x = coords_in_rows(flatten_morphisms(through, w), flatten_morphisms({f}, w));
    if (!x) throw VerificationFailure("projective lifting failed");
    std::vector<Rational> c(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) c[k] = x->get(0, static_cast<int>(k));
    return morphism_combo(basis, c);
}

ResLift lift_to_resolutions(const RepMorphism& g, const SyzygyData& src, const SyzygyData& tgt) {
    ResLift rl;
    rl.on_cover = lift_through(compose(src.cover.onto, g), tgt.cover.onto);
    if (src.omega.rep.is_zero()) {
        rl.on_syzygy = zero_morphism(src.omega.rep, tgt.omega.rep);
        return rl;
    }
    // Omega src -> P_0 tgt lands inside ker(onto) = Omega tgt
    RepMorphism top = compose(src.omega.map, rl.on_cover);
    if (tgt.omega.rep.is_zero()) {
        if (!top.is_zero()) throw VerificationFailure("syzygy restriction escapes the target");
        rl.on_syzygy = zero_morphism(src.omega.rep, tgt.omega.rep);
        return rl;
    }
    std::vector<QMat> mats;
    for (std::size_t v = 0; v < top.mats.size(); ++v) {
        auto x = coords_in_rows(tgt.omega.map.mats[v], top.mats[v]);
        if (!x) throw VerificationFailure("syzygy restriction escapes the target");
        mats.push_back(*x);
    }
    rl.on_syzygy = morphism_from_mats(src.omega.rep, tgt.omega.rep, std::move(mats));
    return rl;
}

int ext1_dim(const Rep& m, const Rep& n) {
    require_same_algebra(m, n);
    SyzygyData sy = syzygy(m);
    if (sy.omega.rep.is_zero()) return 0;
    std::vector<RepMorphism> hom_omega = hom_basis(sy.omega.rep, n);
    if (hom_omega.empty()) return 0;
    std::vector<RepMorphism> restricted;
    for (const RepMorphism& g : hom_basis(sy.cover.proj, n))
        restricted.push_back(compose(sy.omega.map, g));
    int width = hom_flat_width(sy.omega.rep, n);
    return static_cast<int>(hom_omega.size()) - rank(flatten_morphisms(restricted, width));
}

std::vector<RepMorphism> ext1_cocycles(const SyzygyData& sy, const Rep& n) {
    std::vector<RepMorphism> out;
    if (sy.omega.rep.is_zero()) return out;
    std::vector<RepMorphism> hom_omega = hom_basis(sy.omega.rep, n);
    std::vector<RepMorphism> restricted;
    for (const RepMorphism& g : hom_basis(sy.cover.proj, n))
        restricted.push_back(compose(sy.omega.map, g));
    int width = hom_flat_width(sy.omega.rep, n);
    QMat span = flatten_morphisms(restricted, width);
    int r = rank(span);
    // greedily extend the restriction span by hom basis elements
    for (const RepMorphism& h : hom_omega) {
        QMat cand = QMat::vstack(span, flatten_morphisms({h}, width));
        int r2 = rank(cand);
        if (r2 > r) {
            out.push_back(h);
            span = cand;
            r = r2;
        }
    }
    return out;
}

ShortExact extension_of(const SyzygyData& sy, const Rep& n, const RepMorphism& cocycle) {
    // pushout of  Omega M --inc--> P_0  along  Omega M --c--> N:
    // E = (N (+) P_0) / { (x c, -x inc) },  0 -> N -> E -> M -> 0
    const Rep& omega = sy.omega.rep;
    const Rep& p0 = sy.cover.proj;
    const Rep& m = sy.cover.onto.target;
    const RepMorphism& inc = sy.omega.map;
    DirectSum ds = direct_sum({n, p0});
    int nv = m.alg->vertex_count();
    std::vector<QMat> wrows;
    for (int v = 0; v < nv; ++v) {
        QMat w(omega.dims[v], n.dims[v] + p0.dims[v]);
        for (int i = 0; i < omega.dims[v]; ++i) {
            for (const auto& [j, c] : cocycle.mats[v].row(i)) w.set(i, j, c);
            for (const auto& [j, c] : inc.mats[v].row(i)) w.set(i, n.dims[v] + j, Rational(0) - c);
        }
        wrows.push_back(w);
    }
    SubQuot quot = quotient_rep(ds.rep, wrows);

    ShortExact se;
    se.inc = compose(ds.inclusions[0], quot.map);
    // E -> M descends from (y, z) -> phi(z); solve pi * X = (0; phi) per vertex
    RepMorphism down = zero_morphism(quot.rep, m);
    for (int v = 0; v < nv; ++v) {
        QMat big = QMat::vstack(QMat(n.dims[v], m.dims[v]), sy.cover.onto.mats[v]);
        auto X = solve_matrix(quot.map.mats[v], big);
        if (!X) throw VerificationFailure("pushout projection does not descend");
        down.mats[v] = *X;
    }
    down.validate();
    se.proj = down;
    verify_exact(se);
    return se;
}

void verify_exact(const ShortExact& s) {
    const Rep& n = s.inc.source;
    const Rep& e = s.inc.target;
    const Rep& m = s.proj.target;
    if (e.dims != s.proj.source.dims) throw VerificationFailure("middle term mismatch");
    for (std::size_t v = 0; v < e.dims.size(); ++v) {
        if (n.dims[v] + m.dims[v] != e.dims[v]) throw VerificationFailure("dimension count fails");
        if (rank(s.inc.mats[v]) != n.dims[v]) throw VerificationFailure("inclusion not injective");
        if (rank(s.proj.mats[v]) != m.dims[v]) throw VerificationFailure("projection not surjective");
        if (!(s.inc.mats[v] * s.proj.mats[v]).is_zero_matrix())
            throw VerificationFailure("composite inc;proj nonzero");
    }
}

// ---------------------------------------------------------------------------
// trace

Rep trace_in(const Rep& t, const Rep& x) {
    require_same_algebra(t, x);
    int nv = x.alg->vertex_count();
    std::vector<QMat> stacks(nv, QMat(0, 0));
    for (int v = 0; v < nv; ++v) stacks[v] = QMat(0, x.dims[v]);
    for (const RepMorphism& f : hom_basis(t, x))
        for (int v = 0; v < nv; ++v) stacks[v] = QMat::vstack(stacks[v], f.mats[v]);
    return sub_rep(x, stacks).rep;
}

}  // namespace tiltcover
