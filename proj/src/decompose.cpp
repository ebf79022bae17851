#include "tiltcover/errors.hpp"
#include "tiltcover/polyfactor.hpp"
#include "tiltcover/rep.hpp"

#include <algorithm>
#include <cassert>

// Endomorphism-ring analysis: indecomposability, splitting, isomorphism.
//
// End(M) is computed as hom_basis(M, M).  Its radical is the kernel of the
// trace form tr(fg) on M (exact in characteristic zero because End(M) acts
// faithfully on M).  Splitting hunts for a nontrivial idempotent three ways:
//   1. an element of End(M) whose minimal polynomial has at least two
//      coprime primary factors gives orthogonal idempotents by CRT;
//   2. an element of End/rad with a primary but non-irreducible minimal
//      polynomial yields a nonzero nilpotent, whose left ideal is generated
//      by an idempotent (semisimplicity), lifted through the radical by
//      Newton iteration e <- 3e^2 - 2e^3;
//   3. an element of End/rad whose minimal polynomial is irreducible of
//      degree dim End/rad certifies that End/rad is a field: for dimension
//      > 1 that is the non-split case over Q and is raised as an error.
// Splits are verified by reassembling M from the summands.

namespace tiltcover {

namespace {

Rational trace_prod(const QMat& a, const QMat& b) {
    Rational t(0);
    for (int i = 0; i < a.rows(); ++i)
        for (const auto& [j, c] : a.row(i)) t += c * b.get(j, i);
    return t;
}

QMat block_diag(const std::vector<QMat>& mats) {
    int n = 0;
    for (const QMat& m : mats) n += m.rows();
    QMat out(n, n);
    int off = 0;
    for (const QMat& m : mats) {
        for (int i = 0; i < m.rows(); ++i)
            for (const auto& [j, c] : m.row(i)) out.set(off + i, off + j, c);
        off += m.rows();
    }
    return out;
}

std::uint64_t fnv1a(const std::vector<int>& xs, std::uint64_t h = 1469598103934665603ull) {
    for (int x : xs) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
        h *= 1099511628211ull;
    }
    return h;
}

struct EndData {
    const Rep* m = nullptr;
    std::vector<RepMorphism> basis;
    int d = 0;
    int width = 0;
    QMat flat;  // d x width, rows independent

    explicit EndData(const Rep& rep) : m(&rep) {
        basis = hom_basis(rep, rep);
        d = static_cast<int>(basis.size());
        for (std::size_t v = 0; v < rep.dims.size(); ++v) width += rep.dims[v] * rep.dims[v];
        flat = QMat(d, width);
        for (int k = 0; k < d; ++k) {
            int off = 0;
            for (const QMat& mat : basis[k].mats) {
                for (int i = 0; i < mat.rows(); ++i)
                    for (const auto& [j, c] : mat.row(i)) flat.set(k, off + i * mat.cols() + j, c);
                off += mat.rows() * mat.cols();
            }
        }
    }

    std::vector<Rational> coords(const RepMorphism& f) const {
        QMat v(1, width);
        int off = 0;
        for (const QMat& mat : f.mats) {
            for (int i = 0; i < mat.rows(); ++i)
                for (const auto& [j, c] : mat.row(i)) v.set(0, off + i * mat.cols() + j, c);
            off += mat.rows() * mat.cols();
        }
        auto x = coords_in_rows(flat, v);
        if (!x) throw VerificationFailure("endomorphism outside its own basis span");
        std::vector<Rational> out(d);
        for (int k = 0; k < d; ++k) out[k] = x->get(0, k);
        return out;
    }

    RepMorphism combo(const std::vector<Rational>& c) const {
        return morphism_combo(basis, c);
    }
};

// the semisimple quotient End/rad in explicit coordinates
struct SemisimpleQuot {
    const EndData* end = nullptr;
    QMat rad_rref;              // p x d, canonical rows spanning the radical
    std::vector<int> piv;       // pivot columns of rad_rref
    std::vector<int> free_cols; // complement positions: coordinates of E' = End/rad
    int s = 0;
    std::vector<Rational> one;  // coords of the identity in E'

    explicit SemisimpleQuot(const EndData& e) : end(&e) {
        QMat gram(e.d, e.d);
        for (int i = 0; i < e.d; ++i)
            for (int j = 0; j < e.d; ++j) {
                Rational t(0);
                for (std::size_t v = 0; v < e.m->dims.size(); ++v)
                    t += trace_prod(e.basis[i].mats[v], e.basis[j].mats[v]);
                if (!is_zero(t)) gram.set(i, j, t);
            }
        QMat rad_cols = kernel_basis(gram);         // d x p
        rad_rref = rref(rad_cols.transpose(), &piv);  // p x d
        std::vector<char> is_piv(e.d, 0);
        for (int p : piv) is_piv[p] = 1;
        for (int j = 0; j < e.d; ++j)
            if (!is_piv[j]) free_cols.push_back(j);
        s = static_cast<int>(free_cols.size());
        one = reduce(e.coords(identity_morphism(*e.m)));
    }

    // reduce End coordinates modulo the radical, keep free coordinates
    std::vector<Rational> reduce(const std::vector<Rational>& x) const {
        std::vector<Rational> work = x;
        for (int r = 0; r < rad_rref.rows(); ++r) {
            Rational c = work[piv[r]];
            if (is_zero(c)) continue;
            for (const auto& [col, val] : rad_rref.row(r)) work[col] -= c * val;
        }
        std::vector<Rational> out(s);
        for (int j = 0; j < s; ++j) out[j] = work[free_cols[j]];
        return out;
    }

    std::vector<Rational> lift(const std::vector<Rational>& u) const {
        std::vector<Rational> out(end->d, Rational(0));
        for (int j = 0; j < s; ++j) out[free_cols[j]] = u[j];
        return out;
    }

    std::vector<Rational> mult(const std::vector<Rational>& u, const std::vector<Rational>& v) const {
        RepMorphism f = end->combo(lift(u));
        RepMorphism g = end->combo(lift(v));
        return reduce(end->coords(compose(f, g)));
    }

    bool vec_zero(const std::vector<Rational>& u) const {
        for (const auto& c : u)
            if (!is_zero(c)) return false;
        return true;
    }

    // matrix of left multiplication by u on E' (row convention)
    QMat left_mult(const std::vector<Rational>& u) const {
        QMat L(s, s);
        for (int j = 0; j < s; ++j) {
            std::vector<Rational> ej(s, Rational(0));
            ej[j] = Rational(1);
            std::vector<Rational> p = mult(ej, u);  // coords(e_j * u) form row j
            for (int k = 0; k < s; ++k)
                if (!is_zero(p[k])) L.set(j, k, p[k]);
        }
        return L;
    }

    // evaluate a polynomial at u inside E'
    std::vector<Rational> poly_at(const QPoly& g, const std::vector<Rational>& u) const {
        std::vector<Rational> acc(s, Rational(0));
        std::vector<Rational> pw = one;
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (!is_zero(g[k]))
                for (int j = 0; j < s; ++j) acc[j] += g[k] * pw[j];
            if (k + 1 < g.size()) pw = mult(pw, u);
        }
        return acc;
    }
};

bool morphism_equal(const RepMorphism& a, const RepMorphism& b) {
    for (std::size_t v = 0; v < a.mats.size(); ++v)
        if (!(a.mats[v] == b.mats[v])) return false;
    return true;
}

// Newton lift of an idempotent of End/rad to an exact idempotent of End
RepMorphism newton_idempotent(const EndData& end, const SemisimpleQuot& ss,
                              const std::vector<Rational>& ebar) {
    RepMorphism e = end.combo(ss.lift(ebar));
    for (int it = 0; it < 24; ++it) {
        RepMorphism e2 = compose(e, e);
        if (morphism_equal(e2, e)) return e;
        RepMorphism e3 = compose(e2, e);
        for (std::size_t v = 0; v < e.mats.size(); ++v)
            e.mats[v] = e2.mats[v].scaled(Rational(3)) + e3.mats[v].scaled(Rational(-2));
    }
    throw VerificationFailure("idempotent lift did not converge");
}

// split M along a complete set of orthogonal idempotents
std::vector<SubQuot> split_by_idempotents(const Rep& m, const std::vector<RepMorphism>& es) {
    std::vector<SubQuot> images;
    for (const RepMorphism& e : es) {
        SubQuot im = image_rep(e);
        if (im.rep.is_zero()) throw VerificationFailure("idempotent with zero image");
        images.push_back(im);
    }
    // the stacked inclusions must give an isomorphism (+) im(e_i) -> M
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        QMat stack(0, m.dims[v]);
        for (const SubQuot& im : images) stack = QMat::vstack(stack, im.map.mats[v]);
        if (stack.rows() != m.dims[v] || rank(stack) != m.dims[v])
            throw VerificationFailure("idempotent images do not reassemble the module");
    }
    return images;
}

// complete orthogonal idempotent family from an element whose minimal
// polynomial has >= 2 coprime primary factors
std::vector<RepMorphism> crt_idempotents(const RepMorphism& f, const QPoly& mu,
                                         const std::vector<std::pair<QPoly, int>>& facs) {
    std::vector<RepMorphism> es;
    for (const auto& [fac, mult] : facs) {
        QPoly fpow = {Rational(1)};
        for (int k = 0; k < mult; ++k) fpow = poly_mul(fpow, fac);
        QPoly q = poly_divmod(mu, fpow, nullptr);
        QPoly s, t;
        QPoly g = poly_xgcd(q, fpow, &s, &t);
        if (poly_degree(g) != 0) throw VerificationFailure("primary factors not coprime");
        QPoly epoly;
        poly_divmod(poly_mul(s, q), mu, &epoly);  // s*q mod mu
        // evaluate vertexwise (an endomorphism has square vertex blocks)
        RepMorphism e = f;
        for (std::size_t v = 0; v < f.mats.size(); ++v)
            e.mats[v] = poly_eval_matrix(epoly, f.mats[v]);
        es.push_back(std::move(e));
    }
    // exactness checks: idempotent, orthogonal, complete
    RepMorphism sum = zero_morphism(es[0].source, es[0].target);
    for (const RepMorphism& e : es) {
        if (!morphism_equal(compose(e, e), e)) throw VerificationFailure("CRT element not idempotent");
        for (std::size_t v = 0; v < sum.mats.size(); ++v) sum.mats[v] = sum.mats[v] + e.mats[v];
    }
    if (!morphism_equal(sum, identity_morphism(es[0].source)))
        throw VerificationFailure("CRT idempotents do not sum to the identity");
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = 0; j < es.size(); ++j)
            if (i != j && !compose(es[i], es[j]).is_zero())
                throw VerificationFailure("CRT idempotents not orthogonal");
    return es;
}

// idempotent generating the left ideal E'y for a nonzero non-invertible ybar
std::vector<Rational> left_ideal_idempotent(const SemisimpleQuot& ss,
                                            const std::vector<Rational>& ybar) {
    // rows spanning L = E' * ybar
    QMat lrows(ss.s, ss.s);
    for (int j = 0; j < ss.s; ++j) {
        std::vector<Rational> ej(ss.s, Rational(0));
        ej[j] = Rational(1);
        std::vector<Rational> p = ss.mult(ej, ybar);
        for (int k = 0; k < ss.s; ++k)
            if (!is_zero(p[k])) lrows.set(j, k, p[k]);
    }
    QMat L = row_space_basis(lrows);
    int r = L.rows();
    if (r == 0) throw VerificationFailure("zero left ideal from nonzero element");
    // find e = sum c_a l_a with l_b e = l_b for all b (right identity of L)
    std::vector<std::vector<Rational>> lb(r), prod;
    for (int b = 0; b < r; ++b) {
        lb[b].assign(ss.s, Rational(0));
        for (const auto& [k, c] : L.row(b)) lb[b][k] = c;
    }
    QMat A(r * ss.s, r), rhs(r * ss.s, 1);
    for (int b = 0; b < r; ++b) {
        for (int a = 0; a < r; ++a) {
            std::vector<Rational> p = ss.mult(lb[b], lb[a]);
            for (int k = 0; k < ss.s; ++k)
                if (!is_zero(p[k])) A.set(b * ss.s + k, a, p[k]);
        }
        for (int k = 0; k < ss.s; ++k)
            if (!is_zero(lb[b][k])) rhs.set(b * ss.s + k, 0, lb[b][k]);
    }
    auto sol = solve_matrix(A, rhs);
    if (!sol) throw VerificationFailure("left ideal has no right identity in a semisimple ring");
    std::vector<Rational> e(ss.s, Rational(0));
    for (int a = 0; a < r; ++a)
        for (int k = 0; k < ss.s; ++k) e[k] += sol->get(a, 0) * lb[a][k];
    std::vector<Rational> ee = ss.mult(e, e);
    for (int k = 0; k < ss.s; ++k) ee[k] -= e[k];
    if (!ss.vec_zero(ee)) throw VerificationFailure("left ideal generator is not idempotent");
    return e;
}

enum class SplitKind { Split, Local, NonSplitDivision };

struct SplitResult {
    SplitKind kind = SplitKind::Local;
    std::vector<SubQuot> parts;
};

SplitResult try_split(const Rep& m) {
    EndData end(m);
    if (end.d == 1) return {SplitKind::Local, {}};

    // fast path: an End element with a split minimal polynomial
    std::vector<std::vector<Rational>> candidates;
    for (int i = 0; i < end.d; ++i) {
        std::vector<Rational> c(end.d, Rational(0));
        c[i] = Rational(1);
        candidates.push_back(c);
    }
    for (int i = 0; i < end.d && static_cast<int>(candidates.size()) < 2 * end.d + 8; ++i)
        for (int j = i + 1; j < end.d; ++j) {
            std::vector<Rational> c(end.d, Rational(0));
            c[i] = Rational(1);
            c[j] = Rational(1);
            candidates.push_back(c);
        }
    SplitRng rng(fnv1a(m.dims, 0x51ed270b0ull));
    for (int extra = 0; extra < 16; ++extra) {
        std::vector<Rational> c(end.d);
        for (int k = 0; k < end.d; ++k) c[k] = Rational(rng.uniform(-3, 3));
        candidates.push_back(c);
    }
    for (const auto& c : candidates) {
        RepMorphism f = end.combo(c);
        QPoly mu = min_poly(block_diag(f.mats));
        if (poly_degree(mu) <= 1) continue;
        auto facs = factor_rational(mu);
        if (facs.size() >= 2)
            return {SplitKind::Split, split_by_idempotents(m, crt_idempotents(f, mu, facs))};
    }

    // decisive path: work in the semisimple quotient
    SemisimpleQuot ss(end);
    if (ss.s == 1) return {SplitKind::Local, {}};

    std::vector<std::vector<Rational>> qcands;
    for (int i = 0; i < ss.s; ++i) {
        std::vector<Rational> u(ss.s, Rational(0));
        u[i] = Rational(1);
        qcands.push_back(u);
    }
    SplitRng rng2(fnv1a(m.dims, 0xabcf937d1ull));
    for (int extra = 0; extra < 2 * ss.s * ss.s + 32; ++extra) {
        std::vector<Rational> u(ss.s);
        for (int k = 0; k < ss.s; ++k) u[k] = Rational(rng2.uniform(-4, 4));
        qcands.push_back(u);
    }
    for (const auto& u : qcands) {
        if (ss.vec_zero(u)) continue;
        QPoly mu = min_poly(ss.left_mult(u));
        auto facs = factor_rational(mu);
        if (facs.size() >= 2) {
            // CRT idempotent for the first primary component, lifted to End
            QPoly fpow = {Rational(1)};
            for (int k = 0; k < facs[0].second; ++k) fpow = poly_mul(fpow, facs[0].first);
            QPoly q = poly_divmod(mu, fpow, nullptr);
            QPoly s, t;
            if (poly_degree(poly_xgcd(q, fpow, &s, &t)) != 0)
                throw VerificationFailure("primary factors not coprime");
            QPoly epoly;
            poly_divmod(poly_mul(s, q), mu, &epoly);
            std::vector<Rational> ebar = ss.poly_at(epoly, u);
            if (ss.vec_zero(ebar)) throw VerificationFailure("CRT idempotent vanished");
            RepMorphism e = newton_idempotent(end, ss, ebar);
            RepMorphism one = identity_morphism(m);
            RepMorphism comp = one;
            for (std::size_t v = 0; v < comp.mats.size(); ++v)
                comp.mats[v] = one.mats[v] + e.mats[v].scaled(Rational(-1));
            if (e.is_zero() || comp.is_zero())
                throw VerificationFailure("lifted idempotent is trivial");
            return {SplitKind::Split, split_by_idempotents(m, {e, comp})};
        }
        const auto& [fac, mult] = facs[0];
        if (mult >= 2) {
            // f(u) is a nonzero nilpotent; its left ideal yields an idempotent
            std::vector<Rational> ybar = ss.poly_at(fac, u);
            if (ss.vec_zero(ybar)) throw VerificationFailure("nilpotent witness vanished");
            std::vector<Rational> ebar = left_ideal_idempotent(ss, ybar);
            RepMorphism e = newton_idempotent(end, ss, ebar);
            RepMorphism one = identity_morphism(m);
            RepMorphism comp = one;
            for (std::size_t v = 0; v < comp.mats.size(); ++v)
                comp.mats[v] = one.mats[v] + e.mats[v].scaled(Rational(-1));
            if (e.is_zero() || comp.is_zero())
                throw VerificationFailure("lifted idempotent is trivial");
            return {SplitKind::Split, split_by_idempotents(m, {e, comp})};
        }
        if (poly_degree(fac) == ss.s) {
            // E' = Q[u] with irreducible minimal polynomial: a field bigger than Q
            return {SplitKind::NonSplitDivision, {}};
        }
    }
    throw NonSplitError("non-split endomorphism ring");
}

}  // namespace

bool is_indecomposable(const Rep& m) {
    if (m.is_zero()) throw InvalidInput("indecomposability of the zero representation");
    SplitResult r = try_split(m);
    if (r.kind == SplitKind::Split) return false;
    if (r.kind == SplitKind::Local) return true;
    throw NonSplitError("non-split endomorphism ring");
}

Decomposition decompose_with_maps(const Rep& m) {
    Decomposition out;
    if (m.is_zero()) return out;
    std::vector<std::pair<Rep, RepMorphism>> stack;
    stack.emplace_back(m, identity_morphism(m));
    while (!stack.empty()) {
        auto [cur, inc] = std::move(stack.back());
        stack.pop_back();
        SplitResult r = try_split(cur);
        if (r.kind == SplitKind::Local) {
            out.parts.push_back(std::move(cur));
            out.inclusions.push_back(std::move(inc));
        } else if (r.kind == SplitKind::Split) {
            for (SubQuot& p : r.parts)
                stack.emplace_back(std::move(p.rep), compose(p.map, inc));
        } else {
            throw NonSplitError("non-split endomorphism ring");
        }
    }
    std::vector<std::size_t> order(out.parts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rep_less(out.parts[a], out.parts[b]); });
    Decomposition sorted;
    for (std::size_t i : order) {
        sorted.parts.push_back(std::move(out.parts[i]));
        sorted.inclusions.push_back(std::move(out.inclusions[i]));
    }
    return sorted;
}

std::vector<Rep> decompose(const Rep& m) { return decompose_with_maps(m).parts; }

std::optional<RepMorphism> find_isomorphism(const Rep& m, const Rep& n) {
    if (!same_algebra(m, n)) throw InvalidInput("representations over different algebras");
    if (m.dims != n.dims) return std::nullopt;
    if (m.is_zero()) return zero_morphism(m, n);  // the unique map is invertible here
    std::vector<RepMorphism> h = hom_basis(m, n);
    if (h.empty()) return std::nullopt;
    if (h.size() != hom_basis(n, m).size()) return std::nullopt;
    for (const RepMorphism& f : h)
        if (is_invertible(f)) return f;
    SplitRng rng(fnv1a(m.dims, fnv1a(n.dims, 0x15d5f0bull)));
    int attempts = 40 + 8 * static_cast<int>(h.size());
    for (int a = 0; a < attempts; ++a) {
        std::vector<Rational> c(h.size());
        for (auto& x : c) x = Rational(rng.uniform(-3, 3));
        RepMorphism cand = morphism_combo(h, c);
        if (is_invertible(cand)) return cand;
    }
    return std::nullopt;
}

bool is_isomorphic(const Rep& m, const Rep& n) { return find_isomorphism(m, n).has_value(); }

}  // namespace tiltcover
