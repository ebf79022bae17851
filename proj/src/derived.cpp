#include "tiltcover/derived.hpp"
#include "tiltcover/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace tiltcover {

namespace {

void require_hereditary(const AlgebraPtr& alg) {
    if (!alg) throw InvalidInput("null algebra");
    if (!alg->is_hereditary())
        throw InvalidInput("derived objects require a hereditary algebra");
}

bool rep_data_equal(const Rep& a, const Rep& b) {
    if (a.alg != b.alg || a.dims != b.dims) return false;
    for (std::size_t k = 0; k < a.maps.size(); ++k)
        if (!(a.maps[k] == b.maps[k])) return false;
    return true;
}

bool summand_less(const DSummand& a, const DSummand& b) {
    if (a.shift != b.shift) return a.shift < b.shift;
    return rep_less(a.rep, b.rep);
}

}  // namespace

int DObject::summand_count() const {
    int n = 0;
    for (const DSummand& s : summands) n += s.mult;
    return n;
}

int DObject::min_shift() const {
    if (is_zero()) throw InvalidInput("shift range of the zero object");
    int m = summands[0].shift;
    for (const DSummand& s : summands) m = std::min(m, s.shift);
    return m;
}

int DObject::max_shift() const {
    if (is_zero()) throw InvalidInput("shift range of the zero object");
    int m = summands[0].shift;
    for (const DSummand& s : summands) m = std::max(m, s.shift);
    return m;
}

DObject dobject(AlgebraPtr alg, const std::vector<DSummand>& parts) {
    require_hereditary(alg);
    DObject x;
    x.alg = alg;
    for (const DSummand& p : parts) {
        if (p.mult < 1) throw InvalidInput("summand multiplicity must be positive");
        if (!p.rep.alg || p.rep.alg != alg)
            throw InvalidInput("summand over a different algebra");
        if (!is_indecomposable(p.rep))  // also rejects the zero rep
            throw InvalidInput("derived summands must be indecomposable");
        bool merged = false;
        for (DSummand& s : x.summands)
            if (s.shift == p.shift && is_isomorphic(s.rep, p.rep)) {
                s.mult += p.mult;
                merged = true;
                break;
            }
        if (!merged) x.summands.push_back(p);
    }
    std::sort(x.summands.begin(), x.summands.end(), summand_less);
    return x;
}

DObject module_as_dobject(const Rep& m, int shift) {
    require_hereditary(m.alg);
    std::vector<DSummand> parts;
    for (Rep& p : decompose(m)) parts.push_back({std::move(p), shift, 1});
    DObject x;
    x.alg = m.alg;
    // decompose certified the parts; merge isomorphic ones directly
    for (DSummand& p : parts) {
        bool merged = false;
        for (DSummand& s : x.summands)
            if (is_isomorphic(s.rep, p.rep)) {
                s.mult += 1;
                merged = true;
                break;
            }
        if (!merged) x.summands.push_back(std::move(p));
    }
    std::sort(x.summands.begin(), x.summands.end(), summand_less);
    return x;
}

DObject shift_of(const DObject& x, int k) {
    DObject y = x;
    for (DSummand& s : y.summands) s.shift += k;
    return y;
}

bool dobj_equal(const DObject& a, const DObject& b) {
    if (a.alg != b.alg) throw InvalidInput("objects over different algebras");
    if (a.summands.size() != b.summands.size()) return false;
    // entries at equal shift are pairwise non-isomorphic, so match greedily
    std::vector<char> used(b.summands.size(), 0);
    for (const DSummand& s : a.summands) {
        bool found = false;
        for (std::size_t j = 0; j < b.summands.size(); ++j) {
            if (used[j] || b.summands[j].shift != s.shift || b.summands[j].mult != s.mult)
                continue;
            if (is_isomorphic(s.rep, b.summands[j].rep)) {
                used[j] = 1;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

int ghom_dim(const DObject& x, const DObject& y, int d) {
    if (x.alg != y.alg) throw InvalidInput("objects over different algebras");
    require_hereditary(x.alg);
    int total = 0;
    for (const DSummand& s : x.summands)
        for (const DSummand& t : y.summands) {
            int deg = (t.shift - s.shift) + d;
            if (deg == 0)
                total += s.mult * t.mult * hom_dim(s.rep, t.rep);
            else if (deg == 1)
                total += s.mult * t.mult * ext1_dim(s.rep, t.rep);
        }
    return total;
}

bool in_class_T(const DObject& x) {
    if (x.is_zero()) return false;
    require_hereditary(x.alg);
    for (const DSummand& s : x.summands)
        if (s.mult != 1) return false;
    if (static_cast<int>(x.summands.size()) != x.alg->vertex_count()) return false;
    // beyond spread + 1 every pair rule degree exceeds 1, so the finite
    // window below covers all i >= 1
    int spread = x.max_shift() - x.min_shift();
    for (int i = 1; i <= spread + 1; ++i)
        if (ghom_dim(x, x, i) != 0) return false;
    return true;
}

int r_value(const DObject& x) {
    if (x.is_zero()) throw InvalidInput("r-invariant of the zero object");
    int lo = x.min_shift(), r = 0;
    for (const DSummand& s : x.summands)
        if (s.shift > lo) r += s.mult;
    return r;
}

// ---------------------------------------------------------------------------
// morphisms

namespace {

struct SlotKey {
    int src, src_copy, tgt, tgt_copy;
    bool operator<(const SlotKey& o) const {
        return std::tie(src, src_copy, tgt, tgt_copy) <
               std::tie(o.src, o.src_copy, o.tgt, o.tgt_copy);
    }
};

}  // namespace

void DMorphism::validate() const {
    if (source.alg != target.alg) throw InvalidInput("morphism across algebras");
    require_hereditary(source.alg);
    std::set<SlotKey> seen0, seen1;
    auto check_block = [&](const DBlock& b, int degree) {
        if (b.src < 0 || b.src >= static_cast<int>(source.summands.size()) ||
            b.tgt < 0 || b.tgt >= static_cast<int>(target.summands.size()))
            throw InvalidInput("block summand index out of range");
        const DSummand& s = source.summands[b.src];
        const DSummand& t = target.summands[b.tgt];
        if (b.src_copy < 0 || b.src_copy >= s.mult || b.tgt_copy < 0 || b.tgt_copy >= t.mult)
            throw InvalidInput("block copy index out of range");
        if (t.shift != s.shift + degree) throw InvalidInput("block degree does not match shifts");
        if (!rep_data_equal(b.map.target, t.rep))
            throw InvalidInput("block target is not the summand representation");
        if (degree == 0) {
            if (!rep_data_equal(b.map.source, s.rep))
                throw InvalidInput("block source is not the summand representation");
        } else {
            if (!rep_data_equal(b.map.source, syzygy(s.rep).omega.rep))
                throw InvalidInput("degree-1 block is not a cocycle on the canonical syzygy");
        }
        b.map.validate();
        auto& seen = degree == 0 ? seen0 : seen1;
        if (!seen.insert({b.src, b.src_copy, b.tgt, b.tgt_copy}).second)
            throw InvalidInput("duplicate morphism block");
    };
    for (const DBlock& b : deg0) check_block(b, 0);
    for (const DBlock& b : deg1) check_block(b, 1);
}

DMorphism zero_dmorphism(const DObject& x, const DObject& y) {
    DMorphism f;
    f.source = x;
    f.target = y;
    return f;
}

DMorphism dmorphism_from_map(const RepMorphism& g, int shift) {
    g.validate();
    require_hereditary(g.source.alg);
    Decomposition dm = decompose_with_maps(g.source);
    Decomposition dn = decompose_with_maps(g.target);

    DMorphism f;
    f.source = module_as_dobject(g.source, shift);
    f.target = module_as_dobject(g.target, shift);

    // assign each decomposition part to a (summand, copy) slot and record the
    // isomorphism part -> stored summand representation
    auto assign = [](const Decomposition& d, const DObject& x) {
        std::vector<std::pair<int, int>> slot(d.parts.size());
        std::vector<RepMorphism> to_rep(d.parts.size());
        std::vector<int> taken(x.summands.size(), 0);
        for (std::size_t p = 0; p < d.parts.size(); ++p) {
            bool placed = false;
            for (std::size_t k = 0; k < x.summands.size() && !placed; ++k) {
                if (taken[k] >= x.summands[k].mult) continue;
                if (auto iso = find_isomorphism(d.parts[p], x.summands[k].rep)) {
                    slot[p] = {static_cast<int>(k), taken[k]++};
                    to_rep[p] = *iso;
                    placed = true;
                }
            }
            if (!placed) throw VerificationFailure("decomposition does not match normal form");
        }
        return std::make_pair(slot, to_rep);
    };
    auto [mslot, miso] = assign(dm, f.source);
    auto [nslot, niso] = assign(dn, f.target);

    // projections of the target onto its parts, from the reassembly inverse
    std::size_t nv = g.source.dims.size();
    std::vector<RepMorphism> proj(dn.parts.size());
    for (std::size_t q = 0; q < dn.parts.size(); ++q) {
        proj[q].source = g.target;
        proj[q].target = dn.parts[q];
        proj[q].mats.resize(nv);
    }
    for (std::size_t v = 0; v < nv; ++v) {
        QMat u(0, g.target.dims[v]);
        for (const RepMorphism& inc : dn.inclusions) u = QMat::vstack(u, inc.mats[v]);
        auto uinv = inverse(u);
        if (!uinv) throw VerificationFailure("decomposition does not reassemble the module");
        int off = 0;
        for (std::size_t q = 0; q < dn.parts.size(); ++q) {
            int dq = dn.parts[q].dims[v];
            proj[q].mats[v] = uinv->submatrix_cols(off, off + dq);
            off += dq;
        }
    }

    for (std::size_t p = 0; p < dm.parts.size(); ++p)
        for (std::size_t q = 0; q < dn.parts.size(); ++q) {
            RepMorphism block = compose(dm.inclusions[p], compose(g, proj[q]));
            // conjugate into the stored summand representations
            block = compose(invert(miso[p]), compose(block, niso[q]));
            if (block.is_zero()) continue;
            f.deg0.push_back({mslot[p].first, mslot[p].second, nslot[q].first,
                              nslot[q].second, std::move(block)});
        }
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// cone

namespace {

// one summand copy with its two-term resolution Omega -> P0 ->> M
struct CopyData {
    int shift = 0;
    const SyzygyData* sy = nullptr;
};

// a direct sum layer of a complex, remembering where each part came from
struct Layer {
    Rep rep;                                  // possibly zero
    std::vector<RepMorphism> inc, prj;        // per part
    std::map<std::pair<int, int>, int> pos;   // (copy, level 0=P0 / 1=Omega) -> part
};

Layer build_layer(const AlgebraPtr& alg, const std::vector<CopyData>& copies, int degree) {
    Layer l;
    std::vector<Rep> parts;
    for (std::size_t c = 0; c < copies.size(); ++c) {
        if (-copies[c].shift == degree) {
            l.pos[{static_cast<int>(c), 0}] = static_cast<int>(parts.size());
            parts.push_back(copies[c].sy->cover.proj);
        }
    }
    for (std::size_t c = 0; c < copies.size(); ++c) {
        if (-copies[c].shift - 1 == degree && !copies[c].sy->omega.rep.is_zero()) {
            l.pos[{static_cast<int>(c), 1}] = static_cast<int>(parts.size());
            parts.push_back(copies[c].sy->omega.rep);
        }
    }
    if (parts.empty()) {
        l.rep = zero_rep(alg);
        return l;
    }
    DirectSum ds = direct_sum(parts);
    l.rep = std::move(ds.rep);
    l.inc = std::move(ds.inclusions);
    l.prj = std::move(ds.projections);
    return l;
}

// sum of block contributions prj[i] . g . inc[j], scaled
RepMorphism assemble(const Layer& a, const Layer& b,
                     const std::vector<std::tuple<int, int, RepMorphism, Rational>>& blocks) {
    std::vector<QMat> mats;
    for (std::size_t v = 0; v < a.rep.dims.size(); ++v)
        mats.emplace_back(a.rep.dims[v], b.rep.dims[v]);
    for (const auto& [i, j, g, scale] : blocks) {
        RepMorphism contrib = compose(a.prj[i], compose(g, b.inc[j]));
        for (std::size_t v = 0; v < mats.size(); ++v)
            mats[v] = mats[v] + contrib.mats[v].scaled(scale);
    }
    return morphism_from_mats(a.rep, b.rep, mats);
}

bool morphism_data_equal(const RepMorphism& a, const RepMorphism& b) {
    for (std::size_t v = 0; v < a.mats.size(); ++v)
        if (!(a.mats[v] == b.mats[v])) return false;
    return true;
}

// cohomology ker(out) / im(in) at a term with incoming and outgoing maps
Rep cohomology_of(const RepMorphism& in, const RepMorphism& out) {
    SubQuot z = kernel_rep(out);
    SubQuot b = image_rep(in);
    std::vector<QMat> gens;
    for (std::size_t v = 0; v < z.rep.dims.size(); ++v) {
        auto bz = coords_in_rows(z.map.mats[v], b.map.mats[v]);
        if (!bz) throw VerificationFailure("boundaries escape the cycles");
        gens.push_back(*bz);
    }
    return quotient_rep(z.rep, gens).rep;
}

}  // namespace

DObject cone(const DMorphism& f) {
    f.validate();
    const AlgebraPtr& alg = f.source.alg;
    if (f.source.is_zero() && f.target.is_zero()) return DObject{alg, {}};

    // expand summands into copies and resolve each distinct summand once
    auto expand = [](const DObject& x, std::vector<SyzygyData>& store) {
        std::vector<CopyData> copies;
        std::vector<std::vector<int>> flat(x.summands.size());
        store.reserve(x.summands.size());
        for (std::size_t k = 0; k < x.summands.size(); ++k) {
            store.push_back(syzygy(x.summands[k].rep));
            for (int c = 0; c < x.summands[k].mult; ++c) {
                flat[k].push_back(static_cast<int>(copies.size()));
                copies.push_back({x.summands[k].shift, &store[k]});
            }
        }
        return std::make_pair(copies, flat);
    };
    std::vector<SyzygyData> src_store, tgt_store;
    auto [src_copies, src_flat] = expand(f.source, src_store);
    auto [tgt_copies, tgt_flat] = expand(f.target, tgt_store);

    int lo = 0, hi = 0;
    bool first = true;
    auto widen = [&](int n0, int n1) {
        lo = first ? n0 : std::min(lo, n0);
        hi = first ? n1 : std::max(hi, n1);
        first = false;
    };
    for (const CopyData& c : src_copies) widen(-c.shift - 1, -c.shift);
    for (const CopyData& c : tgt_copies) widen(-c.shift - 1, -c.shift);
    if (first) widen(0, 0);

    int nlayers = hi - lo + 1;
    std::vector<Layer> xs, ys;
    for (int n = lo; n <= hi; ++n) {
        xs.push_back(build_layer(alg, src_copies, n));
        ys.push_back(build_layer(alg, tgt_copies, n));
    }

    // differentials of the two resolved complexes
    auto diff_of = [&](const std::vector<Layer>& ls, const std::vector<CopyData>& copies) {
        std::vector<RepMorphism> d;
        for (int k = 0; k + 1 < nlayers; ++k) {
            std::vector<std::tuple<int, int, RepMorphism, Rational>> blocks;
            for (const auto& [key, i] : ls[k].pos)
                if (key.second == 1) {
                    auto it = ls[k + 1].pos.find({key.first, 0});
                    if (it == ls[k + 1].pos.end())
                        throw VerificationFailure("resolution terms misaligned");
                    blocks.emplace_back(i, it->second, copies[key.first].sy->omega.map,
                                        Rational(1));
                }
            d.push_back(assemble(ls[k], ls[k + 1], blocks));
        }
        return d;
    };
    std::vector<RepMorphism> dx = diff_of(xs, src_copies), dy = diff_of(ys, tgt_copies);

    // chain map components
    std::vector<std::vector<std::tuple<int, int, RepMorphism, Rational>>> phi_blocks(nlayers);
    for (const DBlock& b : f.deg0) {
        const CopyData& sc = src_copies[src_flat[b.src][b.src_copy]];
        const CopyData& tc = tgt_copies[tgt_flat[b.tgt][b.tgt_copy]];
        int n0 = -sc.shift;
        ResLift rl = lift_to_resolutions(b.map, *sc.sy, *tc.sy);
        phi_blocks[n0 - lo].emplace_back(xs[n0 - lo].pos.at({src_flat[b.src][b.src_copy], 0}),
                                         ys[n0 - lo].pos.at({tgt_flat[b.tgt][b.tgt_copy], 0}),
                                         rl.on_cover, Rational(1));
        // induced map on syzygies, when both layer parts exist
        if (!sc.sy->omega.rep.is_zero() && !tc.sy->omega.rep.is_zero())
            phi_blocks[n0 - 1 - lo].emplace_back(
                xs[n0 - 1 - lo].pos.at({src_flat[b.src][b.src_copy], 1}),
                ys[n0 - 1 - lo].pos.at({tgt_flat[b.tgt][b.tgt_copy], 1}), rl.on_syzygy,
                Rational(1));
    }
    for (const DBlock& b : f.deg1) {
        const CopyData& sc = src_copies[src_flat[b.src][b.src_copy]];
        const CopyData& tc = tgt_copies[tgt_flat[b.tgt][b.tgt_copy]];
        if (sc.sy->omega.rep.is_zero()) continue;  // no extensions out of a projective
        int n = -sc.shift - 1;  // equals -tc.shift
        RepMorphism h = lift_through(b.map, tc.sy->cover.onto);
        phi_blocks[n - lo].emplace_back(xs[n - lo].pos.at({src_flat[b.src][b.src_copy], 1}),
                                        ys[n - lo].pos.at({tgt_flat[b.tgt][b.tgt_copy], 0}), h,
                                        Rational(1));
    }
    std::vector<RepMorphism> phi;
    for (int k = 0; k < nlayers; ++k) phi.push_back(assemble(xs[k], ys[k], phi_blocks[k]));

    // chain identity: phi . d_Y = d_X . phi
    for (int k = 0; k + 1 < nlayers; ++k)
        if (!morphism_data_equal(compose(dx[k], phi[k + 1]), compose(phi[k], dy[k])))
            throw VerificationFailure("lifted blocks do not form a chain map");

    // cone complex: C^n = X^{n+1} (+) Y^n, d = [[-d_X, phi],[0, d_Y]]
    int clo = lo - 1;
    std::vector<DirectSum> cs;
    for (int n = clo; n <= hi; ++n) {
        const Rep& xpart = (n + 1 <= hi) ? xs[n + 1 - lo].rep : zero_rep(alg);
        const Rep& ypart = (n >= lo) ? ys[n - lo].rep : zero_rep(alg);
        cs.push_back(direct_sum({xpart, ypart}));
    }
    std::vector<RepMorphism> dc;
    for (int n = clo; n < hi; ++n) {
        const DirectSum& a = cs[n - clo];
        const DirectSum& b2 = cs[n + 1 - clo];
        std::vector<QMat> mats;
        for (std::size_t v = 0; v < a.rep.dims.size(); ++v)
            mats.emplace_back(a.rep.dims[v], b2.rep.dims[v]);
        auto put = [&](const RepMorphism& pr, const RepMorphism& g, const RepMorphism& in,
                       const Rational& s) {
            RepMorphism contrib = compose(pr, compose(g, in));
            for (std::size_t v = 0; v < mats.size(); ++v)
                mats[v] = mats[v] + contrib.mats[v].scaled(s);
        };
        if (n + 2 <= hi) put(a.projections[0], dx[n + 1 - lo], b2.inclusions[0], Rational(-1));
        if (n + 1 >= lo) put(a.projections[0], phi[n + 1 - lo], b2.inclusions[1], Rational(1));
        if (n >= lo) put(a.projections[1], dy[n - lo], b2.inclusions[1], Rational(1));
        dc.push_back(morphism_from_mats(a.rep, b2.rep, mats));
    }
    for (std::size_t k = 0; k + 1 < dc.size(); ++k)
        if (!compose(dc[k], dc[k + 1]).is_zero())
            throw VerificationFailure("cone differential does not square to zero");

    // cohomology, decomposed and reassembled as sum H^n [-n]
    std::vector<DSummand> parts;
    for (int n = clo; n <= hi; ++n) {
        const RepMorphism din =
            (n > clo) ? dc[n - 1 - clo] : zero_morphism(zero_rep(alg), cs[n - clo].rep);
        const RepMorphism dout =
            (n < hi) ? dc[n - clo] : zero_morphism(cs[n - clo].rep, zero_rep(alg));
        Rep h = cohomology_of(din, dout);
        if (h.is_zero()) continue;
        for (Rep& p : decompose(h)) parts.push_back({std::move(p), -n, 1});
    }
    return dobject(alg, parts);
}

}  // namespace tiltcover
