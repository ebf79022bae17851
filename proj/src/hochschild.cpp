#include "tiltcover/hochschild.hpp"

#include "tiltcover/errors.hpp"
#include "tiltcover/matrix.hpp"

#include <map>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

namespace tiltcover {

namespace {

Algebra::Lin unit(const Algebra& a, int basis_idx) {
    (void)a;
    return {{basis_idx, Rational(1)}};
}

struct HHDims {
    int hh0 = 0;
    int hh1 = 0;
};

// relative complex: C^0 = sum_v e_v A e_v, C^1 indexed by (radical path,
// parallel basis element), C^2 by (composable radical pair, parallel basis)
HHDims reduced_complex(const Algebra& a) {
    const int n = a.dim();
    std::vector<int> rad;
    for (int i = 0; i < n; ++i)
        if (!a.basis_path(i).arrows.empty()) rad.push_back(i);
    auto src = [&](int i) { return a.basis_path(i).src; };
    auto tgt = [&](int i) { return a.basis_path(i).tgt; };

    std::vector<int> c0;
    for (int v = 0; v < a.vertex_count(); ++v)
        for (int b : a.pair_basis(v, v)) c0.push_back(b);
    std::map<std::pair<int, int>, int> c1col;
    for (int p : rad)
        for (int b : a.pair_basis(src(p), tgt(p)))
            c1col.emplace(std::make_pair(p, b), static_cast<int>(c1col.size()));

    QMat d0(static_cast<int>(c0.size()), std::max<int>(static_cast<int>(c1col.size()), 1));
    for (std::size_t r = 0; r < c0.size(); ++r)
        for (int p : rad) {
            for (const auto& [m, c] : a.mul(unit(a, p), unit(a, c0[r])))
                d0.add_to(static_cast<int>(r), c1col.at({p, m}), c);
            for (const auto& [m, c] : a.mul(unit(a, c0[r]), unit(a, p)))
                d0.add_to(static_cast<int>(r), c1col.at({p, m}), -c);
        }
    const int rank_d0 = rank(d0);
    const int hh0 = static_cast<int>(c0.size()) - rank_d0;

    std::map<std::tuple<int, int, int>, int> c2col;
    std::vector<std::tuple<int, std::tuple<int, int, int>, Rational>> trip;
    for (int p : rad)
        for (int q : rad) {
            if (tgt(p) != src(q)) continue;
            for (int c : a.pair_basis(src(p), tgt(q)))
                c2col.emplace(std::make_tuple(p, q, c), static_cast<int>(c2col.size()));
            for (int b : a.pair_basis(src(q), tgt(q)))  // p f(q)
                for (const auto& [m, c] : a.mul(unit(a, p), unit(a, b)))
                    trip.emplace_back(c1col.at({q, b}), std::make_tuple(p, q, m), c);
            for (int b : a.pair_basis(src(p), tgt(p)))  // f(p) q
                for (const auto& [m, c] : a.mul(unit(a, b), unit(a, q)))
                    trip.emplace_back(c1col.at({p, b}), std::make_tuple(p, q, m), c);
            for (const auto& [r, c] : a.mul(unit(a, p), unit(a, q)))  // -f(pq)
                for (int b : a.pair_basis(src(r), tgt(r)))
                    trip.emplace_back(c1col.at({r, b}), std::make_tuple(p, q, b), -c);
        }
    QMat d1(static_cast<int>(c1col.size()), std::max<int>(static_cast<int>(c2col.size()), 1));
    for (const auto& [row, key, val] : trip) d1.add_to(row, c2col.at(key), val);
    const int hh1 = (static_cast<int>(c1col.size()) - rank(d1)) - rank_d0;
    return {hh0, hh1};
}

// full complex on the whole algebra: center and derivations modulo inner
HHDims bar_complex(const Algebra& a) {
    const int n = a.dim();
    QMat zm(n, n * n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            for (const auto& [m, c] : a.mul(unit(a, i), unit(a, k))) zm.add_to(k, i * n + m, c);
            for (const auto& [m, c] : a.mul(unit(a, k), unit(a, i))) zm.add_to(k, i * n + m, -c);
        }
    const int dim_z = n - rank(zm);

    // Leibniz rule on every basis pair; unknown rows are the entries of f
    QMat dm(n * n, n * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int blk = (i * n + j) * n;
            for (const auto& [m, c] : a.mul(unit(a, i), unit(a, j)))
                for (int k = 0; k < n; ++k) dm.add_to(m * n + k, blk + k, -c);
            for (int k = 0; k < n; ++k) {
                for (const auto& [m, c] : a.mul(unit(a, i), unit(a, k)))
                    dm.add_to(j * n + k, blk + m, c);
                for (const auto& [m, c] : a.mul(unit(a, k), unit(a, j)))
                    dm.add_to(i * n + k, blk + m, c);
            }
        }
    const int dim_der = n * n - rank(dm);
    return {dim_z, dim_der - (n - dim_z)};
}

HHDims hh_both(const Algebra& a) {
    HHDims rd = reduced_complex(a);
    if (a.dim() <= 8) {
        HHDims bd = bar_complex(a);
        if (bd.hh0 != rd.hh0 || bd.hh1 != rd.hh1)
            throw VerificationFailure(
                "reduced and bar Hochschild computations disagree");
    }
    return rd;
}

int weak_components(const Quiver& q) {
    std::vector<int> parent(q.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const Arrow& a : q.arrows) parent[find(a.src)] = find(a.tgt);
    int roots = 0;
    for (std::size_t v = 0; v < parent.size(); ++v)
        if (find(static_cast<int>(v)) == static_cast<int>(v)) ++roots;
    return roots;
}

// Structural recognition of squid presentations, degenerate ones included:
// two parallel arrows x -> y, disjoint chain arms off y, the path-space
// pattern cut out by the head relations (two independent head paths, one
// surviving composite into every arm vertex, free composition inside arms),
// and one point of the projective line per arm -- the kernel line of
// (l1, l2) -> l1*a1*b + l2*a2*b -- with all points pairwise distinct.
bool squid_shape(const Algebra& a) {
    const Quiver& q = a.quiver;
    const int nv = static_cast<int>(q.vertices.size());
    std::map<std::pair<int, int>, std::vector<int>> pairs;
    for (std::size_t i = 0; i < q.arrows.size(); ++i)
        pairs[{q.arrows[i].src, q.arrows[i].tgt}].push_back(static_cast<int>(i));
    int x = -1, y = -1;
    std::vector<int> heads;
    for (const auto& [st, as] : pairs) {
        if (as.size() == 2) {
            if (x >= 0) return false;
            x = st.first;
            y = st.second;
            heads = as;
        } else if (as.size() > 2) {
            return false;
        }
    }
    if (x < 0 || x == y) return false;

    std::vector<int> indeg(nv, 0), outdeg(nv, 0);
    for (const Arrow& ar : q.arrows) {
        ++outdeg[ar.src];
        ++indeg[ar.tgt];
    }
    if (indeg[x] != 0 || outdeg[x] != 2 || indeg[y] != 2) return false;

    auto out = q.out_arrows();
    std::vector<char> seen(nv, 0);
    seen[x] = seen[y] = 1;
    std::vector<std::vector<int>> arms;  // vertex chains
    for (int b : out[y]) {
        std::vector<int> chain;
        int v = q.arrows[b].tgt;
        while (true) {
            if (v == x || v == y || seen[v]) return false;
            if (indeg[v] != 1 || outdeg[v] > 1) return false;
            seen[v] = 1;
            chain.push_back(v);
            if (outdeg[v] == 0) break;
            v = q.arrows[out[v][0]].tgt;
        }
        arms.push_back(std::move(chain));
    }
    for (int v = 0; v < nv; ++v)
        if (!seen[v]) return false;

    if (a.pair_dim(x, y) != 2) return false;
    for (const std::vector<int>& chain : arms)
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (a.pair_dim(x, chain[i]) != 1 || a.pair_dim(y, chain[i]) != 1) return false;
            for (std::size_t j = i + 1; j < chain.size(); ++j)
                if (a.pair_dim(chain[i], chain[j]) != 1) return false;
        }

    std::vector<std::pair<Rational, Rational>> pts;
    for (int b : out[y]) {
        const int target = a.pair_basis(x, q.arrows[b].tgt)[0];
        auto coef = [&](int head_arrow) {
            Rational c(0);
            for (const auto& [bi, cf] :
                 a.mul(unit(a, a.arrow_basis_index(head_arrow)),
                       unit(a, a.arrow_basis_index(b))))
                if (bi == target) c = cf;
            return c;
        };
        Rational r1 = coef(heads[0]), r2 = coef(heads[1]);
        if (r1 == 0 && r2 == 0) return false;
        pts.emplace_back(r1, r2);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i].first * pts[j].second - pts[i].second * pts[j].first == 0) return false;
    return true;
}

}  // namespace

int hh_dim(const AlgebraPtr& alg, int n, int cap) {
    if (!alg) throw InvalidInput("null algebra");
    if (n != 0 && n != 1) throw InvalidInput("only HH^0 and HH^1 are computed");
    if (cap > 0 && alg->dim() > cap)
        throw CapExceeded("algebra dimension exceeds the Hochschild cap");
    HHDims d = hh_both(*alg);
    return n == 0 ? d.hh0 : d.hh1;
}

int squid_hh1(int t, const std::vector<int>& arm_lengths, const std::vector<Rational>& tau) {
    SquidResult sq = squid(t, arm_lengths, tau);
    const int closed = t == 2 ? 1 : 0;
    if (!sq.degenerate && sq.algebra.dim() <= kDefaultHHCap) {
        AlgebraPtr a = std::make_shared<const Algebra>(std::move(sq.algebra));
        if (hh_dim(a, 1) != closed)
            throw VerificationFailure("squid closed form disagrees with the computed HH^1");
    }
    return closed;
}

HHReport simple_connectedness_report(const AlgebraPtr& alg, const std::string& algebra_id,
                                     bool end_context, int cap) {
    if (!alg) throw InvalidInput("null algebra");
    const bool hereditary = alg->is_hereditary();
    if (!hereditary && !end_context && !squid_shape(*alg))
        throw InvalidInput(
            "the vanishing verdict is only certified for hereditary algebras, "
            "squids, and endomorphism algebras of lifted tilting modules");

    HHReport r;
    r.algebra_id = algebra_id;
    r.hh0 = hh_dim(alg, 0, cap);
    r.hh1 = hh_dim(alg, 1, cap);
    r.simply_connected = r.hh1 == 0;
    r.methods.push_back("reduced-complex");
    if (alg->dim() <= 8) r.methods.push_back("bar-oracle");

    const Quiver& q = alg->quiver;
    const bool connected = q.is_connected();
    if (connected && r.hh0 != 1)
        throw VerificationFailure("connected algebra with a larger-than-expected center");
    if (hereditary) {
        int betti = static_cast<int>(q.arrows.size()) - static_cast<int>(q.vertices.size()) +
                    weak_components(q);
        r.pi1_rank = betti;
        r.is_tree = connected && betti == 0;
        if ((r.hh1 == 0) != (betti == 0))
            throw VerificationFailure(
                "first cohomology and fundamental group rank disagree on vanishing");
    }
    return r;
}

}  // namespace tiltcover
