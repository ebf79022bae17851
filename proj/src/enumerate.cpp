#include "tiltcover/errors.hpp"
#include "tiltcover/rep.hpp"

#include <algorithm>
#include <set>

// Enumeration of indecomposables up to a total-dimension cap.
//
// Hereditary case (no relations, hence acyclic quiver): dimension vectors are
// classified with the symmetrized Euler form.  Reflecting d at vertices with
// positive pairing strictly decreases its total and ends in one of three
// states: a unit vector (d is a real root: exactly one indecomposable),
// a vector with all pairings <= 0 and connected support (an imaginary root:
// a whole family, reported by dimension vector), or a vector with a negative
// entry (no indecomposable at all).  Real-root witnesses are found by seeded
// random matrices and certified indecomposable; roots the generic search
// misses are rebuilt as extensions of smaller indecomposables.  When the form
// is positive definite the finite root system is regenerated by reflection
// closure and compared against the output; any mismatch is an error.
//
// Bound algebras: best-effort closure of {simples, indecomposable
// projectives} under syzygies and extensions, every member certified
// indecomposable, deduplicated up to isomorphism.  No completeness claim.

namespace tiltcover {

Rational tits_form(const Quiver& q, const std::vector<int>& d) {
    if (d.size() != q.vertices.size()) throw InvalidInput("dimension vector size mismatch");
    Rational out(0);
    for (int dv : d) out += Rational(dv) * Rational(dv);
    for (const Arrow& a : q.arrows) out -= Rational(d[a.src]) * Rational(d[a.tgt]);
    return out;
}

namespace {

// symmetrized Cartan matrix C[i][j] = 2 delta_ij - #(edges i--j)
std::vector<std::vector<long>> cartan_matrix(const Quiver& q) {
    int n = static_cast<int>(q.vertices.size());
    std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    for (const Arrow& a : q.arrows) {
        if (a.src == a.tgt) throw InvalidInput("loops have no reflection theory here");
        c[a.src][a.tgt] -= 1;
        c[a.tgt][a.src] -= 1;
    }
    return c;
}

long pairing(const std::vector<std::vector<long>>& c, const std::vector<int>& d, int i) {
    long s = 0;
    for (std::size_t j = 0; j < d.size(); ++j) s += c[i][j] * d[j];
    return s;
}

bool connected_support(const Quiver& q, const std::vector<int>& d) {
    int n = static_cast<int>(d.size());
    int start = -1, supp = 0;
    for (int v = 0; v < n; ++v)
        if (d[v] > 0) {
            if (start < 0) start = v;
            ++supp;
        }
    if (start < 0) return false;
    std::vector<std::vector<int>> adj(n);
    for (const Arrow& a : q.arrows) {
        adj[a.src].push_back(a.tgt);
        adj[a.tgt].push_back(a.src);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> queue = {start};
    seen[start] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int w : adj[v])
            if (d[w] > 0 && !seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push_back(w);
            }
    }
    return reached == supp;
}

enum class RootKind { NotRoot, Real, Imaginary };

RootKind classify_root(const Quiver& q, const std::vector<std::vector<long>>& c,
                       std::vector<int> d) {
    if (!connected_support(q, d)) return RootKind::NotRoot;
    int n = static_cast<int>(d.size());
    while (true) {
        int nonzero = 0, unit = -1;
        for (int v = 0; v < n; ++v)
            if (d[v] != 0) {
                ++nonzero;
                if (d[v] == 1) unit = v;
            }
        if (nonzero == 1 && unit >= 0) return RootKind::Real;
        int i = -1;
        for (int v = 0; v < n; ++v)
            if (pairing(c, d, v) > 0) {
                i = v;
                break;
            }
        if (i < 0) return connected_support(q, d) ? RootKind::Imaginary : RootKind::NotRoot;
        d[i] -= static_cast<int>(pairing(c, d, i));
        if (d[i] < 0) return RootKind::NotRoot;
    }
}

std::uint64_t seed_of(const std::vector<int>& d) {
    std::uint64_t h = 0x100001b3ull;
    for (int x : d) h = (h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(x))) * 0x9E3779B97F4A7C15ull;
    return h ? h : 1;
}

// seeded random representation with a given dimension vector (no relations)
Rep random_rep(const AlgebraPtr& alg, const std::vector<int>& d, SplitRng& rng, int range) {
    std::vector<QMat> maps;
    for (const Arrow& a : alg->quiver.arrows) {
        QMat m(d[a.src], d[a.tgt]);
        for (int i = 0; i < d[a.src]; ++i)
            for (int j = 0; j < d[a.tgt]; ++j) {
                long v = rng.uniform(-range, range);
                if (v != 0) m.set(i, j, Rational(v));
            }
        maps.push_back(std::move(m));
    }
    return rep_from_maps(alg, d, maps);
}

// witness for a real root: seeded sampling, then extension knitting
std::optional<Rep> real_root_witness(const AlgebraPtr& alg, const std::vector<int>& d,
                                     const std::vector<Rep>& found) {
    SplitRng rng(seed_of(d));
    for (int attempt = 0; attempt < 60; ++attempt) {
        Rep r = random_rep(alg, d, rng, 1 + attempt / 15);
        try {
            if (is_indecomposable(r)) return r;
        } catch (const NonSplitError&) {
        }
    }
    for (const Rep& x : found)
        for (const Rep& y : found) {
            bool match = true;
            for (std::size_t v = 0; v < d.size(); ++v)
                if (x.dims[v] + y.dims[v] != d[v]) {
                    match = false;
                    break;
                }
            if (!match) continue;
            if (ext1_dim(x, y) == 0) continue;
            SyzygyData sy = syzygy(x);
            std::vector<RepMorphism> cocycles = ext1_cocycles(sy, y);
            for (std::size_t k = 0; k < cocycles.size() && k < 3; ++k) {
                ShortExact se = extension_of(sy, y, cocycles[k]);
                const Rep& mid = se.inc.target;
                try {
                    if (is_indecomposable(mid)) return mid;
                } catch (const NonSplitError&) {
                }
            }
        }
    return std::nullopt;
}

bool positive_definite(const std::vector<std::vector<long>>& c) {
    int n = static_cast<int>(c.size());
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = Rational(c[i][j]);
    for (int k = 0; k < n; ++k) {
        if (!(a[k][k] > Rational(0))) return false;
        for (int i = k + 1; i < n; ++i) {
            Rational f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return true;
}

// all positive roots of a positive definite form, by reflection closure
std::set<std::vector<int>> positive_roots(const std::vector<std::vector<long>>& c) {
    int n = static_cast<int>(c.size());
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> queue;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        seen.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        std::vector<int> d = queue.back();
        queue.pop_back();
        for (int i = 0; i < n; ++i) {
            std::vector<int> w = d;
            w[i] -= static_cast<int>(pairing(c, d, i));
            if (seen.insert(w).second) queue.push_back(w);
        }
        if (seen.size() > 100000) throw VerificationFailure("root closure did not terminate");
    }
    std::set<std::vector<int>> pos;
    for (const auto& d : seen) {
        bool ok = false;
        for (int x : d)
            if (x > 0) ok = true;
            else if (x < 0) {
                ok = false;
                break;
            }
        if (ok) pos.insert(d);
    }
    return pos;
}

Enumeration enumerate_hereditary(const AlgebraPtr& alg, int dim_cap) {
    const Quiver& q = alg->quiver;
    int n = static_cast<int>(q.vertices.size());
    auto c = cartan_matrix(q);
    Enumeration out;

    std::vector<int> d(n, 0);
    // odometer over all vectors with 1 <= sum <= cap, lexicographic order
    while (true) {
        int i = n - 1;
        while (i >= 0) {
            int sum = 0;
            for (int v = 0; v < n; ++v) sum += d[v];
            if (sum + 1 <= dim_cap) {
                ++d[i];
                break;
            }
            d[i] = 0;
            --i;
        }
        if (i < 0) break;

        switch (classify_root(q, c, d)) {
            case RootKind::NotRoot:
                break;
            case RootKind::Imaginary:
                out.families.push_back(d);
                break;
            case RootKind::Real: {
                auto w = real_root_witness(alg, d, out.reps);
                if (!w) throw VerificationFailure("enumeration incomplete");
                out.reps.push_back(std::move(*w));
                break;
            }
        }
    }

    if (positive_definite(c)) {
        if (!out.families.empty()) throw VerificationFailure("family on a definite form");
        std::size_t expect = 0;
        for (const auto& r : positive_roots(c)) {
            int sum = 0;
            for (int x : r) sum += x;
            if (sum <= dim_cap) ++expect;
        }
        if (expect != out.reps.size()) throw VerificationFailure("enumeration incomplete");
    }
    std::sort(out.reps.begin(), out.reps.end(), rep_less);
    return out;
}

Enumeration enumerate_bound(const AlgebraPtr& alg, int dim_cap) {
    Enumeration out;
    std::vector<Rep>& pool = out.reps;
    auto add = [&](const Rep& r) -> bool {
        if (r.is_zero() || r.total_dim() > dim_cap) return false;
        for (const Rep& p : pool)
            if (p.dims == r.dims && is_isomorphic(p, r)) return false;
        pool.push_back(r);
        return true;
    };
    auto add_parts = [&](const Rep& r) {
        bool grew = false;
        if (r.is_zero() || r.total_dim() > 4 * dim_cap) return false;
        for (const Rep& part : decompose(r)) grew |= add(part);
        return grew;
    };

    for (int v = 0; v < static_cast<int>(alg->quiver.vertices.size()); ++v) {
        add(simple_rep(alg, v));
        Rep p = projective_rep(alg, v);
        if (p.total_dim() <= dim_cap) add_parts(p);
    }
    for (int round = 0; round < 3; ++round) {
        bool grew = false;
        std::vector<Rep> snapshot = pool;
        for (const Rep& x : snapshot) {
            SyzygyData sy = syzygy(x);
            if (!sy.omega.rep.is_zero()) grew |= add_parts(sy.omega.rep);
            for (const Rep& y : snapshot) {
                if (x.total_dim() + y.total_dim() > dim_cap) continue;
                if (ext1_dim(x, y) == 0) continue;
                std::vector<RepMorphism> cocycles = ext1_cocycles(sy, y);
                for (std::size_t k = 0; k < cocycles.size() && k < 2; ++k)
                    grew |= add_parts(extension_of(sy, y, cocycles[k]).inc.target);
            }
        }
        if (!grew) break;
    }
    std::sort(pool.begin(), pool.end(), rep_less);
    return out;
}

}  // namespace

Enumeration enumerate_indecomposables(const AlgebraPtr& alg, int dim_cap) {
    if (!alg) throw InvalidInput("null algebra");
    if (dim_cap < 1) throw InvalidInput("dimension cap must be positive");
    if (alg->is_hereditary()) return enumerate_hereditary(alg, dim_cap);
    return enumerate_bound(alg, dim_cap);
}

}  // namespace tiltcover
