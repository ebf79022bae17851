#include "tiltcover/algebra.hpp"

#include "tiltcover/errors.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace tiltcover {

void check_path(const Quiver& q, const Path& p) {
    int nv = static_cast<int>(q.vertices.size());
    if (p.src < 0 || p.src >= nv || p.tgt < 0 || p.tgt >= nv)
        throw InvalidInput("path endpoint out of range");
    int at = p.src;
    for (int a : p.arrows) {
        if (a < 0 || a >= static_cast<int>(q.arrows.size()))
            throw InvalidInput("path uses an unknown arrow");
        if (q.arrows[a].src != at)
            throw InvalidInput("path arrows do not compose (traversal order)");
        at = q.arrows[a].tgt;
    }
    if (at != p.tgt) throw InvalidInput("path target mismatch");
}

Path path_from_arrows(const Quiver& q, const std::vector<int>& arrows, int src_if_empty) {
    Path p;
    if (arrows.empty()) {
        if (src_if_empty < 0) throw InvalidInput("trivial path needs a vertex");
        p.src = p.tgt = src_if_empty;
        return p;
    }
    p.arrows = arrows;
    p.src = q.arrows[arrows.front()].src;
    p.tgt = q.arrows[arrows.back()].tgt;
    check_path(q, p);
    return p;
}

std::string path_to_string(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + q.vertices[p.src];
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += '.';
        s += q.arrows[p.arrows[i]].name;
    }
    return s;
}

// ---------------------------------------------------------------------------

namespace {

// column order inside a (src, tgt) pair: long paths first so that elimination
// pivots rewrite long paths into short ones
bool col_less(const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() > b.arrows.size();
    return a.arrows < b.arrows;
}

void validate_relation(const Quiver& q, const Relation& r) {
    if (r.paths.empty() || r.paths.size() != r.coeffs.size())
        throw InvalidInput("relation arity mismatch");
    bool nonzero = false;
    for (const auto& c : r.coeffs) nonzero = nonzero || !is_zero(c);
    if (!nonzero) throw InvalidInput("relation with all-zero coefficients");
    for (const Path& p : r.paths) {
        check_path(q, p);
        if (p.length() < 2)
            throw InvalidInput("relations must be admissible: paths of length >= 2");
        if (p.src != r.paths[0].src || p.tgt != r.paths[0].tgt)
            throw InvalidInput("relation paths must be parallel");
    }
}

}  // namespace

const std::vector<int>& Algebra::pair_basis(int x, int y) const {
    static const std::vector<int> empty;
    auto it = pairs_.find({x, y});
    return it == pairs_.end() ? empty : it->second.own;
}

int Algebra::idempotent_index(int v) const { return e_index_.at(v); }

int Algebra::arrow_basis_index(int a) const {
    int idx = arrow_index_.at(a);
    if (idx < 0) throw VerificationFailure("arrow eliminated from basis: ideal not admissible");
    return idx;
}

Algebra::Lin Algebra::normal_form(const Path& p) const {
    check_path(quiver, p);
    if (nilpotency_ > 0 && p.length() >= nilpotency_) return {};
    auto pit = pairs_.find({p.src, p.tgt});
    if (pit == pairs_.end()) return {};
    auto cit = pit->second.col_of.find(p);
    if (cit == pit->second.col_of.end()) return {};  // beyond enumerated lengths: in ideal
    return pit->second.nf_of_col[cit->second];
}

Algebra::Lin Algebra::add(const Lin& a, const Lin& b) const {
    std::map<int, Rational> acc;
    for (const auto& [i, c] : a) acc[i] += c;
    for (const auto& [i, c] : b) acc[i] += c;
    Lin out;
    for (const auto& [i, c] : acc)
        if (!is_zero(c)) out.push_back({i, c});
    return out;
}

Algebra::Lin Algebra::scale(const Lin& a, const Rational& c) const {
    Lin out;
    if (is_zero(c)) return out;
    for (const auto& [i, x] : a) out.push_back({i, x * c});
    return out;
}

Algebra::Lin Algebra::mul(const Lin& a, const Lin& b) const {
    std::map<int, Rational> acc;
    for (const auto& [i, ca] : a) {
        const Path& p = basis_[i];
        for (const auto& [j, cb] : b) {
            const Path& q = basis_[j];
            if (p.tgt != q.src) continue;
            Path pq;
            pq.src = p.src;
            pq.tgt = q.tgt;
            pq.arrows = p.arrows;
            pq.arrows.insert(pq.arrows.end(), q.arrows.begin(), q.arrows.end());
            for (const auto& [k, ck] : normal_form(pq)) acc[k] += ca * cb * ck;
        }
    }
    Lin out;
    for (const auto& [k, c] : acc)
        if (!is_zero(c)) out.push_back({k, c});
    return out;
}

Algebra Algebra::path_algebra(const Quiver& q) {
    return bound_quiver_algebra(q, {}, 0);
}

Algebra Algebra::bound_quiver_algebra(const Quiver& q, const std::vector<Relation>& rels,
                                      int length_cap) {
    q.validate();
    for (const Relation& r : rels) validate_relation(q, r);
    Algebra a;
    a.quiver = q;
    a.relations = rels;
    a.build(length_cap);
    return a;
}

void Algebra::build(int length_cap) {
    const Quiver& q = quiver;
    const bool acyclic = q.is_acyclic();
    int max_rel_len = 0;
    for (const Relation& r : relations) {
        int lo = r.paths[0].length(), hi = lo;
        for (const Path& p : r.paths) {
            lo = std::min(lo, p.length());
            hi = std::max(hi, p.length());
        }
        if (!acyclic && lo != hi)
            throw CapExceeded(
                "cannot certify nilpotency: non-homogeneous relations on a quiver with "
                "oriented cycles");
        max_rel_len = std::max(max_rel_len, hi);
    }
    if (!acyclic && relations.empty())
        throw CapExceeded("path algebra of a quiver with oriented cycles is infinite-dimensional");

    int cap = 0;
    if (!acyclic) {
        cap = length_cap > 0 ? length_cap
                             : static_cast<int>(q.arrows.size()) * std::max(1, max_rel_len);
        if (cap < max_rel_len)
            throw InvalidInput("length cap below the longest relation");
    }

    // enumerate paths: BFS by length from every vertex
    auto out = q.out_arrows();
    std::vector<Path> all;
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) {
        Path e;
        e.src = e.tgt = v;
        all.push_back(e);
    }
    std::size_t head = 0;
    const std::size_t guard = 2'000'000;
    while (head < all.size()) {
        Path p = all[head++];
        if (!acyclic && p.length() >= cap) continue;
        for (int ai : out[p.tgt]) {
            Path ext = p;
            ext.arrows.push_back(ai);
            ext.tgt = q.arrows[ai].tgt;
            all.push_back(ext);
            if (all.size() > guard) throw CapExceeded("path enumeration blew past hard guard");
        }
    }

    // group by pair, set column order (long first)
    for (const Path& p : all) pairs_[{p.src, p.tgt}].cols.push_back(p);
    for (auto& [key, pd] : pairs_) {
        std::sort(pd.cols.begin(), pd.cols.end(), col_less);
        for (std::size_t i = 0; i < pd.cols.size(); ++i) pd.col_of[pd.cols[i]] = static_cast<int>(i);
    }

    // ideal generators u * rho * v per pair, as rows over the pair's columns
    std::map<std::pair<int, int>, std::vector<std::vector<std::pair<int, Rational>>>> gen_rows;
    // index all paths by source and by target for the u/v enumeration
    std::map<int, std::vector<const Path*>> by_tgt, by_src;
    for (const Path& p : all) {
        by_tgt[p.tgt].push_back(&p);
        by_src[p.src].push_back(&p);
    }
    for (const Relation& r : relations) {
        int x = r.paths[0].src, y = r.paths[0].tgt;
        int len = r.paths[0].length();  // homogeneous when it matters
        for (const Path* u : by_tgt[x]) {
            for (const Path* v : by_src[y]) {
                if (!acyclic && u->length() + len + v->length() > cap) continue;
                auto pdit = pairs_.find({u->src, v->tgt});
                if (pdit == pairs_.end()) continue;
                const auto& pd = pdit->second;
                std::map<int, Rational> row;  // col -> coeff, within pair (u.src, v.tgt)
                bool any = false;
                for (std::size_t k = 0; k < r.paths.size(); ++k) {
                    if (is_zero(r.coeffs[k])) continue;
                    Path full;
                    full.src = u->src;
                    full.tgt = v->tgt;
                    full.arrows = u->arrows;
                    full.arrows.insert(full.arrows.end(), r.paths[k].arrows.begin(),
                                       r.paths[k].arrows.end());
                    full.arrows.insert(full.arrows.end(), v->arrows.begin(), v->arrows.end());
                    if (!acyclic && full.length() > cap) continue;  // homogeneous: never hit
                    auto cit = pd.col_of.find(full);
                    if (cit == pd.col_of.end()) {
                        if (acyclic) throw VerificationFailure("path enumeration missed a product");
                        continue;
                    }
                    row[cit->second] += r.coeffs[k];
                    any = true;
                }
                if (!any) continue;
                std::vector<std::pair<int, Rational>> sparse;
                for (const auto& [c, coe] : row)
                    if (!is_zero(coe)) sparse.push_back({c, coe});
                if (!sparse.empty()) gen_rows[{u->src, v->tgt}].push_back(std::move(sparse));
            }
        }
    }

    // eliminate per pair: pivots (long paths) get rewritten into non-pivots
    std::map<std::pair<int, int>, std::vector<int>> pivot_cols;       // per pair
    std::map<std::pair<int, int>, QMat> rref_rows;                    // per pair
    for (auto& [key, rows] : gen_rows) {
        auto& pd = pairs_[key];
        QMat m(static_cast<int>(rows.size()), static_cast<int>(pd.cols.size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [c, coe] : rows[r]) m.set(static_cast<int>(r), c, coe);
        std::vector<int> piv;
        QMat R = rref(m, &piv);
        pivot_cols[key] = piv;
        rref_rows[key] = R;
    }

    // nilpotency certificate for cyclic quivers: smallest N <= cap with every
    // length-N path in the ideal (then every longer path is too, since the
    // ideal is graded and closed under concatenation)
    nilpotency_ = 0;
    if (!acyclic) {
        auto in_ideal = [&](const Path& p) {
            auto key = std::make_pair(p.src, p.tgt);
            auto pit = pivot_cols.find(key);
            if (pit == pivot_cols.end()) return false;
            const auto& piv = pit->second;
            const QMat& R = rref_rows[key];
            int col = pairs_[key].col_of.at(p);
            for (std::size_t i = 0; i < piv.size(); ++i) {
                if (piv[i] == col) {
                    // p in ideal iff its rref row is exactly e_col
                    return R.row(static_cast<int>(i)).size() == 1;
                }
            }
            return false;
        };
        for (int n = max_rel_len; n <= cap && nilpotency_ == 0; ++n) {
            bool all_in = true;
            for (const Path& p : all) {
                if (p.length() != n) continue;
                if (!in_ideal(p)) { all_in = false; break; }
            }
            if (all_in) nilpotency_ = n;
        }
        if (nilpotency_ == 0)
            throw CapExceeded("arrow ideal not certified nilpotent within the length cap");
    }

    // assemble the basis: per pair, non-pivot columns (dropping anything at or
    // beyond the nilpotency bound), presented short-first
    e_index_.assign(q.vertices.size(), -1);
    arrow_index_.assign(q.arrows.size(), -1);
    for (auto& [key, pd] : pairs_) {
        std::set<int> pivots;
        if (auto pit = pivot_cols.find(key); pit != pivot_cols.end())
            pivots.insert(pit->second.begin(), pit->second.end());
        std::vector<int> reps;
        for (std::size_t c = 0; c < pd.cols.size(); ++c) {
            if (pivots.count(static_cast<int>(c))) continue;
            if (nilpotency_ > 0 && pd.cols[c].length() >= nilpotency_) continue;
            reps.push_back(static_cast<int>(c));
        }
        // short paths first in the published basis, lexicographic within a length
        std::sort(reps.begin(), reps.end(), [&](int a, int b) {
            const Path& pa = pd.cols[a];
            const Path& pb = pd.cols[b];
            if (pa.arrows.size() != pb.arrows.size()) return pa.arrows.size() < pb.arrows.size();
            return pa.arrows < pb.arrows;
        });
        std::map<int, int> global_of_col;
        for (int c : reps) {
            int g = static_cast<int>(basis_.size());
            basis_.push_back(pd.cols[c]);
            pd.own.push_back(g);
            global_of_col[c] = g;
            if (pd.cols[c].is_idempotent()) e_index_[pd.cols[c].src] = g;
            if (pd.cols[c].length() == 1) arrow_index_[pd.cols[c].arrows[0]] = g;
        }
        // normal forms: representatives map to themselves, pivots to their
        // rewrite combination, dropped columns to zero
        pd.nf_of_col.assign(pd.cols.size(), {});
        for (const auto& [c, g] : global_of_col) pd.nf_of_col[c] = {{g, Rational(1)}};
        if (pivot_cols.count(key)) {
            const auto& piv = pivot_cols[key];
            const QMat& R = rref_rows[key];
            for (std::size_t i = 0; i < piv.size(); ++i) {
                Lin nf;
                for (const auto& [c, coe] : R.row(static_cast<int>(i))) {
                    if (c == piv[i]) continue;
                    auto git = global_of_col.find(c);
                    if (git == global_of_col.end()) continue;  // beyond nilpotency: zero
                    nf.push_back({git->second, Rational(0) - coe});
                }
                pd.nf_of_col[piv[i]] = nf;
            }
        }
    }
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v)
        if (e_index_[v] < 0) throw VerificationFailure("vertex idempotent missing from basis");
}

// ---------------------------------------------------------------------------

SquidResult squid(int t, const std::vector<int>& arm_lengths, const std::vector<Rational>& tau) {
    if (t < 2) throw InvalidInput("squid needs at least two arms");
    if (static_cast<int>(arm_lengths.size()) != t)
        throw InvalidInput("squid arm count does not match t");
    if (static_cast<int>(tau.size()) != t - 2)
        throw InvalidInput("squid needs exactly t-2 weights");
    for (int len : arm_lengths)
        if (len < 0) throw InvalidInput("negative arm length");
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (is_zero(tau[i])) throw InvalidInput("squid weights must be nonzero");
        for (std::size_t j = i + 1; j < tau.size(); ++j)
            if (tau[i] == tau[j]) throw InvalidInput("squid weights must be pairwise distinct");
    }

    Quiver q;
    q.vertices = {"1", "2"};
    auto add_arrow = [&](const std::string& name, const std::string& from, const std::string& to) {
        Arrow a;
        a.name = name;
        a.src = q.vertex_index(from);
        a.tgt = q.vertex_index(to);
        q.arrows.push_back(a);
    };
    add_arrow("a1", "1", "2");
    add_arrow("a2", "1", "2");
    for (int i = 1; i <= t; ++i) {
        for (int j = 1; j <= arm_lengths[i - 1]; ++j)
            q.vertices.push_back(std::to_string(i) + "." + std::to_string(j));
        if (arm_lengths[i - 1] >= 1)
            add_arrow("b" + std::to_string(i), "2", std::to_string(i) + ".1");
        for (int j = 1; j < arm_lengths[i - 1]; ++j)
            add_arrow("c" + std::to_string(i) + "." + std::to_string(j),
                      std::to_string(i) + "." + std::to_string(j),
                      std::to_string(i) + "." + std::to_string(j + 1));
    }
    q.validate();

    std::vector<Relation> rels;
    auto head_path = [&](const std::string& head_arrow, int arm) {
        return path_from_arrows(
            q, {q.arrow_index(head_arrow), q.arrow_index("b" + std::to_string(arm))});
    };
    bool degenerate = false;
    for (int i = 1; i <= t; ++i) {
        if (arm_lengths[i - 1] == 0) {
            degenerate = true;
            continue;  // arm absent: relation omitted
        }
        Relation r;
        if (i == 1) {
            r.paths = {head_path("a1", 1)};
            r.coeffs = {Rational(1)};
        } else if (i == 2) {
            r.paths = {head_path("a2", 2)};
            r.coeffs = {Rational(1)};
        } else {
            r.paths = {head_path("a2", i), head_path("a1", i)};
            r.coeffs = {Rational(1), Rational(0) - tau[i - 3]};
        }
        rels.push_back(r);
    }

    SquidResult res{Algebra::bound_quiver_algebra(q, rels), degenerate};
    return res;
}

}  // namespace tiltcover
