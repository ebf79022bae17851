#include "tiltcover/quiver.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>

namespace tiltcover {

bool vertex_id_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

int Quiver::vertex_index(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
        if (vertices[i] == name) return i;
    throw InvalidInput("unknown vertex: " + name);
}

int Quiver::arrow_index(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
        if (arrows[i].name == name) return i;
    throw InvalidInput("unknown arrow: " + name);
}

void Quiver::validate() const {
    std::set<std::string> seen;
    for (const auto& v : vertices)
        if (!seen.insert(v).second) throw InvalidInput("duplicate vertex id: " + v);
    seen.clear();
    for (const auto& a : arrows) {
        if (!seen.insert(a.name).second) throw InvalidInput("duplicate arrow id: " + a.name);
        if (a.src < 0 || a.src >= static_cast<int>(vertices.size()) ||
            a.tgt < 0 || a.tgt >= static_cast<int>(vertices.size()))
            throw InvalidInput("arrow endpoint out of range: " + a.name);
    }
}

std::vector<std::vector<int>> Quiver::out_arrows() const {
    std::vector<std::vector<int>> out(vertices.size());
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i) out[arrows[i].src].push_back(i);
    return out;
}

std::vector<std::vector<int>> Quiver::in_arrows() const {
    std::vector<std::vector<int>> in(vertices.size());
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i) in[arrows[i].tgt].push_back(i);
    return in;
}

std::vector<int> Quiver::components() const {
    int n = static_cast<int>(vertices.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& a : arrows) {
        adj[a.src].push_back(a.tgt);
        adj[a.tgt].push_back(a.src);
    }
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::deque<int> q{s};
        comp[s] = c;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : adj[v])
                if (comp[w] == -1) { comp[w] = c; q.push_back(w); }
        }
        ++c;
    }
    return comp;
}

int Quiver::component_count() const {
    auto c = components();
    return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
}

bool Quiver::is_connected() const { return component_count() <= 1; }

bool Quiver::is_tree() const {
    return is_connected() &&
           static_cast<int>(arrows.size()) == static_cast<int>(vertices.size()) - 1;
}

int Quiver::pi1_rank() const {
    return static_cast<int>(arrows.size()) - static_cast<int>(vertices.size()) +
           component_count();
}

bool Quiver::is_acyclic() const {
    int n = static_cast<int>(vertices.size());
    std::vector<int> indeg(n, 0);
    for (const auto& a : arrows) ++indeg[a.tgt];
    std::deque<int> q;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) q.push_back(v);
    int done = 0;
    auto out = out_arrows();
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        ++done;
        for (int ai : out[v])
            if (--indeg[arrows[ai].tgt] == 0) q.push_back(arrows[ai].tgt);
    }
    return done == n;
}

// ---------------------------------------------------------------------------

int FiniteGroup::inv(int g) const {
    for (int h = 0; h < size(); ++h)
        if (table[g][h] == identity && table[h][g] == identity) return h;
    throw InvalidInput("element without inverse: " + elements[g]);
}

void FiniteGroup::validate() {
    int n = size();
    if (n == 0) throw InvalidInput("empty group");
    if (n > 64) throw InvalidInput("group size exceeds cap (64)");
    if (static_cast<int>(table.size()) != n) throw InvalidInput("group table has wrong shape");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw InvalidInput("group table has wrong shape");
        for (int x : row)
            if (x < 0 || x >= n) throw InvalidInput("group table entry out of range");
    }
    identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int g = 0; g < n && ok; ++g) ok = (table[e][g] == g && table[g][e] == g);
        if (ok) { identity = e; break; }
    }
    if (identity < 0) throw InvalidInput("multiplication table has no identity");
    for (int g = 0; g < n; ++g) {
        bool has_inv = false;
        for (int h = 0; h < n; ++h)
            if (table[g][h] == identity && table[h][g] == identity) { has_inv = true; break; }
        if (!has_inv) throw InvalidInput("element without inverse: " + elements[g]);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw InvalidInput("multiplication table is not associative");
}

bool FiniteGroup::generates(const std::vector<int>& gens) const {
    std::set<int> closure{identity};
    std::deque<int> q{identity};
    while (!q.empty()) {
        int g = q.front();
        q.pop_front();
        for (int s : gens) {
            for (int next : {table[g][s], table[s][g]})
                if (closure.insert(next).second) q.push_back(next);
        }
    }
    return static_cast<int>(closure.size()) == size();
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n <= 0) throw InvalidInput("cyclic group order must be positive");
    FiniteGroup g;
    for (int i = 0; i < n; ++i) g.elements.push_back(std::to_string(i));
    g.table.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.table[i][j] = (i + j) % n;
    g.validate();
    return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    FiniteGroup g;
    int na = a.size(), nb = b.size();
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) g.elements.push_back(a.elements[i] + "," + b.elements[j]);
    g.table.assign(na * nb, std::vector<int>(na * nb));
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < na; ++k)
                for (int l = 0; l < nb; ++l)
                    g.table[i * nb + j][k * nb + l] = a.table[i][k] * nb + b.table[j][l];
    g.validate();
    return g;
}

// ---------------------------------------------------------------------------
// universal cover truncation: vertices are reduced walks from the base vertex

namespace {

using Walk = std::vector<std::pair<int, int>>;  // (arrow index, +1 forward / -1 backward)

std::string walk_name(const Quiver& q, int base_vertex, const Walk& w) {
    if (w.empty()) return q.vertices[base_vertex];
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += q.arrows[w[i].first].name;
        if (w[i].second < 0) s += '~';
    }
    return s;
}

}  // namespace

CoverFragment universal_cover_truncated(const Quiver& q, int base_vertex, int radius) {
    q.validate();
    if (base_vertex < 0 || base_vertex >= static_cast<int>(q.vertices.size()))
        throw InvalidInput("base vertex out of range");
    if (radius < 0) throw InvalidInput("radius must be >= 0");

    auto out = q.out_arrows();
    auto in = q.in_arrows();

    std::map<Walk, int> index;
    std::vector<Walk> walks;
    std::vector<int> endpoint;  // walk -> base vertex
    auto add = [&](const Walk& w, int at) {
        index[w] = static_cast<int>(walks.size());
        walks.push_back(w);
        endpoint.push_back(at);
    };
    add({}, base_vertex);

    // BFS by length; extensions tried in (vertex queue, arrow index) order
    for (std::size_t head = 0; head < walks.size(); ++head) {
        Walk w = walks[head];
        if (static_cast<int>(w.size()) >= radius) continue;
        int at = endpoint[head];
        for (int ai : out[at]) {
            if (!w.empty() && w.back() == std::make_pair(ai, -1)) continue;  // not reduced
            Walk ext = w;
            ext.push_back({ai, +1});
            if (!index.count(ext)) add(ext, q.arrows[ai].tgt);
        }
        for (int ai : in[at]) {
            if (!w.empty() && w.back() == std::make_pair(ai, +1)) continue;
            Walk ext = w;
            ext.push_back({ai, -1});
            if (!index.count(ext)) add(ext, q.arrows[ai].src);
        }
    }

    CoverFragment f;
    f.base = q;
    for (std::size_t i = 0; i < walks.size(); ++i) {
        f.total.vertices.push_back(walk_name(q, base_vertex, walks[i]));
        f.vertex_map.push_back(endpoint[i]);
    }
    // one total arrow per (walk at s(a), a) whose reduced extension stays inside
    for (std::size_t i = 0; i < walks.size(); ++i) {
        for (int ai : out[endpoint[i]]) {
            Walk ext = walks[i];
            if (!ext.empty() && ext.back() == std::make_pair(ai, -1))
                ext.pop_back();  // cancellation: arrow back toward the root
            else
                ext.push_back({ai, +1});
            auto it = index.find(ext);
            if (it == index.end()) continue;  // target outside the truncation
            Arrow a;
            a.name = q.arrows[ai].name + "@" + f.total.vertices[i];
            a.src = static_cast<int>(i);
            a.tgt = it->second;
            f.total.arrows.push_back(a);
            f.arrow_map.push_back(ai);
        }
    }
    f.total.validate();
    if (!f.total.is_tree() && !f.total.vertices.empty())
        throw VerificationFailure("universal cover truncation is not a tree");
    return f;
}

// ---------------------------------------------------------------------------
// monodromy covers

namespace {

// gauge-normalize weights against a BFS spanning tree rooted at the smallest
// vertex id of each component: tree arrows become trivial
std::vector<int> normalize_weights(const Quiver& base, const FiniteGroup& g,
                                   const std::vector<int>& w) {
    int n = static_cast<int>(base.vertices.size());
    auto out = base.out_arrows();
    auto in = base.in_arrows();
    std::vector<int> phi(n, -1);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return vertex_id_less(base.vertices[a], base.vertices[b]);
    });

    for (int root : order) {
        if (phi[root] != -1) continue;
        phi[root] = g.identity;
        std::deque<int> q{root};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int ai : out[v]) {
                int t = base.arrows[ai].tgt;
                if (phi[t] == -1) { phi[t] = g.op(phi[v], w[ai]); q.push_back(t); }
            }
            for (int ai : in[v]) {
                int s = base.arrows[ai].src;
                if (phi[s] == -1) { phi[s] = g.op(phi[v], g.inv(w[ai])); q.push_back(s); }
            }
        }
    }
    std::vector<int> norm(w.size());
    for (std::size_t ai = 0; ai < w.size(); ++ai) {
        const Arrow& a = base.arrows[ai];
        norm[ai] = g.op(g.op(phi[a.src], w[ai]), g.inv(phi[a.tgt]));
    }
    return norm;
}

}  // namespace

QuiverCovering cover_from_monodromy(const Quiver& base, const FiniteGroup& g,
                                    const std::vector<int>& weights) {
    base.validate();
    FiniteGroup grp = g;
    grp.validate();
    if (weights.size() != base.arrows.size())
        throw InvalidInput("monodromy must assign one group element per arrow");
    for (int w : weights)
        if (w < 0 || w >= grp.size()) throw InvalidInput("monodromy element out of range");

    std::vector<int> w = normalize_weights(base, grp, weights);
    int n = grp.size();

    QuiverCovering c;
    c.base = base;
    c.group = grp;
    for (const auto& vn : base.vertices)
        for (int gi = 0; gi < n; ++gi) c.total.vertices.push_back(vn + "@" + grp.elements[gi]);
    for (std::size_t vi = 0; vi < base.vertices.size(); ++vi)
        for (int gi = 0; gi < n; ++gi) c.vertex_map.push_back(static_cast<int>(vi));
    for (std::size_t ai = 0; ai < base.arrows.size(); ++ai) {
        const Arrow& a = base.arrows[ai];
        for (int gi = 0; gi < n; ++gi) {
            Arrow ta;
            ta.name = a.name + "@" + grp.elements[gi];
            ta.src = a.src * n + gi;
            ta.tgt = a.tgt * n + grp.op(gi, w[ai]);
            c.total.arrows.push_back(ta);
            c.arrow_map.push_back(static_cast<int>(ai));
        }
    }
    c.total.validate();

    c.vertex_action.assign(n, std::vector<int>(c.total.vertices.size()));
    c.arrow_action.assign(n, std::vector<int>(c.total.arrows.size()));
    for (int h = 0; h < n; ++h) {
        for (std::size_t vi = 0; vi < base.vertices.size(); ++vi)
            for (int gi = 0; gi < n; ++gi)
                c.vertex_action[h][vi * n + gi] = static_cast<int>(vi) * n + grp.op(h, gi);
        for (std::size_t ai = 0; ai < base.arrows.size(); ++ai)
            for (int gi = 0; gi < n; ++gi)
                c.arrow_action[h][ai * n + gi] = static_cast<int>(ai) * n + grp.op(h, gi);
    }

    if (auto defect = c.covering_defect())
        throw VerificationFailure("constructed cover violates covering axioms: " + *defect);
    return c;
}

bool monodromy_cover_connected(const Quiver& base, const FiniteGroup& g,
                               const std::vector<int>& weights) {
    if (!base.is_connected()) return false;
    FiniteGroup grp = g;
    grp.validate();
    std::vector<int> w = normalize_weights(base, grp, weights);
    std::vector<int> gens;
    for (int x : w)
        if (x != grp.identity) gens.push_back(x);
    return grp.generates(gens);
}

// ---------------------------------------------------------------------------

std::vector<int> QuiverCovering::vertex_fibre(int base_v) const {
    std::vector<int> f;
    for (int i = 0; i < static_cast<int>(vertex_map.size()); ++i)
        if (vertex_map[i] == base_v) f.push_back(i);
    return f;
}

int QuiverCovering::lift_arrow_at(int a, int total_src) const {
    int found = -1;
    for (int i = 0; i < static_cast<int>(arrow_map.size()); ++i) {
        if (arrow_map[i] == a && total.arrows[i].src == total_src) {
            if (found != -1) throw VerificationFailure("arrow lift is not unique");
            found = i;
        }
    }
    if (found == -1) throw VerificationFailure("arrow has no lift at the requested source");
    return found;
}

std::optional<std::string> QuiverCovering::covering_defect() const {
    int nv = static_cast<int>(total.vertices.size());
    int na = static_cast<int>(total.arrows.size());
    int n = group.size();
    if (static_cast<int>(vertex_map.size()) != nv || static_cast<int>(arrow_map.size()) != na)
        return "projection maps have wrong sizes";
    for (int v : vertex_map)
        if (v < 0 || v >= static_cast<int>(base.vertices.size())) return "vertex map out of range";
    for (int a : arrow_map)
        if (a < 0 || a >= static_cast<int>(base.arrows.size())) return "arrow map out of range";

    for (int i = 0; i < na; ++i) {
        const Arrow& ta = total.arrows[i];
        const Arrow& ba = base.arrows[arrow_map[i]];
        if (vertex_map[ta.src] != ba.src || vertex_map[ta.tgt] != ba.tgt)
            return "projection does not commute with endpoints on arrow " + ta.name;
    }

    // local bijectivity: arrows at a total vertex <-> arrows at its image
    auto t_out = total.out_arrows(), t_in = total.in_arrows();
    auto b_out = base.out_arrows(), b_in = base.in_arrows();
    for (int v = 0; v < nv; ++v) {
        std::multiset<int> img;
        for (int ai : t_out[v]) img.insert(arrow_map[ai]);
        std::multiset<int> want(b_out[vertex_map[v]].begin(), b_out[vertex_map[v]].end());
        if (img != want) return "outgoing arrows do not biject at vertex " + total.vertices[v];
        img.clear();
        for (int ai : t_in[v]) img.insert(arrow_map[ai]);
        want = std::multiset<int>(b_in[vertex_map[v]].begin(), b_in[vertex_map[v]].end());
        if (img != want) return "incoming arrows do not biject at vertex " + total.vertices[v];
    }

    if (static_cast<int>(vertex_action.size()) != n || static_cast<int>(arrow_action.size()) != n)
        return "group action has wrong size";
    for (int g = 0; g < n; ++g) {
        const auto& va = vertex_action[g];
        const auto& aa = arrow_action[g];
        if (static_cast<int>(va.size()) != nv || static_cast<int>(aa.size()) != na)
            return "action of " + group.elements[g] + " has wrong size";
        std::vector<char> seen(nv, 0);
        for (int v : va) {
            if (v < 0 || v >= nv || seen[v]) return "vertex action of " + group.elements[g] + " is not a permutation";
            seen[v] = 1;
        }
        std::vector<char> aseen(na, 0);
        for (int a : aa) {
            if (a < 0 || a >= na || aseen[a]) return "arrow action of " + group.elements[g] + " is not a permutation";
            aseen[a] = 1;
        }
        for (int i = 0; i < na; ++i) {
            if (total.arrows[aa[i]].src != va[total.arrows[i].src] ||
                total.arrows[aa[i]].tgt != va[total.arrows[i].tgt])
                return "action of " + group.elements[g] + " is not a quiver automorphism";
            if (arrow_map[aa[i]] != arrow_map[i])
                return "action of " + group.elements[g] + " does not commute with the projection";
        }
        for (int v = 0; v < nv; ++v)
            if (vertex_map[va[v]] != vertex_map[v])
                return "action of " + group.elements[g] + " does not preserve fibres";
    }
    // group law on the action
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int v = 0; v < nv; ++v)
                if (vertex_action[group.op(g, h)][v] != vertex_action[g][vertex_action[h][v]])
                    return "vertex action is not a group action";
    for (int v = 0; v < nv; ++v)
        if (vertex_action[group.identity][v] != v) return "identity does not act trivially";
    // freeness
    for (int g = 0; g < n; ++g) {
        if (g == group.identity) continue;
        for (int v = 0; v < nv; ++v)
            if (vertex_action[g][v] == v)
                return "action of " + group.elements[g] + " has a fixed vertex";
    }
    // transitivity on fibres: free action + fibre size |G| suffices, but check
    for (std::size_t bv = 0; bv < base.vertices.size(); ++bv) {
        auto f = vertex_fibre(static_cast<int>(bv));
        if (static_cast<int>(f.size()) != n)
            return "vertex fibre of " + base.vertices[bv] + " has wrong size";
        std::set<int> orbit;
        for (int g = 0; g < n; ++g) orbit.insert(vertex_action[g][f[0]]);
        if (orbit != std::set<int>(f.begin(), f.end()))
            return "action is not transitive on the fibre of " + base.vertices[bv];
    }
    for (std::size_t ba = 0; ba < base.arrows.size(); ++ba) {
        int count = 0;
        for (int a : arrow_map)
            if (a == static_cast<int>(ba)) ++count;
        if (count != n) return "arrow fibre of " + base.arrows[ba].name + " has wrong size";
    }
    return std::nullopt;
}

}  // namespace tiltcover
