#pragma once

// Quivers (finite directed multigraphs), finite groups given by multiplication
// tables, and quiver coverings: truncations of the universal cover and finite
// Galois covers built from monodromy weights.

#include "tiltcover/errors.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tiltcover {

struct Arrow {
    std::string name;
    int src = -1;
    int tgt = -1;
};

struct Quiver {
    std::vector<std::string> vertices;  // unique names, order is part of the data
    std::vector<Arrow> arrows;          // unique names

    int vertex_index(const std::string& name) const;
    int arrow_index(const std::string& name) const;

    // throws InvalidInput on duplicate names or dangling endpoints
    void validate() const;

    std::vector<std::vector<int>> out_arrows() const;  // by source vertex
    std::vector<std::vector<int>> in_arrows() const;   // by target vertex

    // underlying-graph components, vertex -> component id (0-based, BFS order)
    std::vector<int> components() const;
    int component_count() const;
    bool is_connected() const;

    // connected with |arrows| = |vertices| - 1
    bool is_tree() const;

    // free rank of the fundamental group(oid): |E| - |V| + #components
    int pi1_rank() const;

    // no oriented cycles
    bool is_acyclic() const;
};

struct FiniteGroup {
    std::vector<std::string> elements;
    std::vector<std::vector<int>> table;  // table[g][h] = g * h
    int identity = -1;                    // determined by validate()

    int size() const { return static_cast<int>(elements.size()); }
    int op(int g, int h) const { return table[g][h]; }
    int inv(int g) const;

    // checks the full group law (closure, associativity, identity, inverses)
    // and the size cap (64); throws InvalidInput otherwise
    void validate();

    bool generates(const std::vector<int>& gens) const;

    static FiniteGroup cyclic(int n);
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
};

// A covering map without deck-group data (universal cover truncations).
struct CoverFragment {
    Quiver total;
    Quiver base;
    std::vector<int> vertex_map;  // total vertex -> base vertex
    std::vector<int> arrow_map;   // total arrow -> base arrow
};

// A finite covering with a group acting on the total quiver over the base.
struct QuiverCovering {
    Quiver total;
    Quiver base;
    std::vector<int> vertex_map;
    std::vector<int> arrow_map;
    FiniteGroup group;
    std::vector<std::vector<int>> vertex_action;  // [g][total v] -> total v
    std::vector<std::vector<int>> arrow_action;   // [g][total a] -> total a

    // first failed covering/Galois axiom, or nullopt when everything holds:
    // projection compatibility, local bijectivity on arrows (both directions),
    // action by automorphisms commuting with the projection, freeness, and
    // transitivity on every fibre.
    std::optional<std::string> covering_defect() const;
    bool is_galois() const { return !covering_defect().has_value(); }

    int fibre_size() const { return group.size(); }
    std::vector<int> vertex_fibre(int base_v) const;
    // unique lift of base arrow `a` with source `total_src`; throws if absent
    int lift_arrow_at(int a, int total_src) const;
};

// Truncation of the universal cover at `radius` around `base_vertex`:
// vertices are reduced walks of length <= radius, arrows connect walks that
// differ by one traversal step.  The result is always a tree.
CoverFragment universal_cover_truncated(const Quiver& q, int base_vertex, int radius);

// Finite cover from monodromy weights w : arrows -> G.  Weights are first
// normalized against a BFS spanning tree rooted at the smallest vertex id
// (tree arrows become trivial), so equivalent assignments give the identical
// cover.  Total vertices are (v, g) with g acting by left translation.
QuiverCovering cover_from_monodromy(const Quiver& base, const FiniteGroup& g,
                                    const std::vector<int>& weights);

// Is the total quiver of the monodromy cover connected?  Equivalent to the
// normalized weights generating the group; exposed for direct use.
bool monodromy_cover_connected(const Quiver& base, const FiniteGroup& g,
                               const std::vector<int>& weights);

// Deterministic total order used for "smallest vertex id": (length, lex),
// which orders numeral names numerically.
bool vertex_id_less(const std::string& a, const std::string& b);

}  // namespace tiltcover
