#pragma once

// Bound quiver algebras A = kQ/I over Q with an explicit path basis.
//
// Paths are stored in traversal order: the path p = [a1, a2] first follows a1
// from p.src, then a2 into p.tgt, and products compose left to right
// (e_src * p = p = p * e_tgt).  For an acyclic quiver the path space is finite
// and the ideal is eliminated exactly.  For a quiver with oriented cycles the
// relations must be homogeneous (all paths of a relation share one length);
// the ideal is then graded, lengths are processed up to a cap, and the arrow
// ideal must be certified nilpotent (every path of some length N <= cap lies
// in the ideal) -- otherwise construction fails loudly.

#include "tiltcover/matrix.hpp"
#include "tiltcover/quiver.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tiltcover {

struct Path {
    int src = -1;
    int tgt = -1;
    std::vector<int> arrows;  // arrow indices in traversal order; empty = e_src

    int length() const { return static_cast<int>(arrows.size()); }
    bool is_idempotent() const { return arrows.empty(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.src == b.src && a.tgt == b.tgt && a.arrows == b.arrows;
    }
    friend bool operator<(const Path& a, const Path& b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.tgt != b.tgt) return a.tgt < b.tgt;
        if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
        return a.arrows < b.arrows;
    }
};

// validates endpoint bookkeeping against the quiver; throws InvalidInput
void check_path(const Quiver& q, const Path& p);
Path path_from_arrows(const Quiver& q, const std::vector<int>& arrows, int src_if_empty = -1);
std::string path_to_string(const Quiver& q, const Path& p);

struct Relation {
    std::vector<Path> paths;       // pairwise parallel, each of length >= 2
    std::vector<Rational> coeffs;  // same size, at least one nonzero
};

class Algebra {
public:
    // sparse element in the path basis: (basis index, coefficient)
    using Lin = std::vector<std::pair<int, Rational>>;

    Quiver quiver;
    std::vector<Relation> relations;

    // hereditary = no relations over an acyclic quiver
    bool is_hereditary() const { return relations.empty() && quiver.is_acyclic(); }

    int dim() const { return static_cast<int>(basis_.size()); }
    int vertex_count() const { return static_cast<int>(quiver.vertices.size()); }
    int arrow_count() const { return static_cast<int>(quiver.arrows.size()); }

    const Path& basis_path(int i) const { return basis_[i]; }
    // basis indices for e_x A e_y, ascending (length, arrows) order
    const std::vector<int>& pair_basis(int x, int y) const;
    int pair_dim(int x, int y) const { return static_cast<int>(pair_basis(x, y).size()); }

    int idempotent_index(int v) const;  // basis index of e_v
    int arrow_basis_index(int a) const; // basis index of the length-1 path

    // image of an arbitrary path of the quiver in the algebra
    Lin normal_form(const Path& p) const;
    // algebra product (left-to-right composition), bilinear extension
    Lin mul(const Lin& a, const Lin& b) const;
    Lin scale(const Lin& a, const Rational& c) const;
    Lin add(const Lin& a, const Lin& b) const;
    bool lin_is_zero(const Lin& a) const { return a.empty(); }

    // the length-N certificate for cyclic quivers; 0 when the quiver is acyclic
    int nilpotency_bound() const { return nilpotency_; }

    static Algebra path_algebra(const Quiver& q);
    static Algebra bound_quiver_algebra(const Quiver& q, const std::vector<Relation>& rels,
                                        int length_cap = 0);

private:
    void build(int length_cap);

    struct PairData {
        std::vector<Path> cols;           // (length desc, arrows lex asc)
        std::map<Path, int> col_of;
        std::vector<Lin> nf_of_col;       // image of each column in the global basis
        std::vector<int> own;             // basis indices of e_x A e_y, short first
    };

    std::vector<Path> basis_;             // global: pairs in (x, y) order, short first
    std::map<std::pair<int, int>, PairData> pairs_;
    std::vector<int> e_index_;            // vertex -> basis index of e_v
    std::vector<int> arrow_index_;        // arrow -> basis index
    int nilpotency_ = 0;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Squid algebra S(t, p, tau): two head vertices joined by a pair of parallel
// arrows a1, a2, and t arms; arm i of length p_i starts with b_i out of the
// second head.  Relations: a1 b1 = 0, a2 b2 = 0, and a2 b_i = tau_i * a1 b_i
// for i >= 3.  Arms with p_i = 0 are omitted together with their relations and
// the result is flagged degenerate (squid(2, (0,0), ()) is the Kronecker
// algebra).  tau entries must be nonzero and pairwise distinct.
struct SquidResult {
    Algebra algebra;
    bool degenerate = false;
};
SquidResult squid(int t, const std::vector<int>& arm_lengths, const std::vector<Rational>& tau);

}  // namespace tiltcover
