#pragma once

// Split model of the bounded derived category of a hereditary algebra.
//
// Over a hereditary algebra every bounded complex is isomorphic to the sum
// of its shifted cohomology modules, so objects are stored as formal sums of
// certified-indecomposable representations with a shift and a multiplicity;
// M[s] places M in cohomological degree -s.  Morphisms live in degrees 0 and
// 1 only: a degree-0 block is an ordinary RepMorphism between summands of
// equal shift, and a degree-1 block (target shift = source shift + 1) is a
// cocycle Omega M -> N against the deterministic syzygy of the source
// summand, exactly as produced by ext1_cocycles.  Raw complexes appear only
// transiently inside cone.

#include "tiltcover/rep.hpp"

namespace tiltcover {

struct DSummand {
    Rep rep;        // certified indecomposable
    int shift = 0;  // rep[shift], i.e. cohomological degree -shift
    int mult = 1;
};

// Normal form: sorted by (shift, rep_less), entries pairwise non-isomorphic
// at equal shift, multiplicities folded into mult.
struct DObject {
    AlgebraPtr alg;
    std::vector<DSummand> summands;

    bool is_zero() const { return summands.empty(); }
    int summand_count() const;  // with multiplicity
    int min_shift() const;      // pre: nonzero
    int max_shift() const;      // pre: nonzero
};

// certifies indecomposability of every part, merges, sorts
DObject dobject(AlgebraPtr alg, const std::vector<DSummand>& parts);
// decompose a module and place the summands at the given shift
DObject module_as_dobject(const Rep& m, int shift = 0);
DObject shift_of(const DObject& x, int k);
// equality of normal forms, comparing paired summands with is_isomorphic
bool dobj_equal(const DObject& a, const DObject& b);

// dim Hom(X, Y[d]).  Per summand pair (M at i, N at j) the hereditary pair
// rule applies: (j - i) + d = 0 contributes hom_dim(M, N), = 1 contributes
// ext1_dim(M, N), anything else contributes nothing.
int ghom_dim(const DObject& x, const DObject& y, int d);

// multiplicity-free, one summand per vertex of the quiver, and
// ghom_dim(X, X, i) = 0 for 1 <= i <= (shift spread + 1).  With split
// objects every degree beyond that window vanishes identically (a pair of
// summands is at most `spread` shifts apart and Ext^{>1} = 0), so the finite
// check covers all i >= 1.
bool in_class_T(const DObject& x);

// number of summands (with multiplicity) strictly above the minimal shift;
// 0 exactly when shifting the minimal part to degree 0 leaves a module
int r_value(const DObject& x);

// one block of a DMorphism: from copy src_copy of summand src to copy
// tgt_copy of summand tgt
struct DBlock {
    int src = 0, src_copy = 0, tgt = 0, tgt_copy = 0;
    RepMorphism map;
};

struct DMorphism {
    DObject source, target;
    std::vector<DBlock> deg0;  // equal shift, map: M -> N
    std::vector<DBlock> deg1;  // target shift = source shift + 1,
                               // map: syzygy(M).omega.rep -> N
    void validate() const;
};

DMorphism zero_dmorphism(const DObject& x, const DObject& y);
// transport an ordinary module map to a DMorphism between the decomposed
// source and target placed at `shift`
DMorphism dmorphism_from_map(const RepMorphism& g, int shift = 0);

// Mapping cone via two-term projective resolutions: each summand M[s] is
// replaced by (Omega M -> P_0) in degrees (-s-1, -s), blocks are lifted to
// chain maps, and the cohomology of the total complex is decomposed and
// reassembled as sum H^n [-n].  The triangle reads X -> Y -> cone -> X[1].
DObject cone(const DMorphism& f);

}  // namespace tiltcover
