#pragma once

// Galois coverings of bound quiver algebras and the transport of tilting
// data through them.
//
// A covering of algebras sits over a Galois covering of quivers: the base
// relations lift along unique arrow lifts, the group G acts on the total
// algebra, and the push-down functor F sends a total representation M to the
// base representation with F M(x) = (+)_{y in fibre(x)} M(y).  Hom spaces
// between push-downs carry a G-grading
//     Hom(F X, F M) = (+)_g Hom(X, gM),
// and the covering property says the graded pieces are independent and
// exhaust the space.  On top of that sit the operations this header exposes:
// splitting a morphism of push-downs into graded components, rewriting an
// approximation column until every entry is homogeneous (so it lifts), and
// replaying a recorded mutation walk upstairs to produce lifts of every
// summand of a tilting module.  Finally, a lifted tilting module induces a
// covering of its endomorphism algebra with the same group, computed here
// together with the checks that make it a covering: graded arrow bases,
// relation kernels upstairs and downstairs, and the projective coresolution
// certificates.

#include "tiltcover/tilt.hpp"

#include <map>

namespace tiltcover {

// A bound quiver algebra covering: base algebra, total algebra, and the
// quiver covering (with group action) connecting them.
struct CategoryCover {
    AlgebraPtr base;
    AlgebraPtr total;
    QuiverCovering qcover;

    const FiniteGroup& group() const { return qcover.group; }
};

// Lifts the relations of `base` along the quiver covering (every relation
// must lift to parallel paths at every fibre vertex), builds the total
// algebra, and verifies fibre by fibre that the path spaces of the total
// algebra project isomorphically onto those of the base.
CategoryCover build_cover(const AlgebraPtr& base, const QuiverCovering& qc);

// The deck translate gM: (gM)(v) = M(g^{-1} v), (gM)(a) = M(g^{-1} a);
// g ranges over indices into the covering group.
Rep translate(const CategoryCover& c, int g, const Rep& m);
RepMorphism translate_hom(const CategoryCover& c, int g, const RepMorphism& f);

// The push-down F M: base vertex spaces are fibre sums in ascending
// total-vertex order, base arrow matrices have one block per fibre vertex
// placed by the unique arrow lift.
Rep push_down(const CategoryCover& c, const Rep& m);
// push-down of a degree-zero morphism, block diagonal over each fibre
RepMorphism push_down_hom(const CategoryCover& c, const RepMorphism& f);
// push-down of a degree-g morphism u: X -> gM, composed with the canonical
// block-permutation identification F(gM) = F(M); the result maps
// push_down(X) -> push_down(M) with M = translate(g^{-1}, u.target)
RepMorphism push_down_graded(const CategoryCover& c, int g, const RepMorphism& u);

// restriction of a base representation along the projection
Rep pull_up(const CategoryCover& c, const Rep& x);

// { g : gM isomorphic to M }, always containing the identity
std::vector<int> stabilizer(const CategoryCover& c, const Rep& m);

// dim Hom_D(F M, F N [d]) == sum_g dim Hom_D(gM, N [d]) for every listed d
bool covering_property_check(const CategoryCover& c, const Rep& m, const Rep& n,
                             const std::vector<int>& degrees);

// Splits u: push_down(xt) -> push_down(mt) into graded components
// u = sum_g F(u_g) with u_g: xt -> translate(g, mt); zero components are
// omitted (the zero morphism decomposes as the empty map).  Throws
// VerificationFailure when the graded pieces are dependent or do not span --
// either way the covering property fails for this pair.
std::map<int, RepMorphism> homogeneous_decomposition(const CategoryCover& c,
                                                     const Rep& xt, const Rep& mt,
                                                     const RepMorphism& u);

// A base module together with a chosen lift: push_down(total) is isomorphic
// to base via `witness`, and `shift` records the cohomological position when
// the module travels inside a complex.
struct Lift {
    Rep base;
    Rep total;
    int shift = 0;
    RepMorphism witness;  // isomorphism push_down(total) -> base
};

// Result of straightening a column u_i: X -> M_i against chosen lifts: every
// rewritten entry is homogeneous of the recorded degree and comes with the
// upstairs morphism realizing it, and the whole rewrite is an invertible
// column operation on (+) M_i.
struct StraightenResult {
    std::vector<RepMorphism> entries;   // entry i: X -> M_i, homogeneous
    std::vector<int> degrees;           // degree of entry i (identity if zero)
    std::vector<RepMorphism> upstairs;  // lift of entry i: X~ -> (g_i) M~_i
    DirectSum sum;                      // (+)_i M_i used for assembly
    RepMorphism base_change;            // automorphism s of sum, new = old . s
};

// Rewrites the column until every entry is homogeneous.  Requires each M_i
// indecomposable and Hom_D(cone(u), M_i[1]) = 0 (over a hereditary base the
// cone splits as ker[1] (+) coker; otherwise the column must be injective).
// Each round solves the lowest-degree piece h of a mixed entry as
// h = lambda . u_1 + sum_j mu_j . u_j with lambda in the local algebra
// End(M_1): an invertible lambda replaces the entry by h, a nilpotent one
// subtracts h, and either way the number of graded pieces drops.  The cone
// isomorphism class is verified unchanged.
StraightenResult straighten(const CategoryCover& c, const Lift& x,
                            const std::vector<Lift>& targets,
                            const std::vector<RepMorphism>& column);

// Replays a mutation walk that starts at the regular representation: the
// projective summands lift to total projectives, and each recorded exchange
// is re-run upstairs by straightening its approximation column, summing the
// translated targets, and taking the cokernel.  Every lifted summand is
// verified indecomposable with push-down isomorphic to its base summand.
// Transcripts containing shift or co-cone steps are rejected: they cannot
// arise from a walk among modules.
std::vector<Lift> lift_summands(const CategoryCover& c, const Transcript& t);

// The same walk bundled into one lift of x, which must be isomorphic to the
// module the transcript ends at.
Lift lift_object(const CategoryCover& c, const Rep& x, const Transcript& t);

// A vertex-fixing algebra automorphism: each arrow maps to a combination of
// the arrows parallel to it, invertibly per parallel class, preserving the
// relations.
struct ArrowTwist {
    AlgebraPtr alg;
    // images[a] = sum of (arrow index, coefficient) over arrows parallel to a
    std::vector<std::vector<std::pair<int, Rational>>> images;
};
ArrowTwist make_twist(AlgebraPtr alg,
                      std::vector<std::vector<std::pair<int, Rational>>> images);

// M twisted along the automorphism: the matrix of arrow a in twist_rep(t, m)
// is the image combination evaluated in m (vertex spaces unchanged)
Rep twist_rep(const ArrowTwist& t, const Rep& m);

// every summand of x isomorphic to its own twist?
bool twist_fixes_summands(const ArrowTwist& t, const DObject& x);

// The covering induced on the endomorphism algebra of a tilting module T
// with chosen summand lifts: base vertices are the summands T_i, arrows are
// a graded basis of rad/rad^2 (a map T_i -> T_j travels along paths j ~> i),
// relations are the kernel of path evaluation, and the total quiver has one
// vertex per translate gT~_i with G acting by left translation.
struct EndCover {
    CategoryCover cover;
    std::vector<Rep> summands;                    // T_i, in lift order
    std::vector<std::vector<int>> object_vertex;  // [g][i] -> total vertex
};

// Builds the induced covering and verifies it end to end: tilting input,
// trivial stabilizers, graded hom bases matching the covering property,
// algebra dimension equal to dim End(T), the covering axioms on the result,
// connectivity, vanishing of ext between all translated lifts, projective
// dimension of the lifts at most one, and a two-term coresolution of every
// total projective inside add of the translated lifts.
EndCover induced_end_cover(const CategoryCover& c, const std::vector<Lift>& lifts);

}  // namespace tiltcover
