#pragma once

// Finite-dimensional representations of a bound quiver algebra over Q.
//
// A representation M assigns to each vertex v a space of row vectors of
// dimension dims[v] and to each arrow a: s -> t a dims[s] x dims[t] matrix
// acting on the right, so a path evaluates to the product of its arrow
// matrices in traversal order.  A morphism f: M -> N carries one
// dims_M(v) x dims_N(v) matrix per vertex, subject to the commuting squares
//     M_a * f_t = f_s * N_a          for every arrow a: s -> t.
//
// Everything is exact rational linear algebra; all returned bases and lists
// are deterministic.

#include "tiltcover/algebra.hpp"
#include "tiltcover/matrix.hpp"

#include <optional>
#include <vector>

namespace tiltcover {

struct Rep {
    AlgebraPtr alg;
    std::vector<int> dims;   // by vertex
    std::vector<QMat> maps;  // by arrow, shape dims[src] x dims[tgt]

    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    // shape consistency + every relation of the algebra evaluates to zero
    void validate() const;
};

bool same_algebra(const Rep& a, const Rep& b);

// product of the arrow matrices along p (identity for a trivial path)
QMat path_eval(const Rep& m, const Path& p);

Rep zero_rep(AlgebraPtr alg);
Rep simple_rep(AlgebraPtr alg, int v);
// indecomposable projective P_v: P_v(w) is spanned by pair_basis(v, w)
Rep projective_rep(AlgebraPtr alg, int v);
Rep rep_from_maps(AlgebraPtr alg, std::vector<int> dims, std::vector<QMat> maps);

// deterministic total order: dimension vector lex, then matrix entries lex
bool rep_less(const Rep& a, const Rep& b);

struct RepMorphism {
    Rep source, target;
    std::vector<QMat> mats;  // by vertex, dims_M(v) x dims_N(v)

    void validate() const;  // shapes + commuting squares
    bool is_zero() const;
};

RepMorphism identity_morphism(const Rep& m);
RepMorphism zero_morphism(const Rep& m, const Rep& n);
RepMorphism morphism_from_mats(const Rep& m, const Rep& n, std::vector<QMat> mats);
// f followed by g (mats multiply as f_v * g_v)
RepMorphism compose(const RepMorphism& f, const RepMorphism& g);
RepMorphism morphism_combo(const std::vector<RepMorphism>& basis,
                           const std::vector<Rational>& coeffs);
bool is_invertible(const RepMorphism& f);
RepMorphism invert(const RepMorphism& f);

// basis of Hom(M, N) as the kernel of the commuting-square system,
// deterministic order
std::vector<RepMorphism> hom_basis(const Rep& m, const Rep& n);
int hom_dim(const Rep& m, const Rep& n);

struct DirectSum {
    Rep rep;
    std::vector<RepMorphism> inclusions;   // part i -> rep
    std::vector<RepMorphism> projections;  // rep -> part i
};
DirectSum direct_sum(const std::vector<Rep>& parts);

// A subrepresentation (map = inclusion) or quotient (map = projection).
struct SubQuot {
    Rep rep;
    RepMorphism map;
};

// subrepresentation spanned vertexwise by the rows of gens[v] (not
// necessarily independent); VerificationFailure if the span is not invariant
SubQuot sub_rep(const Rep& m, const std::vector<QMat>& gens);
// quotient of m by the subrepresentation the rows span
SubQuot quotient_rep(const Rep& m, const std::vector<QMat>& gens);
SubQuot kernel_rep(const RepMorphism& f);    // map: ker -> source
SubQuot image_rep(const RepMorphism& f);     // map: im -> target
SubQuot cokernel_rep(const RepMorphism& f);  // map: target -> coker

// dimensions of top(M) = M / (sum of arrow images)
std::vector<int> top_dims(const Rep& m);

struct ProjCover {
    Rep proj;          // direct sum of indecomposable projectives
    RepMorphism onto;  // proj -> m, surjective with superfluous kernel
};
ProjCover projective_cover(const Rep& m);

struct Resolution {
    std::vector<Rep> projectives;   // P_0, P_1, ...
    std::vector<RepMorphism> maps;  // maps[0]: P_0 -> M, maps[i]: P_i -> P_{i-1}
    int length() const { return static_cast<int>(projectives.size()) - 1; }
};

// minimal projective resolution via iterated projective covers; throws
// CapExceeded("resolution exceeds cap") when it does not terminate in cap
// steps
Resolution projective_resolution(const Rep& m, int cap);
std::optional<int> pd_at_most(const Rep& m, int cap);

// first resolution step bundled: cover P_0 -> M and syzygy Omega M -> P_0
struct SyzygyData {
    ProjCover cover;
    SubQuot omega;
};
SyzygyData syzygy(const Rep& m);

// rad End(M) in coordinates of the given End(M) basis: the kernel rows of
// the trace pairing <x, y> = tr(xy), which cuts out exactly the nilpotent
// ideal in characteristic zero
QMat radical_coords(const std::vector<RepMorphism>& end_basis);

// stack vec(f) per morphism into rows of width hom_flat_width(source, target)
// for exact rank and span computations; the width is passed explicitly so an
// empty list still gets the right shape
QMat flatten_morphisms(const std::vector<RepMorphism>& fs, int width);
int hom_flat_width(const Rep& m, const Rep& n);

// solve h . pi = f; exists whenever f.source is projective and pi is onto,
// otherwise VerificationFailure
RepMorphism lift_through(const RepMorphism& f, const RepMorphism& pi);

// naturality of the two-term resolution: given g: M -> N, on_cover lifts g
// to P_0(M) -> P_0(N) and on_syzygy is the restriction Omega M -> Omega N
struct ResLift {
    RepMorphism on_cover, on_syzygy;
};
ResLift lift_to_resolutions(const RepMorphism& g, const SyzygyData& src, const SyzygyData& tgt);

// dim coker( Hom(P_0, N) -> Hom(Omega M, N) ) from the minimal resolution
int ext1_dim(const Rep& m, const Rep& n);
// cocycle representatives Omega M -> N of a basis of Ext^1(M, N)
std::vector<RepMorphism> ext1_cocycles(const SyzygyData& sy, const Rep& n);

struct ShortExact {
    RepMorphism inc;   // N -> E
    RepMorphism proj;  // E -> M
};
// realize a cocycle c: Omega M -> N as 0 -> N -> E -> M -> 0 (pushout of the
// syzygy inclusion along c)
ShortExact extension_of(const SyzygyData& sy, const Rep& n, const RepMorphism& cocycle);
void verify_exact(const ShortExact& s);  // VerificationFailure when not exact

// true iff End(M) is local with End/rad = Q; false comes with a constructed
// splitting; a division ring bigger than Q raises NonSplitError
bool is_indecomposable(const Rep& m);
// indecomposable summands with multiplicity (repeated entries), sorted by
// rep_less; the splitting is verified at every step
std::vector<Rep> decompose(const Rep& m);

// decomposition remembering how the parts sit inside m: inclusions[i] embeds
// parts[i], and the stacked inclusions are an isomorphism (+) parts -> m
struct Decomposition {
    std::vector<Rep> parts;
    std::vector<RepMorphism> inclusions;
};
Decomposition decompose_with_maps(const Rep& m);
// bounded search for an invertible element in the span of hom_basis(m, n);
// the witness, when one is found
std::optional<RepMorphism> find_isomorphism(const Rep& m, const Rep& n);
bool is_isomorphic(const Rep& m, const Rep& n);
// trace of T in X: the subrepresentation sum of images of all maps T -> X
Rep trace_in(const Rep& t, const Rep& x);

struct Enumeration {
    std::vector<Rep> reps;  // one representative per class found, rep_less order
    std::vector<std::vector<int>> families;  // dim vectors carrying 1-parameter families
};

// Indecomposables of total dimension <= dim_cap.  For a hereditary algebra
// the search is guided by the Tits form (real roots get representatives,
// isotropic/negative vectors are reported as families); for Dynkin quivers
// the count is cross-checked against the positive roots and a mismatch
// raises VerificationFailure("enumeration incomplete").  For bound algebras
// the list is a certified best effort (simples, projective summands,
// syzygies and extension closures) with no completeness claim.
Enumeration enumerate_indecomposables(const AlgebraPtr& alg, int dim_cap);

// Tits form q(d) = sum d_v^2 - sum_a d_{s(a)} d_{t(a)} of a hereditary algebra
Rational tits_form(const Quiver& q, const std::vector<int>& d);

}  // namespace tiltcover
