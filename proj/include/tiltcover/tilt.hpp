#pragma once

// Minimal approximations, the two elementary transformations on split
// derived objects, the reduction to a tilting module, tilting-module tests,
// mutation, and the oriented graph of tilting modules.
//
// r(X) counts the summands above the minimal shift; it vanishes exactly when
// X is a shifted module.  A transformation of the first kind rewrites the
// shift pattern without changing the summand set; one of the second kind
// exchanges a single summand M against the co-cone M* of its right minimal
// approximation and strictly decreases r.  Alternating the two reduces any
// object of the tilting class to an honest tilting module, and every step
// is recorded in a replayable transcript.

#include "tiltcover/derived.hpp"

#include <optional>

namespace tiltcover {

// add(T): all direct sums of copies of the generators, closed under summands
struct AddSubcat {
    std::vector<Rep> gens;  // indecomposable, pairwise non-isomorphic, sorted
};
// decomposes the inputs, drops duplicates up to isomorphism, sorts
AddSubcat add_subcat(const std::vector<Rep>& modules);
bool in_add(const AddSubcat& sub, const Rep& m);

// approximation of m by the subcategory: map points b -> m for the right
// version and m -> b for the left one.  Built from the full evaluation sum,
// reduced greedily in canonical order, and certified minimal: the
// annihilator of the map in End(b) must lie in rad End(b).
struct Approximation {
    Rep b;
    RepMorphism map;
};
Approximation right_min_approx(const Rep& m, const AddSubcat& sub);
Approximation left_min_approx(const Rep& m, const AddSubcat& sub);

// One rewrite towards "Hom(bottom slice, next slice [1]) != 0": drops an
// empty slice above the bottom, or merges the next slice down when no
// degree-0 morphism obstructs.  nullopt when neither rewrite applies (the
// object is a module, or already obstructed).  r never increases.
std::optional<DObject> first_kind_step(const DObject& t);

// One exchange: the canonically minimal admissible summand M one shift above
// the bottom is replaced by M* = cone(B -> M)[-1] for the right minimal
// approximation B -> M from the rest.  r strictly decreases (verified).
struct ExchangeData {
    DObject result;
    DSummand removed;   // M, one shift above the bottom
    DSummand inserted;  // M*, at the bottom shift
    DMorphism approx;   // right minimal approximation B -> M (degree-1 blocks)
};
ExchangeData second_kind_exchange(const DObject& t);
DObject second_kind_step(const DObject& t);

enum class StepKind { First, Second, Mutation };
struct TransStep {
    StepKind kind;
    DObject before, after;
    // Second: right minimal approximation B -> M, degree-1 blocks.
    // Mutation: left minimal approximation X -> B, degree-0 blocks.
    std::optional<ExchangeData> exchange;
};
struct Transcript {
    DObject start, end;
    std::vector<TransStep> steps;
};
// re-runs every step deterministically; true iff each recorded object is
// reproduced up to isomorphism, ending at the recorded end
bool replay_transcript(const Transcript& tr);

struct ReductionResult {
    Rep tilting;  // the end object, de-shifted into a module
    int shift;    // the bottom shift it was sitting at
    Transcript transcript;
};
// alternates first-kind rewrites and second-kind exchanges until r = 0;
// bounded by n * (initial shift spread + 1) steps
ReductionResult reduce_to_tilting(const DObject& t);

// multiplicity-free, pd <= 1, no self-extensions, and every indecomposable
// projective embeds into add(T) with cokernel in add(T) (the witness exact
// sequence is computed, not just asserted); hereditary inputs cross-check
// the summand-count shortcut
bool is_tilting_module(const Rep& t);

// exchange of the k-th canonical summand X against coker of its left minimal
// approximation, when that approximation is injective and the result is
// again tilting; the dual approximation property of the exchange sequence is
// verified independently
std::optional<Rep> module_mutation(const Rep& t, int k);

// the same exchange recorded as a replayable step with the tilting module
// placed at `shift`: before/after objects, the removed and inserted
// summands, and the approximation column 0 -> X -> B -> X* -> 0 as a
// degree-0 DMorphism.  nullopt exactly when module_mutation declines.
std::optional<TransStep> mutation_step(const Rep& t, int k, int shift = 0);

// successive recorded mutations starting at the regular representation
// (the sum of all indecomposable projectives); throws InvalidInput when a
// requested exchange is not defined
Transcript mutation_walk(const AlgebraPtr& alg, const std::vector<int>& ks);

// T <= U in the Fac order: every summand of T is generated by U
bool fac_leq(const Rep& t, const Rep& u);

struct TiltingHasse {
    std::vector<Rep> modules;                // all tilting modules, discovery order
    std::vector<std::pair<int, int>> edges;  // covers, larger Fac -> smaller Fac
    bool connected;                          // of the underlying undirected graph
};
// brute force over n-subsets of the enumerated indecomposables; refuses
// algebras whose enumeration under the cap hits an infinite family
TiltingHasse tilting_hasse(const AlgebraPtr& alg, int dim_cap);

}  // namespace tiltcover
