#pragma once

// Hochschild cohomology in low degrees for bound quiver algebras, and the
// simple-connectedness verdict it supports.
//
// HH^0 and HH^1 are computed from the Hochschild complex relative to the
// semisimple subalgebra E spanned by the vertex idempotents.  Writing
// A = E + rad A, the relative cochains in degree n are E-bimodule maps
// (rad A)^(tensor n over E) -> A, so the spaces are indexed by parallel
// pairs of basis paths instead of tensor powers of all of A; since E is
// separable, the relative cohomology agrees with the absolute one.  The
// complex is truncated after degree two, which is all HH^1 needs:
//
//   C^0 = sum_v e_v A e_v,    (d a)(p)     = p a - a p
//   C^1 = E-maps rad A -> A,  (d f)(p, q)  = p f(q) - f(pq) + f(p) q
//
// Dimensions are computed over the rationals; they agree with the counts
// over any characteristic-zero field because they are coranks of rational
// linear systems.  For algebras of dimension at most eight the result is
// cross-checked against the full bar complex (derivations modulo inner
// derivations), computed without any grading shortcut.

#include "tiltcover/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tiltcover {

inline constexpr int kDefaultHHCap = 40;

// dim HH^n(A) for n in {0, 1}.  Throws CapExceeded when dim A exceeds the
// cap (cap <= 0 disables the limit) and InvalidInput for other degrees.
int hh_dim(const AlgebraPtr& alg, int n, int cap = kDefaultHHCap);

// The closed form for dim HH^1 of a squid: 1 when t = 2, 0 when t >= 3.
// For non-degenerate parameters within the dimension cap the value is
// checked against hh_dim on the constructed algebra, and a mismatch is a
// hard failure.  Degenerate parameters drop arms, so the collapsed algebra
// no longer carries the t-armed structure the closed form describes; the
// value is returned without the cross-check.
int squid_hh1(int t, const std::vector<int>& arm_lengths,
              const std::vector<Rational>& tau);

struct HHReport {
    std::string algebra_id;
    int hh0 = 0;
    int hh1 = 0;
    std::optional<int> pi1_rank;    // hereditary only: first Betti number of Q
    std::optional<bool> is_tree;    // hereditary only
    bool simply_connected = false;  // the verdict: hh1 == 0
    std::vector<std::string> methods;
};

// Assembles hh0/hh1 and the vanishing verdict for an algebra in the
// certified scope: hereditary algebras, squid algebras (recognized
// structurally, degenerate ones included), and endomorphism algebras of
// lifted tilting modules -- the last cannot be recognized from the algebra
// alone, so callers assert it with end_context.  Anything else is refused.
// For hereditary algebras the report adds the rank of the fundamental group
// of the underlying graph and asserts that it vanishes exactly when HH^1
// does; for any connected algebra it asserts hh0 = 1.
HHReport simple_connectedness_report(const AlgebraPtr& alg,
                                     const std::string& algebra_id = "algebra",
                                     bool end_context = false,
                                     int cap = kDefaultHHCap);

}  // namespace tiltcover
