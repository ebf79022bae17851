#pragma once

// Exact univariate polynomial arithmetic over Q and complete rational
// factorization (squarefree split, Berlekamp mod a small prime, Hensel
// lifting to a Mignotte bound, subset recombination).  Degrees in this
// project stay small (minimal polynomials of endomorphisms of desk-scale
// modules); the implementation favors clarity over asymptotics.

#include "tiltcover/matrix.hpp"
#include "tiltcover/rational.hpp"

#include <utility>
#include <vector>

namespace tiltcover {

// coeffs[i] multiplies x^i; invariant: no trailing zero (zero poly = {})
using QPoly = std::vector<Rational>;

int poly_degree(const QPoly& f);
QPoly poly_normalize(QPoly f);
QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_scale(const QPoly& a, const Rational& s);
// division with remainder; b != 0
QPoly poly_divmod(const QPoly& a, const QPoly& b, QPoly* rem);
QPoly poly_derivative(const QPoly& a);
// monic gcd
QPoly poly_gcd(QPoly a, QPoly b);
// monic g = gcd(a, b) together with s, t such that s*a + t*b = g
QPoly poly_xgcd(const QPoly& a, const QPoly& b, QPoly* s, QPoly* t);
QPoly poly_monic(const QPoly& a);
Rational poly_eval(const QPoly& f, const Rational& x);
std::string poly_to_string(const QPoly& f);

// Monic irreducible factors with multiplicities, sorted by (degree,
// coefficient lex).  f must be nonzero.
std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& f);

// Monic minimal polynomial of a square matrix (first linear dependence among
// its powers, deterministic).
QPoly min_poly(const QMat& a);

// f(A) for a square matrix A
QMat poly_eval_matrix(const QPoly& f, const QMat& a);

}  // namespace tiltcover
