#pragma once

// Exact scalar types: arbitrary-precision rationals (GMP) as the authoritative
// field, plus a fixed word-size prime field used only as a fast rank prefilter.
// Every prefilter answer is confirmed rationally before it is trusted.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tiltcover {

using Rational = mpq_class;

inline Rational rat_of_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + s);
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Z/p with p > 2^20 so that small integer matrix entries are never silently
// annihilated.  Used for rank screening; never the source of a final answer.
struct Fp {
    static constexpr std::int64_t p = 1048583;  // prime, > 2^20
    std::int64_t v = 0;

    Fp() = default;
    explicit Fp(std::int64_t x) : v(((x % p) + p) % p) {}

    static Fp from_rational(const Rational& q) {
        mpz_class num = q.get_num(), den = q.get_den();
        std::int64_t n = mpz_fdiv_ui(num.get_mpz_t(), p);
        std::int64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
        if (d == 0) throw std::domain_error("denominator divisible by filter prime");
        return Fp(n) / Fp(d);
    }

    friend Fp operator+(Fp a, Fp b) { return Fp(a.v + b.v); }
    friend Fp operator-(Fp a, Fp b) { return Fp(a.v - b.v + p); }
    friend Fp operator*(Fp a, Fp b) {
        return Fp(static_cast<std::int64_t>((__int128)a.v * b.v % p));
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

    bool is_zero() const { return v == 0; }

    Fp inv() const {
        if (v == 0) throw std::domain_error("inverse of 0 in F_p");
        // extended Euclid
        std::int64_t a = v, b = p, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return Fp(x0);
    }
};

// Deterministic xorshift64* stream; all "random" choices in the library are
// drawn from fixed seeds so every run is bit-reproducible.
struct SplitRng {
    std::uint64_t s;
    explicit SplitRng(std::uint64_t seed) : s(seed ? seed : 0x9E3779B97F4A7C15ull) {}
    std::uint64_t next() {
        s ^= s >> 12; s ^= s << 25; s ^= s >> 27;
        return s * 0x2545F4914F6CDD1Dull;
    }
    // uniform in [lo, hi] inclusive
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

}  // namespace tiltcover
