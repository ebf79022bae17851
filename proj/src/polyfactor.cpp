#include "tiltcover/polyfactor.hpp"

#include "tiltcover/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace tiltcover {

// ---------------------------------------------------------------------------
// rational polynomial arithmetic

int poly_degree(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

QPoly poly_normalize(QPoly f) {
    while (!f.empty() && is_zero(f.back())) f.pop_back();
    return f;
}

QPoly poly_add(const QPoly& a, const QPoly& b) {
    QPoly c(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return poly_normalize(std::move(c));
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly c(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return poly_normalize(std::move(c));
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return poly_normalize(std::move(c));
}

QPoly poly_scale(const QPoly& a, const Rational& s) {
    if (is_zero(s)) return {};
    QPoly c(a);
    for (auto& x : c) x *= s;
    return c;
}

QPoly poly_divmod(const QPoly& a, const QPoly& b, QPoly* rem) {
    assert(!b.empty());
    QPoly r = a, q;
    int db = poly_degree(b);
    if (poly_degree(a) >= db) q.assign(a.size() - b.size() + 1, Rational(0));
    while (poly_degree(r) >= db) {
        int k = poly_degree(r) - db;
        Rational c = r.back() / b.back();
        q[k] = c;
        for (int i = 0; i <= db; ++i) r[k + i] -= c * b[i];
        r = poly_normalize(std::move(r));
    }
    if (rem) *rem = r;
    return poly_normalize(std::move(q));
}

QPoly poly_derivative(const QPoly& a) {
    QPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Rational(static_cast<long>(i)));
    return poly_normalize(std::move(d));
}

QPoly poly_monic(const QPoly& a) {
    if (a.empty()) return a;
    return poly_scale(a, Rational(1) / a.back());
}

QPoly poly_gcd(QPoly a, QPoly b) {
    a = poly_normalize(std::move(a));
    b = poly_normalize(std::move(b));
    while (!b.empty()) {
        QPoly r;
        poly_divmod(a, b, &r);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

QPoly poly_xgcd(const QPoly& a, const QPoly& b, QPoly* s, QPoly* t) {
    QPoly r0 = poly_normalize(a), r1 = poly_normalize(b);
    QPoly s0 = {Rational(1)}, s1 = {};
    QPoly t0 = {}, t1 = {Rational(1)};
    while (!r1.empty()) {
        QPoly rem;
        QPoly quo = poly_divmod(r0, r1, &rem);
        r0 = std::move(r1);
        r1 = std::move(rem);
        QPoly s2 = poly_sub(s0, poly_mul(quo, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        QPoly t2 = poly_sub(t0, poly_mul(quo, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.empty()) {
        Rational lc = r0.back();
        r0 = poly_scale(r0, Rational(1) / lc);
        s0 = poly_scale(s0, Rational(1) / lc);
        t0 = poly_scale(t0, Rational(1) / lc);
    }
    if (s) *s = s0;
    if (t) *t = t0;
    return r0;
}

Rational poly_eval(const QPoly& f, const Rational& x) {
    Rational v(0);
    for (auto it = f.rbegin(); it != f.rend(); ++it) v = v * x + *it;
    return v;
}

std::string poly_to_string(const QPoly& f) {
    if (f.empty()) return "0";
    std::string s;
    for (int i = poly_degree(f); i >= 0; --i) {
        if (is_zero(f[i])) continue;
        if (!s.empty()) s += " + ";
        s += rat_to_string(f[i]);
        if (i > 0) s += "*x^" + std::to_string(i);
    }
    return s;
}

QMat poly_eval_matrix(const QPoly& f, const QMat& a) {
    assert(a.rows() == a.cols());
    QMat acc = QMat::zero(a.rows(), a.cols());
    QMat p = QMat::identity(a.rows());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!is_zero(f[i])) acc = acc + p.scaled(f[i]);
        if (i + 1 < f.size()) p = p * a;
    }
    return acc;
}

QPoly min_poly(const QMat& a) {
    assert(a.rows() == a.cols());
    int n = a.rows();
    if (n == 0) return {Rational(1)};  // minimal polynomial of the empty map: 1
    // flatten successive powers and look for the first linear dependence
    QMat powers(0, n * n);
    QMat p = QMat::identity(n);
    for (int k = 0;; ++k) {
        QMat flat(1, n * n);
        for (int i = 0; i < n; ++i)
            for (const auto& e : p.row(i)) flat.set(0, i * n + e.first, e.second);
        auto coeffs = solve_matrix(powers.transpose(), flat.transpose());
        if (coeffs) {
            QPoly m(k + 1, Rational(0));
            for (int i = 0; i < k; ++i) m[i] = -coeffs->get(i, 0);
            m[k] = Rational(1);
            return m;
        }
        powers = QMat::vstack(powers, flat);
        p = p * a;
        if (k > n) throw VerificationFailure("minimal polynomial not found below dimension bound");
    }
}

// ---------------------------------------------------------------------------
// integer polynomial layer for factorization

namespace {

using ZPoly = std::vector<mpz_class>;  // no trailing zeros

int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly znorm(ZPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return znorm(std::move(c));
}

mpz_class zcontent(const ZPoly& f) {
    mpz_class g = 0;
    for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// exact division test over Z: does b divide a?  quotient returned when yes
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly* quotient) {
    if (b.empty()) return a.empty();
    ZPoly r = a, q;
    if (zdeg(a) >= zdeg(b)) q.assign(a.size() - b.size() + 1, mpz_class(0));
    while (zdeg(r) >= zdeg(b)) {
        mpz_class c, rem;
        mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), b.back().get_mpz_t());
        if (rem != 0) return false;
        int k = zdeg(r) - zdeg(b);
        q[k] = c;
        for (int i = 0; i <= zdeg(b); ++i) r[k + i] -= c * b[i];
        r = znorm(std::move(r));
    }
    if (!r.empty()) return false;
    if (quotient) *quotient = znorm(std::move(q));
    return true;
}

ZPoly q_to_z_primitive(const QPoly& f, mpz_class* unit_den = nullptr) {
    mpz_class l(1);
    for (const auto& c : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly z;
    for (const auto& c : f) {
        mpq_class scaled = Rational(c) * Rational(l);
        assert(scaled.get_den() == 1);
        z.push_back(scaled.get_num());
    }
    z = znorm(std::move(z));
    mpz_class cont = zcontent(z);
    if (cont != 0)
        for (auto& c : z) c /= cont;
    if (unit_den) *unit_den = l;
    return z;
}

QPoly z_to_q(const ZPoly& f) {
    QPoly q;
    for (const auto& c : f) q.push_back(Rational(c));
    return poly_normalize(std::move(q));
}

// ---------------- arithmetic mod small prime p ----------------

using PPoly = std::vector<long>;  // coefficients in [0, p)

long pmod(long x, long p) { return ((x % p) + p) % p; }

long pinv(long a, long p) {
    long b = p, x0 = 1, x1 = 0;
    a = pmod(a, p);
    while (b) {
        long q = a / b, t = a - q * b;
        a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return pmod(x0, p);
}

PPoly pnorm(PPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

PPoly pmul(const PPoly& a, const PPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return pnorm(std::move(c));
}

PPoly pdivmod(const PPoly& a, const PPoly& b, long p, PPoly* rem) {
    PPoly r = a, q;
    int db = static_cast<int>(b.size()) - 1;
    long binv = pinv(b.back(), p);
    if (static_cast<int>(a.size()) - 1 >= db) q.assign(a.size() - b.size() + 1, 0);
    while (static_cast<int>(r.size()) - 1 >= db) {
        long c = r.back() * binv % p;
        int k = static_cast<int>(r.size()) - 1 - db;
        q[k] = c;
        for (int i = 0; i <= db; ++i) r[k + i] = pmod(r[k + i] - c * b[i], p);
        r = pnorm(std::move(r));
    }
    if (rem) *rem = r;
    return pnorm(std::move(q));
}

PPoly pgcd(PPoly a, PPoly b, long p) {
    a = pnorm(std::move(a));
    b = pnorm(std::move(b));
    while (!b.empty()) {
        PPoly r;
        pdivmod(a, b, p, &r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long inv = pinv(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

PPoly pmonic(PPoly f, long p) {
    if (f.empty()) return f;
    long inv = pinv(f.back(), p);
    for (auto& c : f) c = c * inv % p;
    return f;
}

PPoly ppow_mod(PPoly base, mpz_class e, const PPoly& mod, long p) {
    PPoly result{1};
    PPoly r;
    pdivmod(base, mod, p, &r);
    base = r;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            pdivmod(pmul(result, base, p), mod, p, &r);
            result = r;
        }
        pdivmod(pmul(base, base, p), mod, p, &r);
        base = r;
        e >>= 1;
    }
    return result;
}

// Berlekamp: monic squarefree f over F_p -> monic irreducible factors.
// The Frobenius-fixed subalgebra ker(Q - I) has one basis vector per
// irreducible factor; gcd(g, v - s) splits any reducible g for some basis v
// and shift s.
std::vector<PPoly> berlekamp(const PPoly& f, long p) {
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 1) return {pmonic(f, p)};
    // q[i] = coefficients of x^{ip} mod f, with the identity subtracted
    std::vector<std::vector<long>> q(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
        PPoly xi = ppow_mod(PPoly{0, 1}, mpz_class(static_cast<long>(i)) * p, f, p);
        for (std::size_t j = 0; j < xi.size(); ++j) q[i][j] = xi[j];
        q[i][i] = pmod(q[i][i] - 1, p);
    }
    // left kernel: vectors v with sum_i v_i q[i] = 0, via Gauss-Jordan with
    // identity bookkeeping
    std::vector<std::vector<long>> m = q;
    std::vector<std::vector<long>> id(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    std::vector<char> used(n, 0);
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int r = 0; r < n; ++r)
            if (!used[r] && m[r][col] % p != 0) { sel = r; break; }
        if (sel < 0) continue;
        used[sel] = 1;
        long inv = pinv(m[sel][col], p);
        for (int c = 0; c < n; ++c) {
            m[sel][c] = m[sel][c] * inv % p;
            id[sel][c] = id[sel][c] * inv % p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == sel || m[r][col] == 0) continue;
            long c0 = m[r][col];
            for (int c = 0; c < n; ++c) {
                m[r][c] = pmod(m[r][c] - c0 * m[sel][c], p);
                id[r][c] = pmod(id[r][c] - c0 * id[sel][c], p);
            }
        }
    }
    std::vector<std::vector<long>> basis;
    for (int r = 0; r < n; ++r) {
        bool zero = true;
        for (int c = 0; c < n; ++c)
            if (m[r][c] != 0) { zero = false; break; }
        if (zero) basis.push_back(id[r]);
    }
    int k = static_cast<int>(basis.size());  // number of irreducible factors

    std::vector<PPoly> factors{pmonic(f, p)};
    long guard = 0;
    while (static_cast<int>(factors.size()) < k) {
        if (++guard > 4 * static_cast<long>(k) * p + 64)
            throw VerificationFailure("Berlekamp splitting stalled");
        bool split = false;
        for (const auto& vraw : basis) {
            PPoly v = pnorm(PPoly(vraw.begin(), vraw.end()));
            if (static_cast<int>(v.size()) <= 1) continue;  // constants never split
            for (std::size_t gi = 0; gi < factors.size() && !split; ++gi) {
                const PPoly g = factors[gi];
                if (static_cast<int>(g.size()) <= 2) continue;  // linear
                for (long s = 0; s < p && !split; ++s) {
                    PPoly t = v;
                    t[0] = pmod(t[0] - s, p);
                    t = pnorm(std::move(t));
                    if (t.empty()) continue;
                    PPoly d = pgcd(g, t, p);
                    if (d.size() > 1 && d.size() < g.size()) {
                        PPoly quot = pdivmod(g, d, p, nullptr);
                        factors[gi] = pmonic(d, p);
                        factors.push_back(pmonic(quot, p));
                        split = true;
                    }
                }
            }
            if (split) break;
        }
        if (!split) throw VerificationFailure("Berlekamp failed to split a reducible factor");
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

// ---------------- Hensel lifting ----------------

// symmetric representative in (-m/2, m/2]
mpz_class symrep(const mpz_class& x, const mpz_class& m) {
    mpz_class r = x % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zmod_sym(const ZPoly& f, const mpz_class& m) {
    ZPoly r;
    for (const auto& c : f) r.push_back(symrep(c, m));
    return znorm(std::move(r));
}

// extended gcd over F_p for polynomials: s*a + t*b = 1
void p_bezout(const PPoly& a, const PPoly& b, long p, PPoly& s, PPoly& t) {
    PPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        PPoly r2, q = pdivmod(r0, r1, p, &r2);
        PPoly s2 = pnorm([&] {
            PPoly x = pmul(q, s1, p);
            PPoly y(std::max(s0.size(), x.size()), 0);
            for (std::size_t i = 0; i < s0.size(); ++i) y[i] = s0[i];
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = pmod(y[i] - x[i], p);
            return y;
        }());
        PPoly t2 = pnorm([&] {
            PPoly x = pmul(q, t1, p);
            PPoly y(std::max(t0.size(), x.size()), 0);
            for (std::size_t i = 0; i < t0.size(); ++i) y[i] = t0[i];
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = pmod(y[i] - x[i], p);
            return y;
        }());
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    // r0 = gcd (constant for coprime inputs); scale to 1
    assert(r0.size() == 1);
    long inv = pinv(r0[0], p);
    for (auto& c : s0) c = c * inv % p;
    for (auto& c : t0) c = c * inv % p;
    s = s0;
    t = t0;
}

ZPoly z_of_p(const PPoly& f) {
    ZPoly z;
    for (long c : f) z.push_back(mpz_class(c));
    return znorm(std::move(z));
}

ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
    return zmod_sym(zmul(a, b), m);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return znorm(std::move(c));
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return znorm(std::move(c));
}

// division with remainder mod m when divisor is monic
ZPoly zdivmod_monic_mod(const ZPoly& a, const ZPoly& b, const mpz_class& m, ZPoly* rem) {
    assert(!b.empty() && symrep(b.back(), m) == 1);
    ZPoly r = zmod_sym(a, m), q;
    int db = zdeg(b);
    if (zdeg(r) >= db) q.assign(r.size() - b.size() + 1, mpz_class(0));
    while (zdeg(r) >= db) {
        mpz_class c = r.back();
        int k = zdeg(r) - db;
        q[k] = c;
        for (int i = 0; i <= db; ++i) r[k + i] = symrep(r[k + i] - c * b[i], m);
        r = znorm(std::move(r));
    }
    if (rem) *rem = r;
    return znorm(std::move(q));
}

// Lift f = g0*h0 (mod p; f, g0 monic) to f = G*H (mod p^K) by linear Hensel
// steps.  With s*g0 + t*h0 = 1 (mod p), the correction at level m = p^j is
//   e = (f - G*H)/m,  dG = t*e mod g0,  dH = (e - dG*h0)/g0   (all mod p),
// which satisfies dG*h0 + dH*g0 = e (mod p) and keeps G monic.
void hensel_pair(const ZPoly& f, PPoly g0, PPoly h0, long p, const mpz_class& pK,
                 ZPoly& G, ZPoly& H) {
    PPoly s0, t0;
    p_bezout(g0, h0, p, s0, t0);
    G = z_of_p(g0);
    H = z_of_p(h0);
    mpz_class m(p);
    while (m < pK) {
        ZPoly e = zsub(f, zmul(G, H));
        for (auto& c : e) c /= m;  // exact: f = G*H (mod m)
        ZPoly ep = zmod_sym(e, mpz_class(p));
        ZPoly te = zmod_sym(zmul(z_of_p(t0), ep), mpz_class(p));
        ZPoly dG;
        zdivmod_monic_mod(te, z_of_p(g0), mpz_class(p), &dG);
        ZPoly num = zmod_sym(zsub(ep, zmul(dG, z_of_p(h0))), mpz_class(p));
        ZPoly dH = zdivmod_monic_mod(num, z_of_p(g0), mpz_class(p), nullptr);
        for (auto& c : dG) c *= m;
        for (auto& c : dH) c *= m;
        m *= p;
        G = zmod_sym(zadd(G, dG), m);
        H = zmod_sym(zadd(H, dH), m);
    }
    G = zmod_sym(G, pK);
    H = zmod_sym(H, pK);
    if (!zmod_sym(zsub(f, zmul(G, H)), pK).empty())
        throw VerificationFailure("Hensel lifting failed to converge");
}

// lift a full modular factorization of monic f to mod p^K (recursive splitting)
void hensel_tree(const ZPoly& f, const std::vector<PPoly>& facs, long p, const mpz_class& pK,
                 std::vector<ZPoly>& out) {
    if (facs.size() == 1) {
        out.push_back(zmod_sym(f, pK));
        return;
    }
    std::size_t half = facs.size() / 2;
    PPoly g0{1}, h0{1};
    for (std::size_t i = 0; i < half; ++i) g0 = pmul(g0, facs[i], p);
    for (std::size_t i = half; i < facs.size(); ++i) h0 = pmul(h0, facs[i], p);
    ZPoly G, H;
    hensel_pair(f, g0, h0, p, pK, G, H);
    hensel_tree(G, std::vector<PPoly>(facs.begin(), facs.begin() + half), p, pK, out);
    hensel_tree(H, std::vector<PPoly>(facs.begin() + half, facs.end()), p, pK, out);
}

// ---------------- Zassenhaus recombination ----------------

mpz_class mignotte_bound(const ZPoly& f) {
    mpz_class norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    mpz_class s = sqrt(norm2) + 1;
    mpz_class b = s * abs(f.back());
    mpz_class two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(zdeg(f) + 1));
    return b * two_n;
}

// factor a primitive squarefree integer polynomial, deg >= 1
std::vector<ZPoly> factor_squarefree_z(ZPoly f) {
    std::vector<ZPoly> out;
    if (zdeg(f) == 1) {
        out.push_back(f);
        return out;
    }
    // pick a prime where f stays squarefree and the leading coefficient survives
    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
                                  101, 103, 107, 109, 113, 127, 131, 137, 139, 149};
    long p = 0;
    PPoly fp;
    for (long cand : primes) {
        if (mpz_fdiv_ui(f.back().get_mpz_t(), cand) == 0) continue;
        PPoly g;
        for (const auto& c : f) g.push_back(static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), cand)));
        g = pnorm(std::move(g));
        PPoly d;
        for (std::size_t i = 1; i < g.size(); ++i) d.push_back(static_cast<long>(i) % cand * g[i] % cand);
        d = pnorm(std::move(d));
        if (d.empty()) continue;
        if (pgcd(g, d, cand).size() == 1) {
            p = cand;
            fp = pmonic(g, cand);
            break;
        }
    }
    if (p == 0) throw VerificationFailure("no squarefree prime found for factorization");

    std::vector<PPoly> mod_factors = berlekamp(fp, p);
    if (mod_factors.size() == 1) {
        out.push_back(f);
        return out;
    }

    // lift the monic associate lc*f(x) ... standard trick: work with monic
    // F(x) = lc^{n-1} f(x/lc) to keep factors monic, or carry lc in candidates.
    // Here: lift factorization of f directly with leading coefficient attached
    // to the last factor via monic products and test candidates with content.
    mpz_class bound = 2 * mignotte_bound(f) + 1;
    mpz_class pK(p);
    while (pK < bound) pK *= p;

    // make f monic mod p^K by multiplying with lc^{-1}: instead lift the monic
    // reduction of f scaled by inverse of lc mod p^K
    mpz_class lc = f.back();
    mpz_class lcinv;
    mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), pK.get_mpz_t());
    ZPoly fmonic;
    for (const auto& c : f) fmonic.push_back(symrep(c * lcinv, pK));
    fmonic = znorm(std::move(fmonic));
    assert(symrep(fmonic.back(), pK) == 1);

    std::vector<ZPoly> lifted;
    hensel_tree(fmonic, mod_factors, p, pK, lifted);

    // subset recombination on the lifted monic factors
    std::vector<int> alive(lifted.size());
    for (std::size_t i = 0; i < lifted.size(); ++i) alive[i] = static_cast<int>(i);
    ZPoly remaining = f;
    int max_subset = static_cast<int>(lifted.size());
    for (int take = 1; take <= max_subset; ++take) {
        if (2 * take > static_cast<int>(alive.size())) break;
        bool found = true;
        while (found && 2 * take <= static_cast<int>(alive.size())) {
            found = false;
            // iterate subsets of `alive` of size `take` in lex order
            std::vector<int> sel(take);
            for (int i = 0; i < take; ++i) sel[i] = i;
            while (true) {
                // candidate = lc * prod(lifted[alive[sel]]) mod p^K, primitive part
                ZPoly cand{lc};
                for (int i = 0; i < take; ++i) cand = zmul_mod(cand, lifted[alive[sel[i]]], pK);
                cand = zmod_sym(cand, pK);
                mpz_class cont = zcontent(cand);
                if (cont != 0)
                    for (auto& c : cand) c /= cont;
                ZPoly q;
                if (zdeg(cand) >= 1 && zdivides(remaining, cand, &q)) {
                    out.push_back(cand);
                    remaining = q;
                    lc = remaining.back();
                    std::vector<int> rest;
                    for (int i = 0, j = 0; i < static_cast<int>(alive.size()); ++i) {
                        if (j < take && sel[j] == i) { ++j; continue; }
                        rest.push_back(alive[i]);
                    }
                    alive = rest;
                    found = true;
                    break;
                }
                // next subset
                int i = take - 1;
                while (i >= 0 && sel[i] == static_cast<int>(alive.size()) - take + i) --i;
                if (i < 0) break;
                ++sel[i];
                for (int j = i + 1; j < take; ++j) sel[j] = sel[j - 1] + 1;
            }
        }
    }
    if (zdeg(remaining) >= 1) out.push_back(remaining);
    return out;
}

}  // namespace

std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& fin) {
    QPoly f = poly_normalize(fin);
    if (f.empty()) throw InvalidInput("cannot factor the zero polynomial");
    std::vector<std::pair<QPoly, int>> result;
    if (poly_degree(f) == 0) return result;

    // Yun's squarefree decomposition over Q
    QPoly g = poly_monic(f);
    QPoly gp = poly_derivative(g);
    QPoly a = poly_gcd(g, gp);
    QPoly b = poly_divmod(g, a, nullptr);
    QPoly c = poly_divmod(gp, a, nullptr);
    QPoly d = poly_sub(c, poly_derivative(b));
    for (int i = 1; poly_degree(b) > 0; ++i) {
        QPoly pi = poly_gcd(b, d);
        if (poly_degree(pi) > 0) {
            // factor the squarefree piece over Z
            ZPoly z = q_to_z_primitive(pi);
            for (const ZPoly& zf : factor_squarefree_z(z))
                result.push_back({poly_monic(z_to_q(zf)), i});
        }
        b = poly_divmod(b, pi, nullptr);
        c = poly_divmod(d, pi, nullptr);
        d = poly_sub(c, poly_derivative(b));
    }

    std::sort(result.begin(), result.end(), [](const auto& x, const auto& y) {
        if (poly_degree(x.first) != poly_degree(y.first))
            return poly_degree(x.first) < poly_degree(y.first);
        for (int i = poly_degree(x.first); i >= 0; --i) {
            if (x.first[i] != y.first[i]) return x.first[i] < y.first[i];
        }
        return x.second < y.second;
    });

    // certify: product of factors with multiplicities reproduces monic f
    QPoly check{Rational(1)};
    for (const auto& [p, m] : result)
        for (int i = 0; i < m; ++i) check = poly_mul(check, p);
    if (check != poly_monic(f))
        throw VerificationFailure("factorization product check failed");
    return result;
}

}  // namespace tiltcover
