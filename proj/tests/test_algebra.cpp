#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tiltcover/algebra.hpp"
#include "tiltcover/errors.hpp"

#include "helpers.hpp"

using namespace tiltcover;

namespace {

Path pth(const Quiver& q, const std::vector<std::string>& arrow_names) {
    std::vector<int> idx;
    for (const auto& n : arrow_names) idx.push_back(q.arrow_index(n));
    return path_from_arrows(q, idx);
}

Relation rel(const Quiver& q, const std::vector<std::vector<std::string>>& monos,
             const std::vector<long> coeffs) {
    Relation r;
    for (const auto& m : monos) r.paths.push_back(pth(q, m));
    for (long c : coeffs) r.coeffs.push_back(Rational(c));
    return r;
}

}  // namespace

TEST_CASE("path algebras of small acyclic quivers") {
    Algebra a2 = Algebra::path_algebra(th::a2());
    CHECK(a2.dim() == 3);  // e1, e2, a
    CHECK(a2.is_hereditary());
    CHECK(a2.nilpotency_bound() == 0);

    Algebra a3 = Algebra::path_algebra(th::a3());
    CHECK(a3.dim() == 6);  // e1, e2, e3, a, b, ab
    CHECK(a3.pair_dim(0, 2) == 1);
    CHECK(a3.pair_dim(2, 0) == 0);
    CHECK(a3.pair_dim(0, 0) == 1);

    Algebra kr = Algebra::path_algebra(th::kronecker());
    CHECK(kr.dim() == 4);
    CHECK(kr.pair_dim(0, 1) == 2);
}

TEST_CASE("identity element and basic products") {
    Quiver q = th::a3();
    Algebra a = Algebra::path_algebra(q);

    Algebra::Lin one;
    for (int v = 0; v < a.vertex_count(); ++v)
        one = a.add(one, {{a.idempotent_index(v), Rational(1)}});

    Algebra::Lin xa = {{a.arrow_basis_index(q.arrow_index("a")), Rational(1)}};
    Algebra::Lin xb = {{a.arrow_basis_index(q.arrow_index("b")), Rational(1)}};

    CHECK(a.mul(one, xa) == xa);
    CHECK(a.mul(xa, one) == xa);

    // a then b composes; b then a does not
    Algebra::Lin ab = a.mul(xa, xb);
    REQUIRE(ab.size() == 1);
    CHECK(a.basis_path(ab[0].first) == pth(q, {"a", "b"}));
    CHECK(a.lin_is_zero(a.mul(xb, xa)));

    // e1 * a = a = a * e2, e2 * a = 0
    Algebra::Lin e1 = {{a.idempotent_index(0), Rational(1)}};
    Algebra::Lin e2 = {{a.idempotent_index(1), Rational(1)}};
    CHECK(a.mul(e1, xa) == xa);
    CHECK(a.mul(xa, e2) == xa);
    CHECK(a.lin_is_zero(a.mul(e2, xa)));
}

TEST_CASE("commutative square: one relation cuts the far corner to one path") {
    Quiver q = th::make_quiver({"1", "2", "3", "4"},
                               {{"a", "1", "2"}, {"c", "2", "4"}, {"b", "1", "3"}, {"d", "3", "4"}});
    Relation r = rel(q, {{"a", "c"}, {"b", "d"}}, {1, -1});
    Algebra alg = Algebra::bound_quiver_algebra(q, {r});
    CHECK(alg.dim() == 9);  // 4 + 4 + 1
    CHECK(alg.pair_dim(q.vertex_index("1"), q.vertex_index("4")) == 1);
    CHECK_FALSE(alg.is_hereditary());

    // both diagonals have the same normal form
    Algebra::Lin ac = alg.normal_form(pth(q, {"a", "c"}));
    Algebra::Lin bd = alg.normal_form(pth(q, {"b", "d"}));
    REQUIRE(ac.size() == 1);
    CHECK(ac == bd);
}

TEST_CASE("non-homogeneous relation on an acyclic quiver is handled exactly") {
    // chain 1 -> 2 -> 3 -> 4 plus shortcut 1 -> 3; relation abc = dc
    Quiver q = th::make_quiver({"1", "2", "3", "4"},
                               {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "4"}, {"d", "1", "3"}});
    Relation r = rel(q, {{"a", "b", "c"}, {"d", "c"}}, {1, -1});
    Algebra alg = Algebra::bound_quiver_algebra(q, {r});
    CHECK(alg.dim() == 11);  // 4 idempotents + 4 arrows + {ab, bc, dc}; abc rewritten
    Algebra::Lin nf = alg.normal_form(pth(q, {"a", "b", "c"}));
    REQUIRE(nf.size() == 1);
    CHECK(alg.basis_path(nf[0].first) == pth(q, {"d", "c"}));
    CHECK(nf[0].second == Rational(1));
}

TEST_CASE("squid algebras match the frozen dimension table") {
    // dimensions frozen from tools/oracles/squid_dim.py
    SquidResult s22 = squid(2, {1, 1}, {});
    CHECK(s22.algebra.dim() == 10);
    CHECK_FALSE(s22.degenerate);

    SquidResult s31 = squid(3, {1, 1, 1}, {Rational(5)});
    CHECK(s31.algebra.dim() == 13);

    SquidResult s32 = squid(3, {2, 1, 1}, {Rational(2)});
    CHECK(s32.algebra.dim() == 17);

    SquidResult s4 = squid(4, {1, 1, 1, 1}, {Rational(2), Rational(3)});
    CHECK(s4.algebra.dim() == 16);

    SquidResult s33 = squid(3, {2, 2, 1}, {Rational(7)});
    CHECK(s33.algebra.dim() == 21);
}

TEST_CASE("squid with empty arms degenerates to the Kronecker algebra") {
    SquidResult s = squid(2, {0, 0}, {});
    CHECK(s.degenerate);
    CHECK(s.algebra.dim() == 4);
    CHECK(s.algebra.is_hereditary());
    CHECK(s.algebra.arrow_count() == 2);
}

TEST_CASE("squid head-to-arm spaces: six products cut to three") {
    SquidResult s = squid(3, {1, 1, 1}, {Rational(5)});
    const Quiver& q = s.algebra.quiver;
    int v1 = q.vertex_index("1");
    int total = 0;
    for (const std::string& arm : {"1.1", "2.1", "3.1"})
        total += s.algebra.pair_dim(v1, q.vertex_index(arm));
    CHECK(total == 3);

    // a2 b3 = 5 * a1 b3: the two head paths into arm 3 are proportional
    Algebra::Lin p13 = s.algebra.normal_form(pth(q, {"a1", "b3"}));
    Algebra::Lin p23 = s.algebra.normal_form(pth(q, {"a2", "b3"}));
    CHECK(s.algebra.scale(p13, Rational(5)) == p23);
    // while a1 b1 and a2 b2 vanish outright
    CHECK(s.algebra.lin_is_zero(s.algebra.normal_form(pth(q, {"a1", "b1"}))));
    CHECK(s.algebra.lin_is_zero(s.algebra.normal_form(pth(q, {"a2", "b2"}))));
    CHECK_FALSE(s.algebra.lin_is_zero(s.algebra.normal_form(pth(q, {"a2", "b1"}))));
}

TEST_CASE("squid input validation") {
    CHECK_THROWS_AS(squid(1, {1}, {}), InvalidInput);
    CHECK_THROWS_AS(squid(3, {1, 1}, {Rational(1)}), InvalidInput);
    CHECK_THROWS_AS(squid(3, {1, 1, 1}, {}), InvalidInput);
    CHECK_THROWS_AS(squid(3, {1, 1, 1}, {Rational(0)}), InvalidInput);
    CHECK_THROWS_AS(squid(4, {1, 1, 1, 1}, {Rational(2), Rational(2)}), InvalidInput);
    CHECK_THROWS_AS(squid(2, {-1, 1}, {}), InvalidInput);
}

TEST_CASE("relation validation") {
    Quiver q = th::a3();
    Relation short_rel;
    short_rel.paths = {pth(q, {"a"})};
    short_rel.coeffs = {Rational(1)};
    CHECK_THROWS_AS(Algebra::bound_quiver_algebra(q, {short_rel}), InvalidInput);

    Quiver sq = th::make_quiver({"1", "2", "3", "4"},
                                {{"a", "1", "2"}, {"c", "2", "4"}, {"b", "1", "3"}, {"d", "3", "4"}});
    Relation mixed;  // ac and ab-like paths with different endpoints
    mixed.paths = {pth(sq, {"a", "c"}), pth(sq, {"b", "d"})};
    mixed.coeffs = {Rational(1)};  // arity mismatch
    CHECK_THROWS_AS(Algebra::bound_quiver_algebra(sq, {mixed}), InvalidInput);

    Relation zero = rel(sq, {{"a", "c"}, {"b", "d"}}, {0, 0});
    CHECK_THROWS_AS(Algebra::bound_quiver_algebra(sq, {zero}), InvalidInput);
}

TEST_CASE("oriented cycles: exact nilpotency certificates or loud refusal") {
    Quiver loop = th::make_quiver({"x"}, {{"l", "x", "x"}});

    // no relations: infinite-dimensional, must refuse
    CHECK_THROWS_AS(Algebra::path_algebra(loop), CapExceeded);

    // l^2 = 0: two-dimensional, certificate N = 2
    Relation l2 = rel(loop, {{"l", "l"}}, {1});
    Algebra trunc = Algebra::bound_quiver_algebra(loop, {l2});
    CHECK(trunc.dim() == 2);
    CHECK(trunc.nilpotency_bound() == 2);
    CHECK(trunc.lin_is_zero(trunc.normal_form(pth(loop, {"l", "l"}))));
    CHECK(trunc.lin_is_zero(trunc.normal_form(pth(loop, {"l", "l", "l"}))));

    // l^3 = 0: three-dimensional, certificate N = 3
    Relation l3 = rel(loop, {{"l", "l", "l"}}, {1});
    Algebra t3 = Algebra::bound_quiver_algebra(loop, {l3});
    CHECK(t3.dim() == 3);
    CHECK(t3.nilpotency_bound() == 3);

    // l^2 = l^3 is not homogeneous: the quotient is not certifiably
    // finite-dimensional by length truncation (l^2 is idempotent there)
    Relation mixed = rel(loop, {{"l", "l"}, {"l", "l", "l"}}, {1, -1});
    CHECK_THROWS_AS(Algebra::bound_quiver_algebra(loop, {mixed}), CapExceeded);
}

TEST_CASE("oriented 3-cycle with radical-square-zero relations") {
    Quiver c3 = th::make_quiver({"1", "2", "3"},
                                {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}});
    CHECK_THROWS_AS(Algebra::path_algebra(c3), CapExceeded);

    std::vector<Relation> rels = {rel(c3, {{"a", "b"}}, {1}), rel(c3, {{"b", "c"}}, {1}),
                                  rel(c3, {{"c", "a"}}, {1})};
    Algebra alg = Algebra::bound_quiver_algebra(c3, rels);
    CHECK(alg.dim() == 6);  // idempotents and arrows only
    CHECK(alg.nilpotency_bound() == 2);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(alg.pair_dim(x, y) == (x == y || (y == (x + 1) % 3) ? 1 : 0));

    // product of consecutive arrows dies, and so does any longer walk
    Algebra::Lin ab = alg.mul({{alg.arrow_basis_index(0), Rational(1)}},
                              {{alg.arrow_basis_index(1), Rational(1)}});
    CHECK(alg.lin_is_zero(ab));
    CHECK(alg.lin_is_zero(alg.normal_form(pth(c3, {"a", "b", "c", "a"}))));
}

TEST_CASE("pair bases are ordered short-first and consistent with normal forms") {
    SquidResult s = squid(3, {2, 1, 1}, {Rational(2)});
    const Algebra& a = s.algebra;
    const Quiver& q = a.quiver;
    int v1 = q.vertex_index("1");
    int arm12 = q.vertex_index("1.2");

    // 1 -> 1.2 is reached only by a2 b1 c1.1 (a1 b1 = 0 kills the other route)
    const std::vector<int>& pb = a.pair_basis(v1, arm12);
    REQUIRE(pb.size() == 1);
    CHECK(a.basis_path(pb[0]) == pth(q, {"a2", "b1", "c1.1"}));
    CHECK(a.lin_is_zero(a.normal_form(pth(q, {"a1", "b1", "c1.1"}))));

    // lengths never decrease along any published pair basis
    for (int x = 0; x < a.vertex_count(); ++x)
        for (int y = 0; y < a.vertex_count(); ++y) {
            const auto& ids = a.pair_basis(x, y);
            for (std::size_t i = 1; i < ids.size(); ++i)
                CHECK(a.basis_path(ids[i - 1]).length() <= a.basis_path(ids[i]).length());
        }

    // global dimension equals the sum over pairs
    int total = 0;
    for (int x = 0; x < a.vertex_count(); ++x)
        for (int y = 0; y < a.vertex_count(); ++y) total += a.pair_dim(x, y);
    CHECK(total == a.dim());
}

TEST_CASE("associativity spot-checks on a bound algebra") {
    SquidResult s = squid(3, {2, 1, 1}, {Rational(2)});
    const Algebra& a = s.algebra;
    // (x*y)*z == x*(y*z) over a spread of basis triples
    for (int i = 0; i < a.dim(); i += 3)
        for (int j = 0; j < a.dim(); j += 3)
            for (int k = 0; k < a.dim(); k += 3) {
                Algebra::Lin x = {{i, Rational(2)}}, y = {{j, Rational(3)}}, z = {{k, Rational(5)}};
                CHECK(a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z)));
            }
}

TEST_CASE("path helpers validate composability") {
    Quiver q = th::a3();
    CHECK_THROWS_AS(pth(q, {"b", "a"}), InvalidInput);
    CHECK_THROWS_AS(path_from_arrows(q, {}, -1), InvalidInput);
    Path e = path_from_arrows(q, {}, 1);
    CHECK(e.is_idempotent());
    CHECK(path_to_string(q, e) == "e_2");
    CHECK(path_to_string(q, pth(q, {"a", "b"})) == "a.b");
}
