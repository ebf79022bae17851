#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tiltcover/derived.hpp"
#include "tiltcover/errors.hpp"

#include "helpers.hpp"

using namespace tiltcover;

namespace {

AlgebraPtr hered(const Quiver& q) {
    return std::make_shared<const Algebra>(Algebra::path_algebra(q));
}

AlgebraPtr nakayama3() {
    Quiver q = th::a3();
    Relation r;
    r.paths.push_back(path_from_arrows(q, {q.arrow_index("a"), q.arrow_index("b")}));
    r.coeffs.push_back(Rational(1));
    return std::make_shared<const Algebra>(Algebra::bound_quiver_algebra(q, {r}, 0));
}

// Euler characteristic of Hom(x, y[*]) over a window wide enough for all
// objects in these tests (shifts within [-2, 2], so degrees beyond +-3 die)
Rational euler_chi(const DObject& x, const DObject& y) {
    Rational chi(0);
    for (int d = -3; d <= 3; ++d) {
        int h = ghom_dim(x, y, d);
        chi = chi + Rational(d % 2 == 0 ? h : -h);
    }
    return chi;
}

}  // namespace

TEST_CASE("derived objects normalize into sorted merged summands") {
    AlgebraPtr a = hered(th::a2());
    Rep p1 = projective_rep(a, 0), p2 = projective_rep(a, 1);
    Rep s1 = simple_rep(a, 0), s2 = simple_rep(a, 1);

    DObject x = dobject(a, {{p1, 2, 1}, {s1, 0, 1}, {p1, 2, 1}, {s2, 0, 1}});
    REQUIRE(x.summands.size() == 3);
    CHECK(x.summand_count() == 4);
    CHECK(x.min_shift() == 0);
    CHECK(x.max_shift() == 2);
    // sorted by shift first, then by dimension vector
    CHECK(x.summands[0].shift == 0);
    CHECK(x.summands[0].rep.dims == std::vector<int>{0, 1});
    CHECK(x.summands[1].rep.dims == std::vector<int>{1, 0});
    CHECK(x.summands[2].shift == 2);
    CHECK(x.summands[2].mult == 2);  // the two p1 copies merged

    DObject z = dobject(a, {});
    CHECK(z.is_zero());
    CHECK(z.summand_count() == 0);
    CHECK_THROWS_AS(z.min_shift(), InvalidInput);

    // a module decomposes into its summands at the chosen shift
    DirectSum ds = direct_sum({p2, s1, p2});
    DObject m = module_as_dobject(ds.rep, -1);
    REQUIRE(m.summands.size() == 2);
    CHECK(m.summands[0].shift == -1);
    CHECK(m.summands[0].mult + m.summands[1].mult == 3);
    CHECK(module_as_dobject(zero_rep(a)).is_zero());

    DObject shifted = shift_of(m, 3);
    CHECK(shifted.min_shift() == 2);
    CHECK(dobj_equal(shift_of(shifted, -3), m));

    // equality matches summands up to isomorphism, not data identity
    Rep p1_scaled = rep_from_maps(a, {1, 1}, {th::qm({{5}})});
    CHECK(dobj_equal(dobject(a, {{p1, 0, 1}}), dobject(a, {{p1_scaled, 0, 1}})));
    CHECK_FALSE(dobj_equal(dobject(a, {{s1, 0, 1}}), dobject(a, {{s1, 1, 1}})));
    CHECK_FALSE(dobj_equal(dobject(a, {{s1, 0, 1}}), dobject(a, {{s1, 0, 2}})));

    // refuse decomposable or zero summands, bad multiplicities, bad algebras
    CHECK_THROWS_AS(dobject(a, {{ds.rep, 0, 1}}), InvalidInput);
    CHECK_THROWS_AS(dobject(a, {{zero_rep(a), 0, 1}}), InvalidInput);
    CHECK_THROWS_AS(dobject(a, {{s1, 0, 0}}), InvalidInput);
    CHECK_THROWS_AS(dobject(nakayama3(), {}), InvalidInput);
}

TEST_CASE("graded hom dimensions follow the hereditary pair rule") {
    AlgebraPtr a = hered(th::a2());
    Rep p1 = projective_rep(a, 0), p2 = projective_rep(a, 1);
    Rep s1 = simple_rep(a, 0), s2 = simple_rep(a, 1);

    DObject S1 = module_as_dobject(s1), S2 = module_as_dobject(s2);
    // a degree-0 map into a shifted module is an extension class
    CHECK(ghom_dim(S1, shift_of(S2, 1), 0) == ext1_dim(s1, s2));
    CHECK(ghom_dim(S1, shift_of(S2, 1), 0) == 1);
    CHECK(ghom_dim(S2, shift_of(S1, 1), 0) == 0);
    CHECK(ghom_dim(S1, S2, 1) == 1);   // same class, written as a degree
    CHECK(ghom_dim(S1, S2, 0) == 0);
    CHECK(ghom_dim(S1, S2, 2) == 0);   // hereditary: nothing beyond degree 1
    CHECK(ghom_dim(S1, S2, -1) == 0);

    DObject reg = module_as_dobject(direct_sum({p1, p2}).rep);
    CHECK(ghom_dim(reg, reg, 0) == 3);  // End of the regular module
    CHECK(ghom_dim(reg, reg, 1) == 0);

    // multiplicities multiply
    DObject two = dobject(a, {{p1, 0, 2}});
    CHECK(ghom_dim(two, two, 0) == 4);

    // shift invariance on a mixed object
    DObject x = dobject(a, {{s1, 0, 1}, {p1, 1, 2}});
    DObject y = dobject(a, {{s2, 0, 1}, {p2, 2, 1}});
    for (int d = -2; d <= 2; ++d)
        CHECK(ghom_dim(x, y, d) == ghom_dim(shift_of(x, 5), shift_of(y, 5), d));

    AlgebraPtr b = hered(th::kronecker());
    CHECK_THROWS_AS(ghom_dim(x, module_as_dobject(simple_rep(b, 0)), 0), InvalidInput);
}

TEST_CASE("membership in the tilting class") {
    AlgebraPtr a = hered(th::a2());
    Rep p1 = projective_rep(a, 0), p2 = projective_rep(a, 1);
    Rep s1 = simple_rep(a, 0), s2 = simple_rep(a, 1);

    // the regular module qualifies
    CHECK(in_class_T(module_as_dobject(direct_sum({p1, p2}).rep)));
    // S1 + S2[1] has no self-extensions in positive degrees, S2 + S1[1] does
    DObject good = dobject(a, {{s1, 0, 1}, {s2, 1, 1}});
    DObject bad = dobject(a, {{s2, 0, 1}, {s1, 1, 1}});
    CHECK(in_class_T(good));
    CHECK_FALSE(in_class_T(bad));
    // membership is a shift-invariant property
    CHECK(in_class_T(shift_of(good, -4)));
    CHECK_FALSE(in_class_T(shift_of(bad, 7)));

    CHECK_FALSE(in_class_T(dobject(a, {{p1, 0, 2}})));            // repeated summand
    CHECK_FALSE(in_class_T(dobject(a, {{p1, 0, 1}})));            // too few summands
    CHECK_FALSE(in_class_T(dobject(a, {})));                      // zero object
    CHECK_FALSE(in_class_T(dobject(a, {{s1, 0, 1}, {s1, 1, 1}})));  // hom in degree 1
}

TEST_CASE("count of summands above the minimal shift") {
    AlgebraPtr a = hered(th::a2());
    Rep p1 = projective_rep(a, 0);
    Rep s1 = simple_rep(a, 0), s2 = simple_rep(a, 1);

    CHECK(r_value(module_as_dobject(direct_sum({p1, s1}).rep)) == 0);
    DObject mixed = dobject(a, {{s1, 0, 1}, {s2, 1, 1}});
    CHECK(r_value(mixed) == 1);
    CHECK(r_value(shift_of(mixed, 9)) == 1);
    CHECK(r_value(dobject(a, {{s1, 0, 1}, {s2, 1, 2}, {p1, 2, 1}})) == 3);
    CHECK_THROWS_AS(r_value(dobject(a, {})), InvalidInput);
}

TEST_CASE("derived morphism validation") {
    AlgebraPtr a = hered(th::a2());
    Rep p1 = projective_rep(a, 0), p2 = projective_rep(a, 1);
    Rep s1 = simple_rep(a, 0), s2 = simple_rep(a, 1);

    DObject X = module_as_dobject(p2), Y = module_as_dobject(p1);
    std::vector<RepMorphism> h = hom_basis(p2, p1);
    REQUIRE(h.size() == 1);

    DMorphism f = zero_dmorphism(X, Y);
    f.validate();
    f.deg0.push_back({0, 0, 0, 0, h[0]});
    f.validate();

    // duplicate slot
    DMorphism dup = f;
    dup.deg0.push_back({0, 0, 0, 0, h[0]});
    CHECK_THROWS_AS(dup.validate(), InvalidInput);

    // degree-0 block across unequal shifts
    DMorphism skew = zero_dmorphism(X, shift_of(Y, 1));
    skew.deg0.push_back({0, 0, 0, 0, h[0]});
    CHECK_THROWS_AS(skew.validate(), InvalidInput);

    // copy index out of range
    DMorphism oob = f;
    oob.deg0[0].src_copy = 1;
    CHECK_THROWS_AS(oob.validate(), InvalidInput);

    // a degree-1 block must be a cocycle on the canonical syzygy
    SyzygyData sy = syzygy(s1);
    std::vector<RepMorphism> coc = ext1_cocycles(sy, s2);
    REQUIRE(coc.size() == 1);
    DMorphism g = zero_dmorphism(module_as_dobject(s1), module_as_dobject(s2, 1));
    g.deg1.push_back({0, 0, 0, 0, coc[0]});
    g.validate();

    DMorphism wrong = zero_dmorphism(module_as_dobject(s1), module_as_dobject(s2, 1));
    wrong.deg1.push_back({0, 0, 0, 0, zero_morphism(s1, s2)});  // source is not the syzygy
    CHECK_THROWS_AS(wrong.validate(), InvalidInput);
}

TEST_CASE("cones of module maps") {
    AlgebraPtr a = hered(th::a2());
    Rep p1 = projective_rep(a, 0), p2 = projective_rep(a, 1);
    Rep s1 = simple_rep(a, 0), s2 = simple_rep(a, 1);

    // cone of an identity vanishes, also on a decomposable module
    CHECK(cone(dmorphism_from_map(identity_morphism(p1))).is_zero());
    Rep reg = direct_sum({p1, p2}).rep;
    CHECK(cone(dmorphism_from_map(identity_morphism(reg), 2)).is_zero());

    // cone of zero is target plus shifted source, multiplicities kept
    DObject X = dobject(a, {{p1, 0, 2}});
    DObject Y = module_as_dobject(s2);
    DObject c0 = cone(zero_dmorphism(X, Y));
    CHECK(dobj_equal(c0, dobject(a, {{s2, 0, 1}, {p1, 1, 2}})));

    // zero endpoints
    CHECK(cone(zero_dmorphism(dobject(a, {}), dobject(a, {}))).is_zero());
    CHECK(dobj_equal(cone(zero_dmorphism(dobject(a, {}), Y)), Y));
    CHECK(dobj_equal(cone(zero_dmorphism(Y, dobject(a, {}))), shift_of(Y, 1)));

    // the socle inclusion P2 -> P1 has cone S1
    std::vector<RepMorphism> h = hom_basis(p2, p1);
    REQUIRE(h.size() == 1);
    CHECK(dobj_equal(cone(dmorphism_from_map(h[0])), module_as_dobject(s1)));

    // a short exact sequence turns into a triangle: cone(inc) = quotient
    SyzygyData sy = syzygy(s1);
    ShortExact ses = extension_of(sy, s2, ext1_cocycles(sy, s2)[0]);
    CHECK(dobj_equal(cone(dmorphism_from_map(ses.inc)), module_as_dobject(s1)));
    // ... and the projection's cone is the sub, shifted once
    CHECK(dobj_equal(cone(dmorphism_from_map(ses.proj)), module_as_dobject(s2, 1)));
}

TEST_CASE("cones with multiple blocks into one summand") {
    AlgebraPtr b = hered(th::kronecker());
    Rep p1 = projective_rep(b, 0), p2 = projective_rep(b, 1);
    Rep s1 = simple_rep(b, 0);

    // both basis maps P2 -> P1 together embed P2 + P2 with cokernel S1
    std::vector<RepMorphism> h = hom_basis(p2, p1);
    REQUIRE(h.size() == 2);
    DMorphism f = zero_dmorphism(dobject(b, {{p2, 0, 2}}), module_as_dobject(p1));
    f.deg0.push_back({0, 0, 0, 0, h[0]});
    f.deg0.push_back({0, 1, 0, 0, h[1]});
    CHECK(dobj_equal(cone(f), module_as_dobject(s1)));

    // a Kronecker extension of S1 by S2 is a regular module of length one
    Rep s2 = simple_rep(b, 1);
    SyzygyData sy = syzygy(s1);
    std::vector<RepMorphism> coc = ext1_cocycles(sy, s2);
    REQUIRE(coc.size() == 2);
    ShortExact ses = extension_of(sy, s2, coc[0]);
    CHECK(dobj_equal(cone(dmorphism_from_map(ses.inc)), module_as_dobject(s1)));
}

TEST_CASE("cones of degree-one blocks") {
    AlgebraPtr a = hered(th::a2());
    Rep p1 = projective_rep(a, 0);
    Rep s1 = simple_rep(a, 0), s2 = simple_rep(a, 1);

    // the nonsplit class in Ext^1(S1, S2) as a map S1 -> S2[1]; rotating the
    // extension triangle S2 -> P1 -> S1 identifies its cone with P1[1]
    SyzygyData sy = syzygy(s1);
    std::vector<RepMorphism> coc = ext1_cocycles(sy, s2);
    REQUIRE(coc.size() == 1);
    DMorphism f = zero_dmorphism(module_as_dobject(s1), module_as_dobject(s2, 1));
    f.deg1.push_back({0, 0, 0, 0, coc[0]});
    CHECK(dobj_equal(cone(f), module_as_dobject(p1, 1)));

    // the same block between shifted copies gives the shifted cone
    DMorphism g = zero_dmorphism(module_as_dobject(s1, -2), module_as_dobject(s2, -1));
    g.deg1.push_back({0, 0, 0, 0, coc[0]});
    CHECK(dobj_equal(cone(g), module_as_dobject(p1, -1)));

    // the zero cocycle splits: cone is target plus shifted source
    DMorphism z = zero_dmorphism(module_as_dobject(s1), module_as_dobject(s2, 1));
    z.deg1.push_back({0, 0, 0, 0, zero_morphism(sy.omega.rep, s2)});
    CHECK(dobj_equal(cone(z), dobject(a, {{s1, 1, 1}, {s2, 1, 1}})));
}

TEST_CASE("triangles are additive on Euler characteristics") {
    AlgebraPtr a = hered(th::a2());
    Rep p1 = projective_rep(a, 0), p2 = projective_rep(a, 1);
    Rep s1 = simple_rep(a, 0), s2 = simple_rep(a, 1);

    std::vector<DObject> probes = {module_as_dobject(p1), module_as_dobject(s2),
                                   dobject(a, {{s1, 0, 1}, {p2, 1, 1}})};

    // a degree-0 triangle
    DMorphism f = dmorphism_from_map(hom_basis(p2, p1)[0]);
    DObject cf = cone(f);
    for (const DObject& w : probes) {
        CHECK(euler_chi(w, cf) == euler_chi(w, f.target) - euler_chi(w, f.source));
        CHECK(euler_chi(cf, w) == euler_chi(f.target, w) - euler_chi(f.source, w));
    }

    // a degree-1 triangle
    SyzygyData sy = syzygy(s1);
    DMorphism g = zero_dmorphism(module_as_dobject(s1), module_as_dobject(s2, 1));
    g.deg1.push_back({0, 0, 0, 0, ext1_cocycles(sy, s2)[0]});
    DObject cg = cone(g);
    for (const DObject& w : probes)
        CHECK(euler_chi(w, cg) == euler_chi(w, g.target) - euler_chi(w, g.source));
}
