#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tiltcover/cover.hpp"
#include "tiltcover/errors.hpp"
#include "tiltcover/tilt.hpp"

#include "helpers.hpp"

#include <set>
#include <vector>

using namespace tiltcover;

namespace {

AlgebraPtr hered(const Quiver& q) {
    return std::make_shared<const Algebra>(Algebra::path_algebra(q));
}

// Z/2 cover of the Kronecker algebra: arrow a has trivial monodromy, b the
// generator.  Total vertices 1@0, 1@1, 2@0, 2@1; arrows a@0, a@1, b@0, b@1.
CategoryCover kron_cover() {
    Quiver k = th::kronecker();
    return build_cover(hered(k), cover_from_monodromy(k, FiniteGroup::cyclic(2), {0, 1}));
}

// regular indecomposable upstairs with trivial stabilizer; pushes to (2, 3)
Rep tot_w(const CategoryCover& c) {
    return rep_from_maps(c.total, {1, 1, 1, 2},
                         {th::qm({{1}}), th::qm({{0, 1}}), th::qm({{1, 0}}), th::qm({{-1}})});
}

// its translate under the deck generator, dims (1, 1, 2, 1)
Rep tot_gw(const CategoryCover& c) {
    return rep_from_maps(c.total, {1, 1, 2, 1},
                         {th::qm({{0, 1}}), th::qm({{1}}), th::qm({{-1}}), th::qm({{1, 0}})});
}

// the pull-up of the regular base module (1,1; [1],[1]): full stabilizer
Rep tot_e1(const CategoryCover& c) {
    return rep_from_maps(c.total, {1, 1, 1, 1},
                         {th::qm({{1}}), th::qm({{1}}), th::qm({{1}}), th::qm({{1}})});
}

Lift identity_lift(const CategoryCover& c, const Rep& total) {
    Rep base = push_down(c, total);
    return {base, total, 0, identity_morphism(base)};
}

// the exchange walk P1+P2 -> P1+(2,3) [-> (2,3)+(3,4)] over the Kronecker
// algebra, locating the summand to exchange by its dimension vector
Transcript kron_walk(const AlgebraPtr& base, int steps) {
    Transcript probe = mutation_walk(base, {});
    int k1 = -1;
    for (std::size_t i = 0; i < probe.start.summands.size(); ++i)
        if (probe.start.summands[i].rep.dims == std::vector<int>{0, 1})
            k1 = static_cast<int>(i);
    REQUIRE(k1 >= 0);
    if (steps == 1) return mutation_walk(base, {k1});
    Transcript first = mutation_walk(base, {k1});
    int k2 = -1;
    for (std::size_t i = 0; i < first.end.summands.size(); ++i)
        if (first.end.summands[i].rep.dims == std::vector<int>{1, 2})
            k2 = static_cast<int>(i);
    REQUIRE(k2 >= 0);
    return mutation_walk(base, {k1, k2});
}

}  // namespace

TEST_CASE("monodromy cover of the Kronecker algebra") {
    CategoryCover c = kron_cover();
    CHECK(c.base->dim() == 4);
    CHECK(c.total->dim() == 8);
    CHECK(c.total->is_hereditary());
    CHECK(c.qcover.is_galois());
    CHECK(c.qcover.total.vertices ==
          std::vector<std::string>{"1@0", "1@1", "2@0", "2@1"});
    REQUIRE(c.qcover.total.arrows.size() == 4);
    // a stays inside each sheet, b crosses between them
    CHECK(c.qcover.total.arrows[0].name == "a@0");
    CHECK(c.qcover.total.arrows[0].tgt == 2);
    CHECK(c.qcover.total.arrows[2].name == "b@0");
    CHECK(c.qcover.total.arrows[2].src == 0);
    CHECK(c.qcover.total.arrows[2].tgt == 3);

    // mismatched base algebra and broken group action are rejected
    QuiverCovering qc = cover_from_monodromy(th::kronecker(), FiniteGroup::cyclic(2), {0, 1});
    CHECK_THROWS_AS(build_cover(hered(th::a3()), qc), InvalidInput);
    QuiverCovering bad = qc;
    bad.vertex_action[1] = bad.vertex_action[0];
    CHECK_THROWS_AS(build_cover(hered(th::kronecker()), bad), InvalidInput);
}

TEST_CASE("relations lift along the squid cover") {
    SquidResult sq = squid(2, {1, 1}, {});
    REQUIRE(!sq.degenerate);
    AlgebraPtr base = std::make_shared<const Algebra>(sq.algebra);
    CHECK(base->dim() == 10);
    // weights on (a1, a2, b1, b2): a2 carries the generator
    QuiverCovering qc =
        cover_from_monodromy(base->quiver, FiniteGroup::cyclic(2), {0, 1, 0, 0});
    CategoryCover c = build_cover(base, qc);
    CHECK(c.total->dim() == 20);
    CHECK(c.total->relations.size() == 4);  // both zero relations, on each sheet
    CHECK(!c.total->is_hereditary());
    CHECK(is_isomorphic(push_down(c, projective_rep(c.total, 0)), projective_rep(c.base, 0)));

    // a commutativity relation whose branches land in different sheets
    Quiver q = th::make_quiver(
        {"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "1", "2"}, {"d", "2", "3"}});
    Relation r;
    r.paths = {path_from_arrows(q, {0, 1}), path_from_arrows(q, {2, 3})};
    r.coeffs = {Rational(1), Rational(-1)};
    AlgebraPtr comm =
        std::make_shared<const Algebra>(Algebra::bound_quiver_algebra(q, {r}, 0));
    QuiverCovering split = cover_from_monodromy(q, FiniteGroup::cyclic(2), {0, 0, 0, 1});
    CHECK_THROWS_AS(build_cover(comm, split), InvalidInput);
}

TEST_CASE("push-down, translation, and stabilizers") {
    CategoryCover c = kron_cover();
    Rep w = tot_w(c), gw = tot_gw(c), e1 = tot_e1(c);
    Rep p10 = projective_rep(c.total, 0);

    CHECK(push_down(c, p10).dims == std::vector<int>{1, 2});
    CHECK(is_isomorphic(push_down(c, p10), projective_rep(c.base, 0)));
    CHECK(push_down(c, w).dims == std::vector<int>{2, 3});
    CHECK(push_down(c, gw).dims == std::vector<int>{2, 3});
    CHECK(is_isomorphic(push_down(c, w), push_down(c, gw)));
    CHECK(push_down(c, e1).dims == std::vector<int>{2, 2});

    CHECK(is_isomorphic(translate(c, 1, w), gw));
    CHECK(is_isomorphic(translate(c, 1, p10), projective_rep(c.total, 1)));
    CHECK(stabilizer(c, e1) == std::vector<int>{0, 1});
    CHECK(stabilizer(c, w) == std::vector<int>{0});

    // pulling up the regular base module gives the stable module back
    Rep reg = rep_from_maps(c.base, {1, 1}, {th::qm({{1}}), th::qm({{1}})});
    Rep up = pull_up(c, reg);
    CHECK(is_isomorphic(up, e1));
    CHECK(push_down(c, up).dims == std::vector<int>{2, 2});

    // push-down of morphisms respects identities
    CHECK(is_invertible(push_down_hom(c, identity_morphism(w))));
    CHECK_THROWS_AS(push_down(c, reg), InvalidInput);
    CHECK_THROWS_AS(pull_up(c, w), InvalidInput);
    CHECK_THROWS_AS(translate(c, 2, w), InvalidInput);
}

TEST_CASE("the covering property for hom and ext") {
    CategoryCover c = kron_cover();
    Rep p10 = projective_rep(c.total, 0);
    Rep e1 = tot_e1(c);
    Rep s10 = simple_rep(c.total, 0);
    Rep s20 = simple_rep(c.total, 2);

    CHECK(hom_dim(push_down(c, p10), push_down(c, e1)) == 2);
    CHECK(hom_dim(p10, e1) == 1);
    CHECK(hom_dim(p10, translate(c, 1, e1)) == 1);
    CHECK(ext1_dim(push_down(c, s10), push_down(c, s20)) == 2);
    CHECK(ext1_dim(s10, s20) == 1);

    CHECK(covering_property_check(c, p10, e1, {0, 1}));
    CHECK(covering_property_check(c, s20, p10, {0, 1}));
    CHECK(covering_property_check(c, s10, s20, {0, 1}));
}

TEST_CASE("homogeneous decomposition of a push-down morphism") {
    CategoryCover c = kron_cover();
    Rep p10 = projective_rep(c.total, 0);
    Rep e1 = tot_e1(c);
    Rep fp = push_down(c, p10), fe = push_down(c, e1);

    // the sum of the degree-0 and degree-1 generators of Hom(F P, F E)
    RepMorphism u =
        morphism_from_mats(fp, fe, {th::qm({{1, 1}}), th::qm({{1, 1}, {1, 1}})});
    auto dec = homogeneous_decomposition(c, p10, e1, u);
    REQUIRE(dec.size() == 2);
    REQUIRE(dec.count(0) == 1);
    REQUIRE(dec.count(1) == 1);

    RepMorphism f0 = push_down_graded(c, 0, dec.at(0));
    RepMorphism f1 = push_down_graded(c, 1, dec.at(1));
    CHECK(f0.mats[0] == th::qm({{1, 0}}));
    CHECK(f0.mats[1] == th::qm({{1, 0}, {0, 1}}));
    CHECK(f1.mats[0] == th::qm({{0, 1}}));
    CHECK(f1.mats[1] == th::qm({{0, 1}, {1, 0}}));

    RepMorphism back = morphism_combo({f0, f1}, {Rational(1), Rational(1)});
    CHECK(back.mats[0] == u.mats[0]);
    CHECK(back.mats[1] == u.mats[1]);

    CHECK(homogeneous_decomposition(c, p10, e1, zero_morphism(fp, fe)).empty());
    CHECK_THROWS_AS(homogeneous_decomposition(c, p10, tot_w(c), u), InvalidInput);
}

TEST_CASE("straightening a column to homogeneous entries") {
    CategoryCover c = kron_cover();
    Rep p2t = projective_rep(c.total, 2);  // the simple projective at 2@0
    Rep p1t = projective_rep(c.total, 0);
    Lift x = identity_lift(c, p2t);
    Lift t1 = identity_lift(c, p1t);

    // u1 mixes degrees 0 and 1; u2 is already homogeneous of degree 0
    RepMorphism u1 =
        morphism_from_mats(x.base, t1.base, {th::qm({}, 1), th::qm({{1, 1}})});
    RepMorphism u2 =
        morphism_from_mats(x.base, t1.base, {th::qm({}, 1), th::qm({{1, 0}})});
    StraightenResult sr = straighten(c, x, {t1, t1}, {u1, u2});

    // the mixed entry loses its degree-0 part (the nilpotent branch), so the
    // final degrees are (1, 0) and the first entry becomes the pure tail
    REQUIRE(sr.degrees == std::vector<int>{1, 0});
    CHECK(sr.entries[0].mats[1] == th::qm({{0, 1}}));
    CHECK(sr.entries[1].mats[1] == th::qm({{1, 0}}));
    CHECK(is_invertible(sr.base_change));
    CHECK(sr.upstairs[0].target.dims == translate(c, 1, p1t).dims);

    // same cone as before: injective with indecomposable cokernel (2, 3)
    RepMorphism col = morphism_combo({compose(sr.entries[0], sr.sum.inclusions[0]),
                                      compose(sr.entries[1], sr.sum.inclusions[1])},
                                     {Rational(1), Rational(1)});
    CHECK(kernel_rep(col).rep.is_zero());
    CHECK(cokernel_rep(col).rep.dims == std::vector<int>{2, 3});

    // a column whose kernel maps to a target violates the lifting hypothesis
    Rep both = direct_sum({p2t, simple_rep(c.total, 3)}).rep;
    Lift x2 = identity_lift(c, both);
    RepMorphism pr =
        morphism_from_mats(x2.base, x.base, {th::qm({}, 0), th::qm({{1}, {0}})});
    CHECK_THROWS_AS(straighten(c, x2, {x}, {pr}), InvalidInput);
    CHECK_THROWS_AS(straighten(c, x, {t1}, {u1, u2}), InvalidInput);
}

TEST_CASE("exchange transcripts lift to the cover") {
    CategoryCover c = kron_cover();
    AlgebraPtr base = c.base;
    Transcript t = kron_walk(base, 2);

    std::vector<Lift> lifts = lift_summands(c, t);
    REQUIRE(lifts.size() == 2);
    std::multiset<int> total_dims;
    for (const Lift& l : lifts) {
        CHECK(l.shift == 0);
        CHECK(is_isomorphic(push_down(c, l.total), l.base));
        CHECK(stabilizer(c, l.total) == std::vector<int>{0});
        total_dims.insert(l.total.total_dim());
    }
    // (2,3) lifts to a five-dimensional module, (3,4) to a seven-dimensional
    CHECK(total_dims == std::multiset<int>{5, 7});
    int wi = lifts[0].base.dims == std::vector<int>{2, 3} ? 0 : 1;
    CHECK((is_isomorphic(lifts[wi].total, tot_w(c)) ||
           is_isomorphic(lifts[wi].total, tot_gw(c))));

    // the endpoint itself lifts as one object
    std::vector<Rep> parts;
    for (const DSummand& s : t.end.summands) parts.push_back(s.rep);
    Rep endm = direct_sum(parts).rep;
    Lift whole = lift_object(c, endm, t);
    CHECK(is_isomorphic(push_down(c, whole.total), endm));
    CHECK_THROWS_AS(lift_object(c, projective_rep(base, 0), t), InvalidInput);

    // transcripts that do not start at the regular object are rejected
    AlgebraPtr a2 = hered(th::a2());
    DObject shifted =
        dobject(a2, {{simple_rep(a2, 0), 0, 1}, {simple_rep(a2, 1), 1, 1}});
    Transcript red = reduce_to_tilting(shifted).transcript;
    CHECK_THROWS_AS(lift_summands(c, red), InvalidInput);
    Transcript other = mutation_walk(a2, {});
    CHECK_THROWS_AS(lift_summands(c, other), InvalidInput);
}

TEST_CASE("arrow twists") {
    AlgebraPtr kr = hered(th::kronecker());
    Transcript t = kron_walk(kr, 2);

    // rescaling one arrow and swapping the pair are invertible twists
    ArrowTwist scale = make_twist(kr, {{{0, Rational(1)}}, {{1, Rational(2)}}});
    ArrowTwist swap = make_twist(kr, {{{1, Rational(1)}}, {{0, Rational(1)}}});
    ArrowTwist shear =
        make_twist(kr, {{{0, Rational(1)}, {1, Rational(1)}}, {{1, Rational(1)}}});
    Rep p1 = projective_rep(kr, 0);
    CHECK(is_isomorphic(twist_rep(scale, p1), p1));
    CHECK(is_isomorphic(twist_rep(swap, p1), p1));
    CHECK(twist_fixes_summands(scale, t.end));
    CHECK(twist_fixes_summands(swap, t.end));
    CHECK(twist_fixes_summands(shear, t.end));

    // collapsing both arrows onto one is not invertible
    CHECK_THROWS_AS(make_twist(kr, {{{0, Rational(1)}}, {{0, Rational(1)}}}), InvalidInput);
    // images must combine parallel arrows only
    CHECK_THROWS_AS(make_twist(hered(th::a3()), {{{0, Rational(1)}}, {{0, Rational(1)}}}),
                    InvalidInput);

    // swapping the squid head arrows breaks its zero relations
    AlgebraPtr sq = std::make_shared<const Algebra>(squid(2, {1, 1}, {}).algebra);
    CHECK_THROWS_AS(make_twist(sq, {{{1, Rational(1)}},
                                    {{0, Rational(1)}},
                                    {{2, Rational(1)}},
                                    {{3, Rational(1)}}}),
                    InvalidInput);
    // rescaling a head arrow preserves them
    ArrowTwist ok = make_twist(sq, {{{0, Rational(2)}},
                                    {{1, Rational(1)}},
                                    {{2, Rational(1)}},
                                    {{3, Rational(1)}}});
    CHECK(is_isomorphic(twist_rep(ok, projective_rep(sq, 0)), projective_rep(sq, 0)));
}

TEST_CASE("induced covering of the endomorphism algebra") {
    CategoryCover c = kron_cover();
    Transcript t = kron_walk(c.base, 1);

    std::vector<Lift> lifts = lift_summands(c, t);
    EndCover ec = induced_end_cover(c, lifts);

    // End(P1 + (2,3)) is again a Kronecker algebra ...
    CHECK(ec.cover.base->dim() == 4);
    CHECK(ec.cover.base->is_hereditary());
    CHECK(ec.cover.base->quiver.vertices.size() == 2);
    REQUIRE(ec.cover.base->quiver.arrows.size() == 2);
    CHECK(ec.cover.base->quiver.arrows[0].src == ec.cover.base->quiver.arrows[1].src);
    CHECK(ec.cover.base->quiver.arrows[0].tgt == ec.cover.base->quiver.arrows[1].tgt);

    // ... and its induced cover is a connected 4-cycle of total dimension 8
    CHECK(ec.cover.total->dim() == 8);
    CHECK(ec.cover.qcover.total.vertices.size() == 4);
    REQUIRE(ec.cover.qcover.total.arrows.size() == 4);
    CHECK(ec.cover.qcover.is_galois());
    CHECK(ec.cover.qcover.total.is_connected());
    // the two base arrows carry different degrees: their lifts at sheet 0
    // end on different sheets
    CHECK(ec.cover.qcover.total.arrows[0].tgt % 2 !=
          ec.cover.qcover.total.arrows[2].tgt % 2);

    CHECK(ec.summands.size() == 2);
    REQUIRE(ec.object_vertex.size() == 2);
    CHECK(ec.object_vertex[0].size() == 2);
    std::set<int> seen(ec.object_vertex[0].begin(), ec.object_vertex[0].end());
    seen.insert(ec.object_vertex[1].begin(), ec.object_vertex[1].end());
    CHECK(seen.size() == 4);

    CHECK_THROWS_AS(induced_end_cover(c, {lifts[0], lifts[0]}), InvalidInput);
    CHECK_THROWS_AS(induced_end_cover(c, {}), InvalidInput);
}
