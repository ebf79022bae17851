#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "tiltcover/quiver.hpp"

#include <set>

using namespace tiltcover;
using th::make_quiver;

TEST_CASE("basic invariants: trees, fundamental rank, acyclicity") {
    Quiver a2 = th::a2();
    CHECK(a2.is_connected());
    CHECK(a2.is_tree());
    CHECK(a2.pi1_rank() == 0);
    CHECK(a2.is_acyclic());

    Quiver kr = th::kronecker();
    CHECK(kr.is_connected());
    CHECK(!kr.is_tree());
    CHECK(kr.pi1_rank() == 1);
    CHECK(kr.is_acyclic());

    Quiver loop = make_quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}});
    CHECK(!loop.is_acyclic());
    CHECK(loop.pi1_rank() == 1);

    Quiver two = make_quiver({"1", "2", "3"}, {{"a", "1", "2"}});
    CHECK(!two.is_connected());
    CHECK(two.component_count() == 2);
    CHECK(two.pi1_rank() == 0);
}

TEST_CASE("quiver validation rejects malformed data") {
    Quiver q;
    q.vertices = {"1", "1"};
    CHECK_THROWS_AS(q.validate(), InvalidInput);

    Quiver r;
    r.vertices = {"1"};
    Arrow a;
    a.name = "a";
    a.src = 0;
    a.tgt = 3;
    r.arrows.push_back(a);
    CHECK_THROWS_AS(r.validate(), InvalidInput);
}

TEST_CASE("universal cover truncations of the Kronecker quiver are reduced-walk trees") {
    Quiver kr = th::kronecker();

    CoverFragment f0 = universal_cover_truncated(kr, 0, 0);
    CHECK(f0.total.vertices.size() == 1);
    CHECK(f0.total.arrows.empty());

    CoverFragment f1 = universal_cover_truncated(kr, 0, 1);
    CHECK(f1.total.vertices.size() == 3);
    CHECK(f1.total.arrows.size() == 2);
    CHECK(f1.total.is_tree());

    // oracle: tools/oracles/universal_cover.py (reduced walk count at radius 2)
    CoverFragment f2 = universal_cover_truncated(kr, 0, 2);
    CHECK(f2.total.vertices.size() == 5);
    CHECK(f2.total.arrows.size() == 4);
    CHECK(f2.total.is_tree());
    std::set<std::string> names(f2.total.vertices.begin(), f2.total.vertices.end());
    CHECK(names == std::set<std::string>{"1", "a", "b", "a.b~", "b.a~"});

    CoverFragment f3 = universal_cover_truncated(kr, 0, 3);
    CHECK(f3.total.vertices.size() == 7);
    CHECK(f3.total.is_tree());

    // projection respects endpoints on every truncation arrow
    for (std::size_t i = 0; i < f2.total.arrows.size(); ++i) {
        const Arrow& ta = f2.total.arrows[i];
        const Arrow& ba = kr.arrows[f2.arrow_map[i]];
        CHECK(f2.vertex_map[ta.src] == ba.src);
        CHECK(f2.vertex_map[ta.tgt] == ba.tgt);
    }
}

TEST_CASE("a tree is its own universal cover at sufficient radius") {
    Quiver a3 = th::a3();
    CoverFragment f = universal_cover_truncated(a3, 0, 2);
    CHECK(f.total.vertices.size() == 3);
    CHECK(f.total.arrows.size() == 2);
    // bijective projection
    std::set<int> img(f.vertex_map.begin(), f.vertex_map.end());
    CHECK(img.size() == 3);
}

TEST_CASE("finite groups: construction, law checking, generation") {
    FiniteGroup z4 = FiniteGroup::cyclic(4);
    CHECK(z4.identity == 0);
    CHECK(z4.inv(1) == 3);
    CHECK(z4.generates({1}));
    CHECK(!z4.generates({2}));

    FiniteGroup klein = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    CHECK(klein.size() == 4);
    for (int g = 0; g < 4; ++g) CHECK(klein.inv(g) == g);
    CHECK(klein.generates({1, 2}));
    CHECK(!klein.generates({3}));

    CHECK_THROWS_AS(FiniteGroup::cyclic(65), InvalidInput);

    FiniteGroup bad;
    bad.elements = {"e", "x"};
    bad.table = {{0, 1}, {1, 1}};  // x*x = x: no inverse
    CHECK_THROWS_AS(bad.validate(), InvalidInput);

    FiniteGroup noassoc;
    noassoc.elements = {"e", "a", "b"};
    // latin square that is not a group (no associativity)
    noassoc.table = {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
    CHECK_THROWS_AS(noassoc.validate(), InvalidInput);
}

TEST_CASE("monodromy cover of the Kronecker quiver by Z/2") {
    Quiver kr = th::kronecker();
    FiniteGroup z2 = FiniteGroup::cyclic(2);

    QuiverCovering c = cover_from_monodromy(kr, z2, {0, 1});
    CHECK(c.total.vertices.size() == 4);
    CHECK(c.total.arrows.size() == 4);
    CHECK(c.total.is_connected());
    CHECK(c.is_galois());
    CHECK(monodromy_cover_connected(kr, z2, {0, 1}));

    // the four lifted arrows: a stays in its sheet, b switches sheets
    auto arrow_endpoints = [&](const QuiverCovering& qc) {
        std::set<std::pair<std::string, std::string>> s;
        for (const Arrow& a : qc.total.arrows)
            s.insert({qc.total.vertices[a.src], qc.total.vertices[a.tgt]});
        return s;
    };
    std::set<std::pair<std::string, std::string>> want = {
        {"1@0", "2@0"}, {"1@1", "2@1"}, {"1@0", "2@1"}, {"1@1", "2@0"}};
    CHECK(arrow_endpoints(c) == want);

    // gauge-equivalent weights produce the identical cover
    QuiverCovering c2 = cover_from_monodromy(kr, z2, {1, 0});
    CHECK(arrow_endpoints(c2) == want);
    CHECK(c2.total.vertices == c.total.vertices);
}

TEST_CASE("tree monodromy normalizes away: disconnected total quiver") {
    Quiver a2 = th::a2();
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    QuiverCovering c = cover_from_monodromy(a2, z2, {1});
    CHECK(c.is_galois());
    CHECK(!c.total.is_connected());
    CHECK(c.total.component_count() == 2);
    CHECK(!monodromy_cover_connected(a2, z2, {1}));
}

TEST_CASE("covering defects are detected") {
    Quiver kr = th::kronecker();
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    QuiverCovering c = cover_from_monodromy(kr, z2, {0, 1});

    QuiverCovering broken = c;
    // non-identity element acting trivially: fixed vertices
    broken.vertex_action[1] = broken.vertex_action[0];
    auto defect = broken.covering_defect();
    REQUIRE(defect.has_value());

    QuiverCovering miswired = c;
    miswired.vertex_map[0] = 1;  // projection no longer matches arrow endpoints
    CHECK(miswired.covering_defect().has_value());

    // unique arrow lifting at each fibre vertex
    int a_idx = 0;
    int src_fibre0 = c.vertex_fibre(kr.arrows[a_idx].src)[0];
    int lifted = c.lift_arrow_at(a_idx, src_fibre0);
    CHECK(c.arrow_map[lifted] == a_idx);
    CHECK(c.total.arrows[lifted].src == src_fibre0);
}

TEST_CASE("Z/3 cover of the Kronecker quiver is a hexagon") {
    Quiver kr = th::kronecker();
    FiniteGroup z3 = FiniteGroup::cyclic(3);
    QuiverCovering c = cover_from_monodromy(kr, z3, {0, 1});
    CHECK(c.total.vertices.size() == 6);
    CHECK(c.total.arrows.size() == 6);
    CHECK(c.total.is_connected());
    CHECK(c.is_galois());
    CHECK(c.total.pi1_rank() == 1);
}
