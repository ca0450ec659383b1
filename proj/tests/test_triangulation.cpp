#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixture.h"

using namespace zft;

TEST_CASE("trefoil file parses") {
    auto tri = load_fixture("trefoil.zft");
    CHECK(tri.tet_count() == 2);
    CHECK(tri.edge_count() == 2);
    CHECK(tri.edge_names == std::vector<std::string>{"s", "t"});
    CHECK(tri.tets[0].sign == 1);
    CHECK(tri.tets[1].sign == 1);
    // slot order 01 02 03 12 13 23
    CHECK(tri.tets[0].slots == std::array<int, 6>{0, 0, 1, 0, 0, 0});
    CHECK(tri.meridian.coeff == std::vector<Int>{-1, 0, 0, 1, 0, 0});
    CHECK(tri.longitude.coeff == std::vector<Int>{2, 0, -1, -2, 0, 0});

    auto val = edge_valences(tri);
    CHECK(val[0] == 10);
    CHECK(val[1] == 2);
}

TEST_CASE("figure-eight file parses with a negative tetrahedron") {
    auto tri = load_fixture("4_1.zft");
    CHECK(tri.tet_count() == 2);
    CHECK(tri.tets[0].sign == 1);
    CHECK(tri.tets[1].sign == -1);
    auto val = edge_valences(tri);
    CHECK(val[0] == 6);
    CHECK(val[1] == 6);
}

TEST_CASE("three-tetrahedron file parses") {
    auto tri = load_fixture("5_2.zft");
    CHECK(tri.tet_count() == 3);
    CHECK(tri.edge_count() == 3);
    CHECK(tri.edge_names == std::vector<std::string>{"s", "t", "u"});
    auto val = edge_valences(tri);
    CHECK(val[0] + val[1] + val[2] == 18);
}

TEST_CASE("serialize round-trips") {
    for (const char* name : {"trefoil.zft", "4_1.zft", "5_2.zft"}) {
        auto tri = load_fixture(name);
        auto again = parse_triangulation(serialize_triangulation(tri));
        CHECK(again.edge_names == tri.edge_names);
        CHECK(again.meridian.coeff == tri.meridian.coeff);
        CHECK(again.longitude.coeff == tri.longitude.coeff);
        REQUIRE(again.tet_count() == tri.tet_count());
        for (int j = 0; j < tri.tet_count(); ++j) {
            CHECK(again.tets[j].sign == tri.tets[j].sign);
            CHECK(again.tets[j].slots == tri.tets[j].slots);
        }
    }
}

TEST_CASE("quotient monomials of the trefoil") {
    auto tri = load_fixture("trefoil.zft");
    auto [qx, qz] = tet_quotient_monomials(tri, 0);
    // x = (02)(13)/((03)(12)) = s*s/(t*s) = s/t, z = (01)(23)/((02)(13)) = 1
    CHECK(qx.exponents == std::vector<int>{1, -1});
    CHECK(qz.exponents == std::vector<int>{0, 0});
}

TEST_CASE("slot angle assignment pairs opposite edges") {
    CHECK(slot_angle(0) == slot_angle(5));
    CHECK(slot_angle(1) == slot_angle(4));
    CHECK(slot_angle(2) == slot_angle(3));
    CHECK(slot_angle(0) == 0);
    CHECK(slot_angle(1) == 1);
    CHECK(slot_angle(2) == 2);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_triangulation("nonsense"), ParseError);
    CHECK_THROWS_AS(parse_triangulation("zft 2\ntets 1\n"), ParseError);
    CHECK_THROWS_AS(parse_triangulation("zft 1\ntets 0\n"), ParseError);
    // missing tets
    CHECK_THROWS_AS(parse_triangulation("zft 1\ntets 2\ntet 0 + s s t s s s\n"), ParseError);
    // bad sign
    CHECK_THROWS_AS(parse_triangulation("zft 1\ntets 1\ntet 0 * s s s s s s\n"), ParseError);
    // duplicate index
    CHECK_THROWS_AS(parse_triangulation("zft 1\ntets 2\n"
                                        "tet 0 + s s t s s s\ntet 0 + s s t s s s\n"),
                    ParseError);
    // short cusp row
    CHECK_THROWS_AS(parse_triangulation("zft 1\ntets 1\ntet 0 + s s s s s s\n"
                                        "meridian 1 0\nlongitude 0 0 1\n"),
                    ParseError);
    // edge classes must equal tetrahedra
    CHECK_THROWS_AS(parse_triangulation("zft 1\ntets 1\ntet 0 + s s t s s u\n"
                                        "meridian 1 0 0\nlongitude 0 0 1\n"),
                    ParseError);
    try {
        parse_triangulation("zft 1\ntets 2\ntet 0 + s s t s s s\n");
    } catch (const ParseError& e) {
        CHECK(e.line >= 3);  // reported at/after the offending region
    }
}

TEST_CASE("comments and blank lines are ignored") {
    auto tri = parse_triangulation(
        "# leading comment\n\nzft 1\n# another\ntets 2\n"
        "tet 0 + s s t s s s\n\ntet 1 + s s t s s s\n"
        "meridian -1 0 0 1 0 0\nlongitude 2 0 -1 -2 0 0\n");
    CHECK(tri.tet_count() == 2);
}
