#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixture.h"
#include "zft/apoly.hpp"
#include "zft/reduce.hpp"

using namespace zft;

TEST_CASE("gluing system of the trefoil") {
    auto sys = build_gluing_system(load_fixture("trefoil.zft"));
    REQUIRE(sys.ring->size() == 4);
    CHECK(sys.ring->name(0) == "z0");
    CHECK(sys.ring->name(sys.lvar) == "l");
    CHECK(sys.ring->name(sys.mvar) == "m");
    REQUIRE(sys.polys.size() == 3);
    CHECK(sys.provenance == std::vector<std::string>{"edge_s", "meridian", "longitude"});
    CHECK(sys.polys[0].str() == "z0 + z1 - 1");
    CHECK(sys.polys[1].str() == "z0*m - z1");
    CHECK(sys.polys[2].str() == "z0*z1^2*l - z0^3 - z1^2*l");
}

TEST_CASE("gluing system flips exponents of negative tetrahedra") {
    auto tri = load_fixture("4_1.zft");
    auto inv = build_gluing_system(tri, true);
    auto raw = build_gluing_system(tri, false);
    CHECK(inv.polys[1].str() == "z0*z1 - m");
    CHECK(inv.polys != raw.polys);
    CHECK(!raw.invert_negative);
}

TEST_CASE("pairwise elimination of a toy system") {
    auto ring = std::make_shared<Ring>(std::vector<std::string>{"z", "l", "m"});
    Poly z = Poly::variable(ring, 0), l = Poly::variable(ring, 1), m = Poly::variable(ring, 2);
    Poly one = Poly::constant(ring, 1);
    GluingSystem sys;
    sys.ring = ring;
    sys.lvar = 1;
    sys.mvar = 2;
    sys.polys = {z * l - one, z - m};
    sys.provenance = {"row0", "row1"};
    Poly elim = eliminate(sys, {0});
    CHECK(canonical_poly(elim) == l * m - one);

    // constant eliminant: curve imposes no (l,m) relation
    sys.polys = {z - one, z - Poly::constant(ring, 2)};
    CHECK(eliminate(sys, {0}).is_constant());

    // shared factor collapses the resultant to zero
    sys.polys = {z * l - one, (z * l - one) * (z - m)};
    CHECK_THROWS_AS(eliminate(sys, {0}), ZeroEliminant);
}

TEST_CASE("eliminant factors of the bundled census") {
    auto r1 = apoly_factor(load_fixture("trefoil.zft"));
    CHECK(r1.factor.str() == "l*m^3 + 1");
    CHECK(r1.invert_negative);
    std::vector<std::string> order;
    for (int v : r1.order_used) order.push_back(r1.factor.ring->name(v));
    CHECK(order == std::vector<std::string>{"z0", "z1"});
    CHECK(!r1.discarded.empty());
    for (auto& [p, why] : r1.discarded) {
        CHECK(!p.is_zero());
        CHECK(!why.empty());
    }

    auto r2 = apoly_factor(load_fixture("4_1.zft"));
    CHECK(r2.factor.str() == "l*m^4 + l^2*m^2 - l*m^3 - 2*l*m^2 - l*m + m^2 + l");

    auto r3 = apoly_factor(load_fixture("5_2.zft"));
    CHECK(r3.factor.str() ==
          "l^3*m^7 - l^2*m^7 + 2*l^2*m^6 + 2*l^2*m^5 + l*m^5 - l^2*m^3 - l*m^4 + l^2*m^2 + "
          "2*l*m^2 + 2*l*m - l + 1");
}

TEST_CASE("keeping negative-tetrahedron exponents changes the curve") {
    auto res = apoly_factor(load_fixture("4_1.zft"), false);
    CHECK(res.factor.str() == "l*m^2 + 2*l*m + l - m");
    CHECK(!res.invert_negative);
}

TEST_CASE("unit and l-sign comparison") {
    auto res = apoly_factor(load_fixture("trefoil.zft"));
    const auto& ring = res.factor.ring;
    int lv = ring->var("l");
    Poly flipped = subst(res.factor, lv, -Poly::variable(ring, lv));
    CHECK(equal_up_to_unit_and_lsign(res.factor, flipped, lv));
    CHECK(equal_up_to_unit_and_lsign(res.factor, -res.factor, lv));
    CHECK(equal_up_to_unit_and_lsign(res.factor, res.factor * Poly::variable(ring, lv), lv));
    Poly other = res.factor + Poly::constant(ring, 1);
    CHECK(!equal_up_to_unit_and_lsign(res.factor, other, lv));

    CHECK(reciprocal_in(res.factor, lv).str() == "m^3 + l");
}

TEST_CASE("the reduced delta argument divides the eliminant factor") {
    for (const char* name : {"trefoil.zft", "4_1.zft", "5_2.zft"}) {
        auto tri = load_fixture(name);
        auto rr = reduce_state_integral(tri);
        auto ap = apoly_factor(tri);
        CHECK(delta_divides_factor(rr.form.delta_argument, rr.form.Lvar, rr.form.Mvar, ap));
        Poly off = rr.form.delta_argument + Poly::constant(rr.form.delta_argument.ring, 1);
        CHECK(!delta_divides_factor(off, rr.form.Lvar, rr.form.Mvar, ap));
        CHECK(!delta_divides_factor(rr.form.delta_argument, rr.form.Mvar, rr.form.Lvar, ap));
    }
}
