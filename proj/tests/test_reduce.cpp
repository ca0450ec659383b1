#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixture.h"
#include "zft/reduce.hpp"
#include <set>

using namespace zft;

namespace {
std::string prefactor_str(const ClosedForm& f) {
    auto names = holonomy_symbol_names();
    std::string out;
    for (const auto& nf : f.prefactor)
        out += "||" + nf.base.str() + "||^(" + nf.exponent.str(names) + ") ";
    return out;
}
}  // namespace

TEST_CASE("real exponents reduce to the peripheral basis on the trefoil") {
    auto rel = real_angle_relations(load_fixture("trefoil.zft"));
    CHECK(rel.symbol_count == 4);  // adot0, cdot0, adot1, cdot1
    // cdot0 + cdot1 is pinned to 2 by the edge balance
    LinExpr csum = LinExpr::sym(1) + LinExpr::sym(3);
    CHECK(reduce_real_exponent(csum, rel) == LinExpr(Rat(2)));
    // the longitude row itself
    LinExpr lrow = LinExpr::sym(0) * Rat(2) - LinExpr::sym(2) * Rat(2) - LinExpr::sym(1);
    CHECK(reduce_real_exponent(lrow, rel) == LinExpr::sym(0));
    // the meridian row
    LinExpr mrow = LinExpr::sym(2) - LinExpr::sym(0);
    CHECK(reduce_real_exponent(mrow, rel) == LinExpr::sym(1));
}

TEST_CASE("closed form of the trefoil") {
    auto rr = reduce_state_integral(load_fixture("trefoil.zft"));
    CHECK(rr.form.str() == "||L||^(mdot) ||M||^(-ldot - 1) delta(L*M^3 + 1)");
    CHECK(rr.gauge_edge == 1);
    REQUIRE(rr.form.prefactor.size() == 2);
    CHECK(rr.form.prefactor[0].base.str() == "L");
    CHECK(rr.form.prefactor[0].exponent == LinExpr::sym(1));
    CHECK(rr.form.prefactor[1].base.str() == "M");
    CHECK(rr.form.prefactor[1].exponent == -LinExpr::sym(0) - LinExpr(Rat(1)));
    REQUIRE(rr.steps.size() == 1);
    CHECK(rr.rring.ring->name(rr.steps[0].var) == "x_s");
    CHECK(rr.steps[0].value.str() == "L*M^2/(L*M^2*u1 - u1)");
    CHECK(rr.raw_deltas.size() == 2);
    CHECK(!rr.trace.empty());
    CHECK(rr.trace.back() == "delta argument: L*M^3 + 1");
}

TEST_CASE("closed form of the figure-eight complement") {
    auto rr = reduce_state_integral(load_fixture("4_1.zft"));
    CHECK(rr.form.str() ==
          "||L||^(mdot + 1) ||M||^(-ldot + 3) ||M - 1||^(1) ||M + 1||^(1) "
          "delta(L*M^4 + L^2*M^2 - L*M^3 - 2*L*M^2 - L*M + M^2 + L)");
}

TEST_CASE("closed form of the three-tetrahedron census knot") {
    auto rr = reduce_state_integral(load_fixture("5_2.zft"));
    CHECK(rr.form.str() ==
          "||L||^(mdot + 1) ||M||^(-ldot + 2) ||M - 1||^(1) ||M + 1||^(1) ||L*M^3 + 1||^(1) "
          "delta(L^3*M^7 - L^2*M^7 + 2*L^2*M^6 + 2*L^2*M^5 + L*M^5 - L^2*M^3 - L*M^4 + "
          "L^2*M^2 + 2*L*M^2 + 2*L*M - L + 1)");
}

TEST_CASE("every gauge and elimination order yields the same delta argument") {
    struct Expect {
        const char* file;
        size_t combos;
        size_t classes;
    };
    for (auto [file, combos, classes] :
         {Expect{"trefoil.zft", 4, 2}, Expect{"4_1.zft", 4, 1}, Expect{"5_2.zft", 12, 1}}) {
        auto tri = load_fixture(file);
        auto forms = enumerate_reductions(tri);
        CHECK(forms.size() == combos);
        std::set<std::string> deltas, prefs;
        for (const auto& f : forms) {
            deltas.insert(f.result.form.delta_argument.str());
            prefs.insert(prefactor_str(f.result.form));
        }
        CHECK(deltas.size() == 1);
        CHECK(prefs.size() == classes);
        CHECK(*deltas.begin() == reduce_state_integral(tri).form.delta_argument.str());
    }
}

TEST_CASE("trefoil prefactor classes differ by a unit on the support") {
    auto forms = enumerate_reductions(load_fixture("trefoil.zft"));
    std::set<std::string> prefs;
    for (const auto& f : forms) prefs.insert(prefactor_str(f.result.form));
    CHECK(prefs == std::set<std::string>{"||L||^(mdot) ||M||^(-ldot - 1) ",
                                         "||L||^(mdot + 1) ||M||^(-ldot + 2) "});
}

TEST_CASE("gauge choice does not change the delta argument") {
    auto tri = load_fixture("5_2.zft");
    auto base = reduce_state_integral(tri).form.delta_argument;
    for (int gauge = 0; gauge < tri.edge_count(); ++gauge) {
        ReduceOptions opts;
        opts.gauge_edge = gauge;
        CHECK(reduce_state_integral(tri, opts).form.delta_argument == base);
    }
}

TEST_CASE("explicit elimination orders") {
    auto tri = load_fixture("trefoil.zft");
    ReduceOptions ok;
    ok.order = std::vector<std::pair<int, int>>{{1, 0}};  // solve the second delta for x_s
    auto rr = reduce_state_integral(tri, ok);
    CHECK(rr.form.delta_argument.str() == "L*M^3 + 1");

    ReduceOptions bad;
    bad.order = std::vector<std::pair<int, int>>{{0, 1}};  // edge 1 is gauge-fixed
    CHECK(!try_reduce(tri, bad).has_value());
    CHECK_THROWS_AS(reduce_state_integral(tri, bad), InadmissibleOrder);

    ReduceOptions oob;
    oob.order = std::vector<std::pair<int, int>>{{0, 7}};
    CHECK_THROWS_AS(reduce_state_integral(tri, oob), std::out_of_range);
}
