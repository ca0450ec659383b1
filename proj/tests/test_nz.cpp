#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixture.h"
#include "zft/nz.hpp"

using namespace zft;

TEST_CASE("trefoil gluing matrices") {
    auto nz = gluing_matrices(load_fixture("trefoil.zft"));
    CHECK(nz.edges() == 2);
    CHECK(nz.tets() == 2);
    CHECK(nz.A == Mat{{2, 2}, {0, 0}});
    CHECK(nz.B == Mat{{2, 2}, {0, 0}});
    CHECK(nz.C == Mat{{1, 1}, {1, 1}});
    CHECK(nz.Aprime == Mat{{1, 1}, {-1, -1}});
    CHECK(nz.Bprime == Mat{{1, 1}, {-1, -1}});
    CHECK(nz.signs == std::vector<int>{1, 1});
    CHECK(nz.meridian_abc[0] == std::array<Int, 3>{-1, 0, 0});
    CHECK(nz.meridian_abc[1] == std::array<Int, 3>{1, 0, 0});
}

TEST_CASE("column sums are two for every angle type") {
    for (const char* name : {"trefoil.zft", "4_1.zft", "5_2.zft"}) {
        auto nz = gluing_matrices(load_fixture(name));
        for (int j = 0; j < nz.tets(); ++j) {
            Int sa = 0, sb = 0, sc = 0;
            for (int e = 0; e < nz.edges(); ++e) {
                sa += nz.A[e][j];
                sb += nz.B[e][j];
                sc += nz.C[e][j];
            }
            CHECK(sa == 2);
            CHECK(sb == 2);
            CHECK(sc == 2);
        }
    }
}

TEST_CASE("symplectic identity holds on all fixtures") {
    for (const char* name : {"trefoil.zft", "4_1.zft", "5_2.zft"}) {
        auto rep = check_symplectic(gluing_matrices(load_fixture(name)));
        CHECK(rep.ok);
        for (const auto& row : rep.witness)
            for (const auto& v : row) CHECK(v == 0);
    }
}

TEST_CASE("symplectic check reports a witness on bad data") {
    NZData nz;
    nz.A = Mat{{0, 0}, {0, 0}};   // carries the edge/tet dimensions
    nz.Aprime = Mat{{0, 1}, {0, 0}};
    nz.Bprime = Mat{{1, 0}, {0, 1}};
    nz.edge_names = {"s", "t"};
    auto rep = check_symplectic(nz);
    CHECK(!rep.ok);
    CHECK(rep.witness == Mat{{0, 1}, {-1, 0}});
}

TEST_CASE("quad rotation relabels the angle roles cyclically") {
    auto nz = gluing_matrices(load_fixture("trefoil.zft"));
    QuadChoice q{{1, 2}};
    auto rot = apply_quad(nz, q);
    for (int e = 0; e < nz.edges(); ++e) {
        CHECK(rot.A[e][0] == nz.B[e][0]);  // rotation 1: (A,B,C) <- (B,C,A)
        CHECK(rot.B[e][0] == nz.C[e][0]);
        CHECK(rot.C[e][0] == nz.A[e][0]);
        CHECK(rot.A[e][1] == nz.C[e][1]);  // rotation 2: (A,B,C) <- (C,A,B)
        CHECK(rot.B[e][1] == nz.A[e][1]);
        CHECK(rot.C[e][1] == nz.B[e][1]);
    }
    CHECK(rot.meridian_abc[0] == std::array<Int, 3>{0, 0, -1});
}

TEST_CASE("integer determinant") {
    CHECK(int_det(Mat{{1, 0}, {0, 1}}) == 1);
    CHECK(int_det(Mat{{2, 3}, {1, 4}}) == 5);
    CHECK(int_det(Mat{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
    CHECK(int_det(Mat{{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("an invertible reduced system exists for every fixture") {
    for (const char* name : {"trefoil.zft", "4_1.zft", "5_2.zft"}) {
        auto nz = gluing_matrices(load_fixture(name));
        auto red = choose_quad(nz);
        CHECK(red.detBred != 0);
        CHECK((int)red.Ared.size() == nz.tets());
        CHECK((int)red.Bred.size() == nz.tets());
        CHECK(red.detBred == int_det(red.Bred));
    }
}

TEST_CASE("trefoil quad choice is deterministic") {
    auto red = choose_quad(gluing_matrices(load_fixture("trefoil.zft")));
    CHECK(red.quad.rotation == std::vector<int>{0, 1});
    CHECK(red.dropped_edge_row == 0);
    CHECK(red.detBred == 1);
}

TEST_CASE("change of variables holds numerically") {
    for (const char* name : {"trefoil.zft", "5_2.zft"}) {
        auto rep = verify_change_of_variables(load_fixture(name), 20, 1e-10);
        CHECK(rep.pass);
        CHECK(rep.samples == 20);
        CHECK(rep.max_residual_change < 1e-10);
        CHECK(rep.max_residual_balance < 1e-10);
    }
}

TEST_CASE("change of variables needs positively oriented tetrahedra") {
    CHECK_THROWS_AS(verify_change_of_variables(load_fixture("4_1.zft"), 5, 1e-10),
                    PreconditionViolated);
}

TEST_CASE("broken angle balance is detected") {
    auto rep = verify_change_of_variables(load_fixture("trefoil.zft"), 5, 1e-10, 0, 3.0);
    CHECK(!rep.pass);
    CHECK(rep.max_residual_balance > 1e-6);
}
