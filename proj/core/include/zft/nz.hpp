#pragma once
#include "zft/snf.hpp"
#include "zft/triangulation.hpp"
#include <array>

namespace zft {

// gluing-exponent data: rows = edge classes, columns = tetrahedra
struct NZData {
    Mat A, B, C;            // slot-occurrence counts, column sums (2,2,2)
    Mat Aprime, Bprime;     // A - C, B - C
    std::vector<std::array<Int, 3>> meridian_abc, longitude_abc;  // per-tet coefficients
    std::vector<int> signs;
    std::vector<std::string> edge_names;
    int edges() const { return (int)A.size(); }
    int tets() const { return A.empty() ? 0 : (int)A[0].size(); }
};

NZData gluing_matrices(const Triangulation& tri);

struct SymplecticReport {
    bool ok;
    Mat witness;   // Aprime*Bprime^T - Bprime*Aprime^T
};
SymplecticReport check_symplectic(const NZData& nz);

// per-tet cyclic relabeling of which opposite-edge pair plays the first role:
// rotation 1 reads (A,B,C) columns as (B,C,A), rotation 2 as (C,A,B);
// holonomy coefficient triples shift the same way
struct QuadChoice {
    std::vector<int> rotation;
};
NZData apply_quad(const NZData& nz, const QuadChoice& q);

struct ReducedNZ {
    QuadChoice quad;
    int dropped_edge_row;
    Mat Ared, Bred;   // N x N: retained Aprime/Bprime rows, meridian row last
    Int detBred;
};

struct NoInvertibleQuad : std::runtime_error {
    NoInvertibleQuad() : std::runtime_error("no quad rotation yields an invertible reduced B matrix") {}
};

// exhaustive search over 3^N rotations x N dropped rows, lexicographic;
// first candidate with nonzero determinant wins
ReducedNZ choose_quad(const NZData& nz);

Int int_det(const Mat& m);

struct PreconditionViolated : std::runtime_error {
    explicit PreconditionViolated(const std::string& w) : std::runtime_error(w) {}
};
struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& w) : std::runtime_error(w) {}
};

struct ChangeOfVariablesReport {
    int samples = 0;
    double max_residual_change = 0;    // -B + Ared^T*E - P, max norm
    double max_residual_balance = 0;   // Aprime*adot + Bprime*bdot - (2*1 - C*1), max norm
    bool pass = false;
};

// draws balanced positive multiplicative angles and real angle parts, solves
// E from the reduced system, and checks both identities numerically.
// balance_value != 2 deliberately breaks the real balance (for failure tests).
ChangeOfVariablesReport verify_change_of_variables(const Triangulation& tri, int samples,
                                                   double tol, unsigned seed = 0,
                                                   double balance_value = 2.0);

}  // namespace zft
