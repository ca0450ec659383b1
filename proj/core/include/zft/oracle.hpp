#pragma once
#include "zft/reduce.hpp"
#include <complex>
#include <cstdint>
#include <random>

namespace zft {

using Cx = std::complex<double>;

// one numeric point on the delta support over F = C (norm |w|^2)
struct SupportSample {
    Cx mu{}, lambda{};
    std::vector<std::pair<int, Cx>> edge_values;  // (ring variable, value)
    double residual = 0;  // max |constraint| over raw deltas and the argument
    double den_min = 0;   // min |cleared denominator| at the point
};

struct OracleCheck {
    std::string name;
    bool pass = false;
    double max_error = 0;
    int samples = 0;
};

struct OracleReport {
    std::uint64_t seed = 0;
    std::vector<OracleCheck> checks;
    bool all_pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

// log-uniform modulus in [1/2, 2], uniform argument, re-drawn until the point
// clears low-order roots of unity by 1e-3 (keeps prefactor bases away from 0)
Cx draw_mu(std::mt19937_64& rng);

// roots in L of the delta argument at M = mu: companion matrix, then Newton
// polish (50 iterations, 1e-13 target)
std::vector<Cx> lambda_roots(const Poly& delta_argument, int Lvar, int Mvar, Cx mu);

// back-substitute the recorded elimination steps in reverse, units fixed at 1
SupportSample solve_edges(const ReduceResult& rr, Cx mu, Cx lambda);

// all roots at mu whose edge systems pass the residual and denominator gates
std::vector<SupportSample> support_samples(const ReduceResult& rr, Cx mu, double tol = 1e-10);

// two report entries:
//   support_on_curve  — every root at a random mu solves the raw delta system
//                       below tol (max_error = worst residual seen)
//   support_off_curve — lambda scaled by 1.01 away from every root leaves a
//                       residual above 1e3 * tol (max_error = worst margin)
std::vector<OracleCheck> check_support_equivalence(const ReduceResult& rr, int n_samples,
                                                   double tol, std::mt19937_64& rng);

// every enumerated reduction order's prefactor agrees at shared support samples
// and shared admissible real angle draws, to relative error < tol
OracleCheck check_prefactor_agreement(const Triangulation& tri,
                                      const std::vector<EnumeratedForm>& forms, int n_samples,
                                      double tol, std::mt19937_64& rng);

// full battery (fresh enumeration inside); deterministic for a fixed seed
OracleReport run_oracle(const Triangulation& tri, const ReduceResult& rr, std::uint64_t seed,
                        int n_samples = 100, double support_tol = 1e-10,
                        double prefactor_tol = 1e-8);

}  // namespace zft
