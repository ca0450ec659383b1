#pragma once
#include "zft/bigint.hpp"
#include <optional>
#include <vector>

namespace zft {

using Mat = std::vector<std::vector<Int>>;
using Vec = std::vector<Int>;

Mat identity(int n);
Vec matvec(const Mat& A, const Vec& x);
Mat matmul(const Mat& A, const Mat& B);

// U*A*V = S with U,V unimodular and S diagonal, each entry dividing the next
struct SmithResult {
    Mat U, S, V;
    int rank() const;
};
SmithResult smith(const Mat& A);

// one integer solution of A*x = b, if any
std::optional<Vec> solve_integer(const Mat& A, const Vec& b);

// basis (as columns-of-result rows) of the integer kernel {x : A*x = 0}
std::vector<Vec> kernel_basis(const Mat& A);

// one solution of A*x = b over GF(2), if any (entries 0/1)
std::optional<std::vector<int>> solve_gf2(std::vector<std::vector<int>> A, std::vector<int> b);

// expresses an exponent vector as  query = p*target_l + q*target_m + sum r_i*relation_i
// over the integers; the recombination is re-checked before returning.
struct HolonomyCombination {
    Int p, q;
    Vec r;
};
std::optional<HolonomyCombination> snf_solve(const std::vector<Vec>& relations,
                                             const Vec& target_l,
                                             const Vec& target_m,
                                             const Vec& query);

}  // namespace zft
