#include "zft/snf.hpp"
#include <cassert>
#include <stdexcept>

namespace zft {

Mat identity(int n) {
    Mat I(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

Vec matvec(const Mat& A, const Vec& x) {
    Vec r(A.size(), 0);
    for (size_t i = 0; i < A.size(); ++i) {
        assert(A[i].size() == x.size());
        for (size_t j = 0; j < x.size(); ++j) r[i] += A[i][j] * x[j];
    }
    return r;
}

Mat matmul(const Mat& A, const Mat& B) {
    size_t m = A.size(), k = B.size(), n = B.empty() ? 0 : B[0].size();
    Mat R(m, Vec(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t t = 0; t < k; ++t)
            if (A[i][t] != 0)
                for (size_t j = 0; j < n; ++j) R[i][j] += A[i][t] * B[t][j];
    return R;
}

int SmithResult::rank() const {
    int r = 0;
    for (size_t i = 0; i < S.size() && i < S[i].size(); ++i)
        if (S[i][i] != 0) ++r;
    return r;
}

namespace {

void row_op(Mat& S, Mat& U, int dst, int src, const Int& q) {   // row dst -= q*src
    for (size_t j = 0; j < S[dst].size(); ++j) S[dst][j] -= q * S[src][j];
    for (size_t j = 0; j < U[dst].size(); ++j) U[dst][j] -= q * U[src][j];
}
void col_op(Mat& S, Mat& V, int dst, int src, const Int& q) {   // col dst -= q*src
    for (size_t i = 0; i < S.size(); ++i) S[i][dst] -= q * S[i][src];
    for (size_t i = 0; i < V.size(); ++i) V[i][dst] -= q * V[i][src];
}
void row_swap(Mat& S, Mat& U, int a, int b) {
    std::swap(S[a], S[b]);
    std::swap(U[a], U[b]);
}
void col_swap(Mat& S, Mat& V, int a, int b) {
    for (auto& row : S) std::swap(row[a], row[b]);
    for (auto& row : V) std::swap(row[a], row[b]);
}

}  // namespace

SmithResult smith(const Mat& A) {
    int m = (int)A.size(), n = m ? (int)A[0].size() : 0;
    SmithResult r{identity(m), A, identity(n)};
    Mat& S = r.S;
    Mat& U = r.U;
    Mat& V = r.V;
    int t = 0;
    while (t < m && t < n) {
        // pivot: smallest |entry| in the lower-right block
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (S[i][j] != 0 && (pi < 0 || abs(S[i][j]) < best)) {
                    pi = i; pj = j; best = abs(S[i][j]);
                }
        if (pi < 0) break;
        row_swap(S, U, t, pi);
        col_swap(S, V, t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < m; ++i)
                if (S[i][t] != 0) {
                    Int q = S[i][t] / S[t][t];
                    row_op(S, U, i, t, q);
                    if (S[i][t] != 0) { row_swap(S, U, t, i); clean = false; }
                }
            for (int j = t + 1; j < n; ++j)
                if (S[t][j] != 0) {
                    Int q = S[t][j] / S[t][t];
                    col_op(S, V, j, t, q);
                    if (S[t][j] != 0) { col_swap(S, V, t, j); clean = false; }
                }
        }
        // divisibility: S[t][t] must divide everything below-right
        bool redo = false;
        for (int i = t + 1; i < m && !redo; ++i)
            for (int j = t + 1; j < n && !redo; ++j)
                if (S[i][j] % S[t][t] != 0) {
                    row_op(S, U, t, i, Int(-1));   // add row i to row t
                    redo = true;
                }
        if (redo) continue;
        if (S[t][t] < 0) {
            for (int j = 0; j < n; ++j) S[t][j] = -S[t][j];
            for (int j = 0; j < m; ++j) U[t][j] = -U[t][j];
        }
        ++t;
    }
    return r;
}

std::optional<Vec> solve_integer(const Mat& A, const Vec& b) {
    int m = (int)A.size(), n = m ? (int)A[0].size() : 0;
    if ((int)b.size() != m) throw std::invalid_argument("solve_integer: size mismatch");
    SmithResult sr = smith(A);
    Vec c = matvec(sr.U, b);
    Vec y(n, 0);
    for (int i = 0; i < m; ++i) {
        Int d = (i < n) ? sr.S[i][i] : Int(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return matvec(sr.V, y);
}

std::vector<Vec> kernel_basis(const Mat& A) {
    int m = (int)A.size(), n = m ? (int)A[0].size() : 0;
    SmithResult sr = smith(A);
    int rk = sr.rank();
    std::vector<Vec> out;
    for (int j = rk; j < n; ++j) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = sr.V[i][j];
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<std::vector<int>> solve_gf2(std::vector<std::vector<int>> A, std::vector<int> b) {
    int m = (int)A.size(), n = m ? (int)A[0].size() : 0;
    std::vector<int> pivot_col(m, -1);
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int p = -1;
        for (int i = row; i < m; ++i)
            if (A[i][col] & 1) { p = i; break; }
        if (p < 0) continue;
        std::swap(A[row], A[p]);
        std::swap(b[row], b[p]);
        for (int i = 0; i < m; ++i)
            if (i != row && (A[i][col] & 1)) {
                for (int j = col; j < n; ++j) A[i][j] ^= A[row][j];
                b[i] ^= b[row];
            }
        pivot_col[row] = col;
        ++row;
    }
    for (int i = row; i < m; ++i)
        if (b[i] & 1) return std::nullopt;
    std::vector<int> x(n, 0);
    for (int i = 0; i < row; ++i) x[pivot_col[i]] = b[i] & 1;
    return x;
}

std::optional<HolonomyCombination> snf_solve(const std::vector<Vec>& relations,
                                             const Vec& target_l,
                                             const Vec& target_m,
                                             const Vec& query) {
    const int dim = (int)query.size();
    if ((int)target_l.size() != dim || (int)target_m.size() != dim)
        throw std::invalid_argument("snf_solve: dimension mismatch");
    for (const auto& r : relations)
        if ((int)r.size() != dim)
            throw std::invalid_argument("snf_solve: dimension mismatch");
    // columns: target_l, target_m, then the relations
    Mat A(dim, Vec(2 + relations.size(), 0));
    for (int i = 0; i < dim; ++i) {
        A[i][0] = target_l[i];
        A[i][1] = target_m[i];
        for (size_t k = 0; k < relations.size(); ++k) A[i][2 + k] = relations[k][i];
    }
    auto x = solve_integer(A, query);
    if (!x) return std::nullopt;
    Vec check = matvec(A, *x);
    if (check != query) throw std::logic_error("snf_solve: recombination failed");
    HolonomyCombination out;
    out.p = (*x)[0];
    out.q = (*x)[1];
    out.r.assign(x->begin() + 2, x->end());
    return out;
}

}  // namespace zft
