#include "zft/oracle.hpp"
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

// kept outside the library namespace: matrix expressions must not see the
// library's mixed-type operator overloads during overload resolution
namespace {

struct AffineSolve {
    bool ok = false;
    Eigen::VectorXd xp;
    Eigen::MatrixXd kernel;
    int nullity = 0;
};

AffineSolve solve_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    AffineSolve out;
    out.xp = A.colPivHouseholderQr().solve(b);
    out.ok = (A * out.xp - b).norm() <= 1e-9;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    out.kernel = lu.kernel();
    out.nullity = (int)lu.dimensionOfKernel();
    return out;
}

}  // namespace

namespace zft {

namespace {

// uniform in [0,1) straight from the engine, so runs are reproducible
// independent of the standard library's distribution implementations
double urand(std::mt19937_64& rng) { return (double)(rng() >> 11) * 0x1.0p-53; }

double rat_d(const Rat& r) { return r.convert_to<double>(); }

double eval_lin(const LinExpr& e, const std::vector<double>& x) {
    double s = rat_d(e.k);
    for (auto& [i, v] : e.c) s += rat_d(v) * x[(size_t)i];
    return s;
}

// Horner value and derivative of sum c_k L^k
std::pair<Cx, Cx> horner(const std::vector<Cx>& c, Cx x) {
    Cx f = 0, df = 0;
    for (int k = (int)c.size() - 1; k >= 0; --k) {
        df = df * x + f;
        f = f * x + c[(size_t)k];
    }
    return {f, df};
}

}  // namespace

Cx draw_mu(std::mt19937_64& rng) {
    for (;;) {
        double r = std::exp((2 * urand(rng) - 1) * std::log(2.0));
        double th = 2 * M_PI * urand(rng);
        Cx mu = std::polar(r, th);
        bool clear = true;
        Cx p = 1;
        for (int k = 1; k <= 8 && clear; ++k) {
            p *= mu;
            if (std::abs(p - Cx(1)) < 1e-3) clear = false;
        }
        if (clear) return mu;
    }
}

std::vector<Cx> lambda_roots(const Poly& delta_argument, int Lvar, int Mvar, Cx mu) {
    const int n = delta_argument.ring->size();
    std::vector<Cx> point((size_t)n, Cx(1));
    point[(size_t)Mvar] = mu;
    int d = delta_argument.degree(Lvar);
    std::vector<Cx> c((size_t)d + 1);
    double cmax = 0;
    for (int k = 0; k <= d; ++k) {
        c[(size_t)k] = delta_argument.coeff_of(Lvar, k).eval(point);
        cmax = std::max(cmax, std::abs(c[(size_t)k]));
    }
    if (cmax == 0) return {};
    while (d > 0 && std::abs(c[(size_t)d]) < 1e-13 * cmax) --d;
    c.resize((size_t)d + 1);
    if (d == 0) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -c[(size_t)i] / c[(size_t)d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<Cx> roots;
    for (int i = 0; i < d; ++i) {
        Cx z = es.eigenvalues()(i);
        for (int it = 0; it < 50; ++it) {
            auto [f, df] = horner(c, z);
            double scale = std::max(1.0, std::abs(z));
            if (std::abs(f) < 1e-13 * cmax * std::pow(scale, d)) break;
            if (df == Cx(0)) break;
            z -= f / df;
        }
        roots.push_back(z);
    }
    // deterministic order for downstream consumers
    std::sort(roots.begin(), roots.end(), [](Cx a, Cx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

SupportSample solve_edges(const ReduceResult& rr, Cx mu, Cx lambda) {
    SupportSample s;
    s.mu = mu;
    s.lambda = lambda;
    const int n = rr.rring.ring->size();
    std::vector<Cx> point((size_t)n, Cx(1));  // unit channels stay at 1
    point[(size_t)rr.rring.L] = lambda;
    point[(size_t)rr.rring.MM] = mu;
    for (auto it = rr.steps.rbegin(); it != rr.steps.rend(); ++it) {
        Cx v = it->value.eval(point);
        point[(size_t)it->var] = v;
        s.edge_values.emplace_back(it->var, v);
    }
    std::reverse(s.edge_values.begin(), s.edge_values.end());
    double res = 0;
    for (auto& d : rr.raw_deltas) res = std::max(res, std::abs(d.eval(point)));
    res = std::max(res, std::abs(rr.form.delta_argument.eval(point)));
    s.residual = res;
    double dmin = std::numeric_limits<double>::infinity();
    for (auto& den : rr.cleared_denominators) dmin = std::min(dmin, std::abs(den.eval(point)));
    s.den_min = dmin;
    return s;
}

std::vector<SupportSample> support_samples(const ReduceResult& rr, Cx mu, double tol) {
    std::vector<SupportSample> out;
    for (Cx lam : lambda_roots(rr.form.delta_argument, rr.rring.L, rr.rring.MM, mu)) {
        SupportSample s = solve_edges(rr, mu, lam);
        if (s.residual < tol && s.den_min > 1e-6) out.push_back(std::move(s));
    }
    return out;
}

std::vector<OracleCheck> check_support_equivalence(const ReduceResult& rr, int n_samples,
                                                   double tol, std::mt19937_64& rng) {
    OracleCheck on{"support_on_curve", true, 0, 0};
    OracleCheck off{"support_off_curve", true, std::numeric_limits<double>::infinity(), 0};
    int done = 0, tries = 0;
    const int try_cap = 50 * n_samples + 100;
    while (done < n_samples && tries < try_cap) {
        ++tries;
        Cx mu = draw_mu(rng);
        auto roots = lambda_roots(rr.form.delta_argument, rr.rring.L, rr.rring.MM, mu);
        if (roots.empty()) continue;
        std::vector<SupportSample> samples;
        bool den_ok = true;
        for (Cx lam : roots) {
            SupportSample s = solve_edges(rr, mu, lam);
            if (!(s.den_min > 1e-6)) { den_ok = false; break; }
            samples.push_back(std::move(s));
        }
        if (!den_ok) continue;  // measure-zero denominator hit: re-draw mu
        for (auto& s : samples) {
            on.max_error = std::max(on.max_error, s.residual);
            if (!(s.residual < tol)) on.pass = false;
            // push the root off the curve, away from every other root too
            Cx lam_off = std::abs(s.lambda) < 1e-9 ? s.lambda + 0.01 : s.lambda * 1.01;
            for (int guard = 0; guard < 20; ++guard) {
                double dist = std::numeric_limits<double>::infinity();
                for (Cx r : roots) dist = std::min(dist, std::abs(lam_off - r));
                if (dist > 1e-6 * (1 + std::abs(lam_off))) break;
                lam_off *= 1.01;
            }
            SupportSample so = solve_edges(rr, mu, lam_off);
            off.max_error = std::min(off.max_error, so.residual);
            if (!(so.residual > 1e3 * tol)) off.pass = false;
        }
        ++done;
    }
    on.samples = off.samples = done;
    if (done < n_samples) on.pass = off.pass = false;
    return {on, off};
}

OracleCheck check_prefactor_agreement(const Triangulation& tri,
                                      const std::vector<EnumeratedForm>& forms, int n_samples,
                                      double tol, std::mt19937_64& rng) {
    OracleCheck ck{"prefactor_agreement", true, 0, 0};
    if (forms.size() < 2) { ck.pass = false; return ck; }
    RealAngleRelations rel = real_angle_relations(tri);
    const int S = rel.symbol_count;
    const int rows = (int)rel.balance_zero.size();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, S);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
    for (int r = 0; r < rows; ++r) {
        for (auto& [i, v] : rel.balance_zero[(size_t)r].c) A(r, i) = rat_d(v);
        b(r) = -rat_d(rel.balance_zero[(size_t)r].k);
    }
    AffineSolve ls = solve_affine(A, b);
    if (!ls.ok) { ck.pass = false; return ck; }
    const Eigen::MatrixXd& K = ls.kernel;
    const int nullity = ls.nullity;
    const Eigen::VectorXd& xp = ls.xp;
    const ReduceResult& rr0 = forms.front().result;
    int done = 0, tries = 0;
    const int try_cap = 50 * n_samples + 100;
    while (done < n_samples && tries < try_cap) {
        ++tries;
        Cx mu = draw_mu(rng);
        auto pts = support_samples(rr0, mu);
        if (pts.empty()) continue;
        Cx lambda = pts.front().lambda;
        // all prefactor bases must stay away from 0 at the shared point
        bool base_ok = true;
        std::vector<std::vector<double>> lognorms(forms.size());
        for (size_t f = 0; f < forms.size() && base_ok; ++f) {
            const auto& cf = forms[f].result.form;
            std::vector<Cx> point((size_t)cf.ring->size(), Cx(1));
            point[(size_t)cf.Lvar] = lambda;
            point[(size_t)cf.Mvar] = mu;
            for (auto& nf : cf.prefactor) {
                Cx v = nf.base.eval(point);
                if (std::abs(v) < 1e-9) { base_ok = false; break; }
                lognorms[f].push_back(2.0 * std::log(std::abs(v)));  // ln ||v||, d = 2
            }
        }
        if (!base_ok) continue;
        // shared admissible real angle draw -> holonomy values
        std::vector<double> x((size_t)S);
        for (int i = 0; i < S; ++i) x[(size_t)i] = xp(i);
        for (int j = 0; j < nullity; ++j) {
            double t = 2 * urand(rng) - 1;
            for (int i = 0; i < S; ++i) x[(size_t)i] += t * K(i, j);
        }
        std::vector<double> hol = {eval_lin(rel.ldot, x), eval_lin(rel.mdot, x)};
        std::vector<double> vals(forms.size(), 0.0);
        for (size_t f = 0; f < forms.size(); ++f)
            for (size_t k = 0; k < forms[f].result.form.prefactor.size(); ++k)
                vals[f] += eval_lin(forms[f].result.form.prefactor[k].exponent, hol) * lognorms[f][k];
        for (size_t i = 0; i < vals.size(); ++i)
            for (size_t j = i + 1; j < vals.size(); ++j) {
                double rel_err = std::abs(vals[i] - vals[j]) /
                                 std::max({1.0, std::abs(vals[i]), std::abs(vals[j])});
                ck.max_error = std::max(ck.max_error, rel_err);
                if (!(rel_err < tol)) ck.pass = false;
            }
        ++done;
    }
    ck.samples = done;
    if (done < n_samples) ck.pass = false;
    return ck;
}

OracleReport run_oracle(const Triangulation& tri, const ReduceResult& rr, std::uint64_t seed,
                        int n_samples, double support_tol, double prefactor_tol) {
    OracleReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    for (auto& c : check_support_equivalence(rr, n_samples, support_tol, rng))
        rep.checks.push_back(std::move(c));
    auto forms = enumerate_reductions(tri);
    rep.checks.push_back(check_prefactor_agreement(tri, forms, 20, prefactor_tol, rng));
    return rep;
}

}  // namespace zft
