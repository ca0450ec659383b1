#include "zft/reduce.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "zft/nz.hpp"
#include "zft/polyops.hpp"
#include "zft/snf.hpp"

namespace zft {

// ---- real-part bookkeeping -------------------------------------------------

std::vector<std::string> real_symbol_names(int tet_count) {
    std::vector<std::string> names;
    for (int j = 0; j < tet_count; ++j) {
        names.push_back("adot" + std::to_string(j));
        names.push_back("cdot" + std::to_string(j));
    }
    return names;
}

std::vector<std::string> holonomy_symbol_names() { return {"ldot", "mdot"}; }

// real holonomy of an (a,b,c) coefficient row; b-parts are rewritten through
// adot + bdot + cdot = 1, so bdot never appears as a symbol.
static LinExpr real_holonomy(const std::vector<Int>& row, int n) {
    LinExpr out;
    for (int j = 0; j < n; ++j) {
        Rat a(row[3 * j]), b(row[3 * j + 1]), c(row[3 * j + 2]);
        out = out + LinExpr::sym(2 * j, a - b) + LinExpr::sym(2 * j + 1, c - b) +
              LinExpr(b);
    }
    return out;
}

RealAngleRelations real_angle_relations(const Triangulation& tri) {
    const int n = tri.tet_count();
    NZData nz = gluing_matrices(tri);
    RealAngleRelations rel;
    rel.symbol_count = 2 * n;
    for (int i = 0; i < (int)nz.edges(); ++i) {
        LinExpr e;
        Rat bsum = 0;
        for (int j = 0; j < n; ++j) {
            e = e + LinExpr::sym(2 * j, Rat(nz.A[i][j] - nz.B[i][j])) +
                LinExpr::sym(2 * j + 1, Rat(nz.C[i][j] - nz.B[i][j]));
            bsum += Rat(nz.B[i][j]);
        }
        e = e + LinExpr(bsum - 2);   // row sums to 2 on the shape space
        rel.balance_zero.push_back(e);
    }
    rel.ldot = real_holonomy(tri.longitude.coeff, n);
    rel.mdot = real_holonomy(tri.meridian.coeff, n);
    return rel;
}

LinExpr reduce_real_exponent(const LinExpr& expr, const RealAngleRelations& rel) {
    // solve  expr = sum d_i * balance_i + c_l * ldot + c_m * mdot + c_0
    // unknown column order: all d_i first so holonomy coefficients are reached
    // only when forced (they must be pivot columns for uniqueness).
    const int nrel = (int)rel.balance_zero.size();
    const int ncols = nrel + 3;                  // d..., c_l, c_m, c_0
    const int nrows = rel.symbol_count + 1;      // one per symbol, one constant
    auto coord = [&](const LinExpr& e, int row) -> Rat {
        if (row == rel.symbol_count) return e.k;
        auto it = e.c.find(row);
        return it == e.c.end() ? Rat(0) : it->second;
    };
    std::vector<std::vector<Rat>> m(nrows, std::vector<Rat>(ncols + 1, Rat(0)));
    for (int r = 0; r < nrows; ++r) {
        for (int i = 0; i < nrel; ++i) m[r][i] = coord(rel.balance_zero[i], r);
        m[r][nrel] = coord(rel.ldot, r);
        m[r][nrel + 1] = coord(rel.mdot, r);
        m[r][nrel + 2] = (r == rel.symbol_count) ? Rat(1) : Rat(0);
        m[r][ncols] = coord(expr, r);
    }
    std::vector<int> pivot_row(ncols, -1);
    int r = 0;
    for (int col = 0; col < ncols && r < nrows; ++col) {
        int pr = -1;
        for (int i = r; i < nrows; ++i)
            if (m[i][col] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        Rat lead = m[r][col];
        for (int c2 = col; c2 <= ncols; ++c2) m[r][c2] /= lead;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (int c2 = col; c2 <= ncols; ++c2) m[i][c2] -= f * m[r][c2];
        }
        pivot_row[col] = r;
        ++r;
    }
    for (int i = r; i < nrows; ++i)
        if (m[i][ncols] != 0)
            throw InconsistentRelations(
                "exponent is not a combination of the holonomies and balance "
                "relations");
    for (int col = nrel; col < ncols; ++col)
        if (pivot_row[col] < 0)
            throw NotExpressible("holonomy exponent basis is degenerate");
    // free relation columns are set to zero, so pivot rows read off directly
    Rat cl = m[pivot_row[nrel]][ncols];
    Rat cm = m[pivot_row[nrel + 1]][ncols];
    Rat c0 = m[pivot_row[nrel + 2]][ncols];
    // a free d-column contributing to a pivot row would make these ambiguous
    for (int col = 0; col < nrel; ++col) {
        if (pivot_row[col] >= 0) continue;
        for (int hc = nrel; hc < ncols; ++hc)
            if (m[pivot_row[hc]][col] != 0)
                throw NotExpressible("holonomy exponent reduction is ambiguous");
    }
    LinExpr out(c0);
    if (cl != 0) out = out + LinExpr::sym(0, cl);
    if (cm != 0) out = out + LinExpr::sym(1, cm);
    return out;
}

// ---- multiplicative parametrization -----------------------------------------

ReductionRing make_reduction_ring(const Triangulation& tri, int unit_count) {
    std::vector<std::string> names = {"L", "M"};
    for (const auto& e : tri.edge_names) names.push_back("x_" + e);
    for (int t = 1; t <= unit_count; ++t) names.push_back("u" + std::to_string(t));
    ReductionRing rr;
    rr.ring = std::make_shared<Ring>(names);
    rr.L = 0;
    rr.MM = 1;
    for (int i = 0; i < (int)tri.edge_names.size(); ++i) rr.edge_var.push_back(2 + i);
    for (int t = 0; t < unit_count; ++t)
        rr.unit_var.push_back(2 + (int)tri.edge_names.size() + t);
    return rr;
}

static Int floordiv(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// integer row HNF of the kernel basis: increasing pivot columns, positive
// pivots, rows above reduced.  gives a deterministic unit basis and a
// canonical representative for the particular solutions.
static std::vector<Vec> hermite_rows(std::vector<Vec> rows) {
    if (rows.empty()) return rows;
    const int n = (int)rows[0].size();
    int r = 0;
    for (int col = 0; col < n && r < (int)rows.size(); ++col) {
        while (true) {
            int best = -1;
            for (int i = r; i < (int)rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best < 0 || abs(rows[i][col]) < abs(rows[best][col])) best = i;
            }
            if (best < 0) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (int i = r + 1; i < (int)rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Int q = rows[i][col] / rows[r][col];
                for (int c2 = 0; c2 < n; ++c2) rows[i][c2] -= q * rows[r][c2];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][col] == 0) continue;   // column empty below r
        if (rows[r][col] < 0)
            for (int c2 = 0; c2 < n; ++c2) rows[r][c2] = -rows[r][c2];
        for (int i = 0; i < r; ++i) {
            Int q = floordiv(rows[i][col], rows[r][col]);
            if (q != 0)
                for (int c2 = 0; c2 < n; ++c2) rows[i][c2] -= q * rows[r][c2];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

static void lattice_reduce(Vec& x, const std::vector<Vec>& hnf) {
    for (const auto& b : hnf) {
        int lead = 0;
        while (lead < (int)b.size() && b[lead] == 0) ++lead;
        if (lead == (int)b.size()) continue;
        Int q = floordiv(x[lead], b[lead]);
        if (q == 0) continue;
        for (int i = 0; i < (int)b.size(); ++i) x[i] -= q * b[i];
    }
}

AngleParametrization parametrize_angles(const Triangulation& tri) {
    const int n = tri.tet_count();
    NZData nz = gluing_matrices(tri);
    const int medges = (int)nz.edges();
    // relation matrix over the 2n exponents (a_0, c_0, a_1, c_1, ...):
    // balance rows, then the longitude and meridian target rows.
    Mat S(medges + 2, Vec(2 * n, 0));
    std::vector<int> parity(medges + 2, 0);
    for (int i = 0; i < medges; ++i) {
        Int bsum = 0;
        for (int j = 0; j < n; ++j) {
            S[i][2 * j] = nz.A[i][j] - nz.B[i][j];
            S[i][2 * j + 1] = nz.C[i][j] - nz.B[i][j];
            bsum += nz.B[i][j];
        }
        parity[i] = (int)(bsum % 2);
    }
    auto fill_target = [&](int row, const std::vector<std::array<Int, 3>>& abc) {
        Int bsum = 0;
        for (int j = 0; j < n; ++j) {
            S[row][2 * j] = abc[j][0] - abc[j][1];
            S[row][2 * j + 1] = abc[j][2] - abc[j][1];
            bsum += abc[j][1];
        }
        Int p = bsum % 2;
        if (p < 0) p += 2;
        parity[row] = (int)p;
    };
    fill_target(medges, nz.longitude_abc);
    fill_target(medges + 1, nz.meridian_abc);

    Vec el(medges + 2, 0), em(medges + 2, 0);
    el[medges] = 1;
    em[medges + 1] = 1;
    auto P = solve_integer(S, el);
    auto Q = solve_integer(S, em);
    if (!P || !Q)
        throw NotExpressible(
            "cusp holonomies are not expressible in the dihedral parameters");
    std::vector<Vec> units = hermite_rows(kernel_basis(S));
    lattice_reduce(*P, units);
    lattice_reduce(*Q, units);

    std::vector<std::vector<int>> S2(medges + 2, std::vector<int>(2 * n));
    for (int i = 0; i < medges + 2; ++i)
        for (int k = 0; k < 2 * n; ++k) {
            Int v = S[i][k] % 2;
            if (v < 0) v += 2;
            S2[i][k] = (int)v;
        }
    auto sigma = solve_gf2(S2, parity);
    if (!sigma)
        throw NotExpressible("no consistent sign assignment for the parameters");

    // defensive recombination check of all three solves
    for (int i = 0; i < medges + 2; ++i) {
        Int sl = 0, sm = 0;
        int sp = 0;
        for (int k = 0; k < 2 * n; ++k) {
            sl += S[i][k] * (*P)[k];
            sm += S[i][k] * (*Q)[k];
            sp ^= (int)(((S[i][k] % 2) + 2) % 2) & (*sigma)[k];
        }
        if (sl != el[i] || sm != em[i] || sp != parity[i])
            throw NotExpressible("parametrization recombination check failed");
        for (const auto& u : units) {
            Int su = 0;
            for (int k = 0; k < 2 * n; ++k) su += S[i][k] * u[k];
            if (su != 0)
                throw NotExpressible("unit basis recombination check failed");
        }
    }

    ReductionRing rr = make_reduction_ring(tri, (int)units.size());
    AngleParametrization par;
    par.ring = rr.ring;
    par.unit_count = (int)units.size();
    auto monomial = [&](int k) -> RatFn {
        RatFn f = RatFn::constant(rr.ring, (*sigma)[k] ? Rat(-1) : Rat(1));
        auto mul_pow = [&](int var, const Int& e) {
            if (e == 0) return;
            int ei = (int)e;
            f = f * RatFn::variable(rr.ring, var, ei);
        };
        mul_pow(rr.L, (*P)[k]);
        mul_pow(rr.MM, (*Q)[k]);
        for (int t = 0; t < (int)units.size(); ++t)
            mul_pow(rr.unit_var[t], units[t][k]);
        return f;
    };
    for (int j = 0; j < n; ++j) {
        par.a_par.push_back(monomial(2 * j));
        par.c_par.push_back(monomial(2 * j + 1));
    }
    return par;
}

// ---- ledger -----------------------------------------------------------------

static Poly pos_primitive(const Poly& p) { return primitive_part(p); }

void Ledger::add_var(int v, const LinExpr& e) {
    if (e.is_zero()) return;
    auto it = vars_.find(v);
    if (it == vars_.end()) vars_.emplace(v, e);
    else it->second = it->second + e;
}

void Ledger::add_int(const Int& n, const LinExpr& e) {
    if (n == 1 || e.is_zero()) return;
    if (n <= 0) throw std::logic_error("ledger: nonpositive integer base");
    for (const auto& [p, k] : factor_int(n)) {
        auto it = ints_.find(p);
        LinExpr add = e * Rat(k);
        if (it == ints_.end()) ints_.emplace(p, add);
        else it->second = it->second + add;
    }
}

void Ledger::add_base(Poly p, const LinExpr& e) {
    std::vector<std::pair<Poly, LinExpr>> todo;
    todo.emplace_back(pos_primitive(std::move(p)), e);
    while (!todo.empty()) {
        auto [cur, ce] = todo.back();
        todo.pop_back();
        if (cur.is_constant()) {
            if (!cur.is_zero() && !(cur.constant_value() == 1))
                add_int(abs(cur.constant_value()), ce);
            continue;
        }
        auto pieces = split_binomial(cur);
        if (pieces.size() > 1) {
            for (auto& q : pieces) todo.emplace_back(pos_primitive(q), ce);
            continue;
        }
        bool absorbed = false;
        bool rescan = true;
        while (rescan && !absorbed) {
            rescan = false;
            for (size_t i = 0; i < bases_.size(); ++i) {
                const Poly& b = bases_[i].first;
                if (b == cur) {
                    bases_[i].second = bases_[i].second + ce;
                    absorbed = true;
                    break;
                }
                Poly g = poly_gcd(cur, b);
                if (g.is_constant()) continue;
                if (g == b) {
                    auto q = exact_divide(cur, b);
                    if (!q) throw std::logic_error("ledger: gcd division failed");
                    bases_[i].second = bases_[i].second + ce;
                    cur = pos_primitive(*q);
                    if (cur.is_constant()) absorbed = true;
                    rescan = true;
                    break;
                }
                // proper common factor: split the stored base, then rescan
                auto q = exact_divide(b, g);
                if (!q) throw std::logic_error("ledger: base split failed");
                LinExpr be = bases_[i].second;
                bases_[i] = {g, be};
                bases_.emplace_back(pos_primitive(*q), be);
                rescan = true;
                break;
            }
        }
        if (!absorbed) bases_.emplace_back(cur, ce);
    }
}

void Ledger::add_factors(const Poly& p, const LinExpr& e) {
    if (p.is_zero()) throw std::logic_error("ledger: zero base");
    if (e.is_zero()) return;
    Int c = p.content();
    add_int(c < 0 ? Int(-c) : c, e);
    Mono mc = p.monomial_content();
    for (size_t v = 0; v < mc.size(); ++v)
        if (mc[v] > 0) add_var((int)v, e * Rat(mc[v]));
    Poly q = pos_primitive(p.shift_down(mc));
    if (q.is_constant()) return;
    for (const auto& [f, mult] : squarefree_decomposition(q))
        add_base(f, e * Rat(mult));
}

void Ledger::add_factors(const RatFn& f, const LinExpr& e) {
    add_factors(f.num, e);
    if (!(f.den.is_constant() && f.den.constant_value() == 1))
        add_factors(f.den, -e);
}

void Ledger::substitute(int v, const RatFn& value) {
    auto it = vars_.find(v);
    if (it != vars_.end()) {
        LinExpr e = it->second;
        vars_.erase(it);
        if (value.is_zero()) throw std::logic_error("ledger: zero substitution");
        add_factors(value, e);
    }
    std::vector<std::pair<Poly, LinExpr>> old;
    old.swap(bases_);
    for (auto& [b, e] : old) {
        if (!b.has(v)) {
            add_base(std::move(b), e);
            continue;
        }
        RatFn sub = subst(b, v, value);
        if (sub.is_zero()) throw std::logic_error("ledger: base vanished");
        add_factors(sub, e);
    }
}

bool Ledger::covers(const Poly& p) const {
    Poly q = pos_primitive(p);
    for (const auto& [b, e] : bases_) {
        (void)e;
        if (poly_gcd(q, b) == q) return true;
    }
    return false;
}

// ---- reduction --------------------------------------------------------------

namespace {

struct Work {
    ReductionRing rring;
    Ledger ledger;
    std::vector<Poly> deltas;         // cleared arguments
    std::vector<Poly> den_log;
    std::vector<std::string> trace;

    explicit Work(ReductionRing rr) : rring(std::move(rr)), ledger(rring.ring) {}

    Poly clear_delta(const RatFn& d) {
        ledger.add_factors(d.den, LinExpr(Rat(1)));
        if (!(d.den.is_constant() && d.den.constant_value() == 1))
            den_log.push_back(d.den);
        Poly num = d.num;
        if (num.is_zero()) return num;
        Int c = num.content();
        Int ac = c < 0 ? Int(-c) : c;
        if (ac != 1) ledger.add_int(ac, LinExpr(Rat(-1)));
        Mono mc = num.monomial_content();
        for (size_t v = 0; v < mc.size(); ++v)
            if (mc[v] > 0) ledger.add_var((int)v, LinExpr(Rat(-mc[v])));
        return pos_primitive(num.shift_down(mc));
    }

    // lower deg_v(f) by pseudo-division against g; +k * ||lc_v(g)|| per step
    Poly modular_reduce(Poly f, const Poly& g, int v) {
        while (f.degree(v) > 1 && g.degree(v) >= 1 && f.degree(v) >= g.degree(v)) {
            int k = f.degree(v) - g.degree(v) + 1;
            Poly lcg = g.coeff_of(v, g.degree(v));
            Poly r = prem(f, g, v);
            ledger.add_factors(lcg, LinExpr(Rat(k)));
            f = clear_delta(RatFn(r));
        }
        return f;
    }
};

std::string var_name(const RingPtr& ring, int v) { return ring->name(v); }

}  // namespace

std::optional<ReduceResult> try_reduce(const Triangulation& tri,
                                       const ReduceOptions& opts) {
    const int n = tri.tet_count();
    const int medges = tri.edge_count();
    int gauge = opts.gauge_edge < 0 ? medges - 1 : opts.gauge_edge;
    if (gauge >= medges) throw std::out_of_range("gauge edge out of range");

    AngleParametrization par = parametrize_angles(tri);
    ReductionRing rr = make_reduction_ring(tri, par.unit_count);

    ReduceResult res;
    res.rring = rr;
    res.angles = par;
    res.gauge_edge = gauge;

    Work w(rr);
    w.trace.push_back("gauge: " + var_name(rr.ring, rr.edge_var[gauge]) + " = 1");
    for (int j = 0; j < n; ++j)
        w.trace.push_back("a[" + std::to_string(j) + "] = " + par.a_par[j].str() +
                          "; c[" + std::to_string(j) + "] = " + par.c_par[j].str());

    // quad ratio monomials over the live edge variables (gauge edge := 1)
    auto edge_factor = [&](int e, int exp) -> RatFn {
        if (e == gauge) return RatFn::constant(rr.ring, 1);
        return RatFn::variable(rr.ring, rr.edge_var[e], exp);
    };
    const RatFn one = RatFn::constant(rr.ring, 1);
    for (int j = 0; j < n; ++j) {
        const auto& s = tri.tets[j].slots;
        RatFn X = edge_factor(s[1], 1) * edge_factor(s[4], 1) *
                  edge_factor(s[2], -1) * edge_factor(s[3], -1);
        RatFn Z = edge_factor(s[0], 1) * edge_factor(s[5], 1) *
                  edge_factor(s[1], -1) * edge_factor(s[4], -1);
        LinExpr adot = LinExpr::sym(2 * j), cdot = LinExpr::sym(2 * j + 1);
        RatFn raw(rr.ring);
        if (tri.tets[j].sign > 0) {
            RatFn wa = X * par.a_par[j];
            RatFn wc = Z * par.c_par[j];
            raw = wa.inv() + wc - one;
            res.weights.emplace_back(wa, -cdot);
            res.weights.emplace_back(wc, adot);
        } else {
            RatFn wa = par.a_par[j] / X;
            RatFn wc = Z / par.c_par[j];
            raw = wa + wc - one;
            res.weights.emplace_back(wa, cdot);
            res.weights.emplace_back(wc, adot);
        }
        w.ledger.add_factors(res.weights[res.weights.size() - 2].first,
                             res.weights[res.weights.size() - 2].second);
        w.ledger.add_factors(res.weights.back().first, res.weights.back().second);
        res.raw_deltas.push_back(raw);
        w.trace.push_back("delta[" + std::to_string(j) + "] raw: " + raw.str());
    }

    std::vector<int> live;
    for (int e = 0; e < medges; ++e)
        if (e != gauge) live.push_back(rr.edge_var[e]);
    res.live_vars = live;
    for (int v : live) w.ledger.add_var(v, LinExpr(Rat(-1)));   // measure

    for (const auto& d : res.raw_deltas) {
        w.deltas.push_back(w.clear_delta(d));
        w.trace.push_back("delta[" + std::to_string(w.deltas.size() - 1) +
                          "]: " + w.deltas.back().str());
    }

    std::vector<int> alive;
    for (int i = 0; i < n; ++i) alive.push_back(i);
    std::vector<std::pair<int, int>> seq;
    if (opts.order) {
        for (auto [di, e] : *opts.order) {
            if (e < 0 || e >= medges) throw std::out_of_range("order edge index");
            if (di < 0 || di >= n) throw std::out_of_range("order delta index");
            seq.emplace_back(di, rr.edge_var[e]);
        }
    }
    size_t seq_pos = 0;

    while (!live.empty()) {
        int di = -1, v = -1;
        bool row_op = false;
        if (!opts.order) {
            for (int lv : live) {
                for (int d : alive)
                    if (w.deltas[d].degree(lv) == 1) { di = d; v = lv; break; }
                if (di >= 0) break;
            }
            if (di < 0) {
                // row-operation fallback: reduce one delta against another
                for (int lv : live) {
                    std::vector<int> cands;
                    for (int d : alive)
                        if (w.deltas[d].degree(lv) >= 1) cands.push_back(d);
                    for (int d : cands) {
                        for (int e : cands) {
                            if (e == d) continue;
                            Work trial = w;   // stage ledger side effects
                            Poly f = trial.modular_reduce(w.deltas[d], w.deltas[e], lv);
                            if (f.degree(lv) == 1) {
                                w = std::move(trial);
                                w.deltas[d] = f;
                                di = d;
                                v = lv;
                                row_op = true;
                                break;
                            }
                        }
                        if (di >= 0) break;
                    }
                    if (di >= 0) break;
                }
            }
            if (di < 0) {
                std::ostringstream os;
                os << "no delta is linear in any remaining variable;";
                for (int d : alive) os << " delta[" << d << "] = " << w.deltas[d].str();
                throw NotLinear(os.str());
            }
        } else {
            if (seq_pos >= seq.size()) return std::nullopt;
            auto [d, lv] = seq[seq_pos++];
            if (std::find(alive.begin(), alive.end(), d) == alive.end()) return std::nullopt;
            if (std::find(live.begin(), live.end(), lv) == live.end()) return std::nullopt;
            if (w.deltas[d].degree(lv) < 1) return std::nullopt;
            if (w.deltas[d].degree(lv) > 1) {
                for (int e : alive) {
                    if (e == d) continue;
                    Work trial = w;
                    Poly f = trial.modular_reduce(w.deltas[d], w.deltas[e], lv);
                    if (f.degree(lv) == 1) {
                        w = std::move(trial);
                        w.deltas[d] = f;
                        row_op = true;
                        break;
                    }
                }
            }
            if (w.deltas[d].degree(lv) != 1) return std::nullopt;
            di = d;
            v = lv;
        }

        const Poly& dp = w.deltas[di];
        Poly alpha = dp.coeff_of(v, 1);
        Poly beta = -dp.coeff_of(v, 0);
        RatFn vstar(beta, alpha);
        w.ledger.add_factors(alpha, LinExpr(Rat(-1)));
        alive.erase(std::remove(alive.begin(), alive.end(), di), alive.end());
        live.erase(std::remove(live.begin(), live.end(), v), live.end());
        ReduceStep st{di, v, vstar, row_op};
        res.steps.push_back(st);
        w.trace.push_back("solve delta[" + std::to_string(di) + "] for " +
                          var_name(rr.ring, v) + ": " + var_name(rr.ring, v) +
                          " = " + vstar.str() + (row_op ? "   (row-reduced)" : ""));
        for (int d : alive) w.deltas[d] = w.clear_delta(subst(w.deltas[d], v, vstar));
        w.ledger.substitute(v, vstar);
    }

    if (alive.size() != 1) throw std::logic_error("reduction bookkeeping error");
    Poly final_poly = w.deltas[alive[0]];
    if (final_poly.is_zero())
        throw NotExpressible("final delta argument is identically zero");

    // classify the factors of the final argument: monomials and parts shared
    // with a ledger base (hence nonvanishing on the support) are pulled into
    // the prefactor; exactly one factor must remain.
    std::vector<std::pair<Poly, int>> pieces;
    for (const auto& [f, mult] : squarefree_decomposition(final_poly))
        for (const auto& b : split_binomial(f))
            pieces.emplace_back(pos_primitive(b), mult);
    std::vector<std::pair<Poly, int>> keep;
    for (auto& [piece, mult] : pieces) {
        Poly p = piece;
        if (p.is_monomial()) {
            w.ledger.add_factors(p, LinExpr(Rat(-mult)));
            res.pulls.push_back("monomial " + p.str());
            w.trace.push_back("pull ||" + p.str() + "||^(" +
                              std::to_string(-mult) + ") from the final argument");
            continue;
        }
        bool changed = true;
        while (changed && !p.is_constant()) {
            changed = false;
            for (const auto& [b, be] : w.ledger.bases()) {
                (void)be;
                Poly g = poly_gcd(p, b);
                if (g.is_constant()) continue;
                auto q = exact_divide(p, g);
                if (!q) throw std::logic_error("final classification: bad gcd");
                p = pos_primitive(*q);
                w.ledger.add_base(g, LinExpr(Rat(-mult)));
                res.pulls.push_back(g.str() + " (matches a ledger base)");
                w.trace.push_back("pull ||" + g.str() + "||^(" +
                                  std::to_string(-mult) +
                                  ") from the final argument");
                changed = true;   // base list may have been refined; rescan
                break;
            }
        }
        if (p.is_constant()) continue;   // fully absorbed by the ledger
        keep.emplace_back(p, mult);
    }
    if (keep.size() != 1 || keep[0].second != 1) {
        std::ostringstream os;
        os << "final argument does not reduce to a single delta factor:";
        for (auto& [p, m] : keep) os << " (" << p.str() << ")^" << m;
        throw NotExpressible(os.str());
    }
    Poly arg = keep[0].first;
    for (int uv : rr.unit_var)
        if (arg.has(uv))
            throw NotExpressible("free unit survives in the delta argument: " +
                                 arg.str());
    for (int ev : rr.edge_var)
        if (arg.has(ev)) throw std::logic_error("edge variable survives");

    // reduce every surviving exponent to the {1, ldot, mdot} basis
    RealAngleRelations rel = real_angle_relations(tri);
    ClosedForm form;
    form.ring = rr.ring;
    form.Lvar = rr.L;
    form.Mvar = rr.MM;
    form.delta_argument = arg;
    std::vector<std::pair<int, LinExpr>> var_entries;
    for (const auto& [v, e] : w.ledger.var_channel()) {
        LinExpr red = reduce_real_exponent(e, rel);
        if (red.is_zero()) continue;
        if (v != rr.L && v != rr.MM)
            throw NotExpressible("non-holonomy variable survives in the prefactor: " +
                                 var_name(rr.ring, v));
        var_entries.emplace_back(v, red);
    }
    std::sort(var_entries.begin(), var_entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [v, e] : var_entries)
        form.prefactor.push_back({Poly::variable(rr.ring, v), e});
    for (const auto& [p, e] : w.ledger.int_channel()) {
        LinExpr red = reduce_real_exponent(e, rel);
        if (red.is_zero()) continue;
        form.prefactor.push_back({Poly::constant(rr.ring, p), red});
    }
    std::vector<std::pair<Poly, LinExpr>> base_entries;
    for (const auto& [b, e] : w.ledger.bases()) {
        LinExpr red = reduce_real_exponent(e, rel);
        if (red.is_zero()) continue;
        for (int uv : rr.unit_var)
            if (b.has(uv))
                throw NotExpressible("free unit survives in a prefactor base: " +
                                     b.str());
        base_entries.emplace_back(b, red);
    }
    std::sort(base_entries.begin(), base_entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [b, e] : base_entries) form.prefactor.push_back({b, e});

    w.trace.push_back("delta argument: " + arg.str());
    res.trace = w.trace;
    res.cleared_denominators = w.den_log;
    res.form = form;
    return res;
}

ReduceResult reduce_state_integral(const Triangulation& tri,
                                   const ReduceOptions& opts) {
    auto r = try_reduce(tri, opts);
    if (!r) throw InadmissibleOrder("the requested elimination order is inadmissible");
    return std::move(*r);
}

std::string ClosedForm::str() const {
    auto names = holonomy_symbol_names();
    std::ostringstream os;
    for (const auto& nf : prefactor)
        os << "||" << nf.base.str() << "||^(" << nf.exponent.str(names) << ") ";
    os << "delta(" << delta_argument.str() << ")";
    return os.str();
}

std::vector<EnumeratedForm> enumerate_reductions(const Triangulation& tri) {
    const int n = tri.tet_count();
    const int medges = tri.edge_count();
    std::vector<EnumeratedForm> out;
    for (int gauge = 0; gauge < medges; ++gauge) {
        std::vector<int> live_edges;
        for (int e = 0; e < medges; ++e)
            if (e != gauge) live_edges.push_back(e);
        const int k = (int)live_edges.size();
        // ordered selections of k distinct delta indices
        std::vector<int> delta_ids(n);
        for (int i = 0; i < n; ++i) delta_ids[i] = i;
        std::set<std::vector<int>> dperms;
        std::vector<int> perm = delta_ids;
        std::sort(perm.begin(), perm.end());
        do {
            dperms.insert(std::vector<int>(perm.begin(), perm.begin() + k));
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::vector<int> vperm = live_edges;
        for (const auto& dp : dperms) {
            std::sort(vperm.begin(), vperm.end());
            do {
                OrderCombo combo;
                combo.gauge_edge = gauge;
                for (int i = 0; i < k; ++i) combo.order.emplace_back(dp[i], vperm[i]);
                ReduceOptions opts;
                opts.gauge_edge = gauge;
                opts.order = combo.order;
                try {
                    auto r = try_reduce(tri, opts);
                    if (r) out.push_back({combo, std::move(*r)});
                } catch (const NotLinear&) {
                } catch (const NotExpressible&) {
                }
            } while (std::next_permutation(vperm.begin(), vperm.end()));
        }
    }
    return out;
}

}  // namespace zft
