#include "zft/apoly.hpp"
#include "zft/nz.hpp"
#include <algorithm>

namespace zft {

namespace {

int as_int(const Int& v) { return v.convert_to<int>(); }

RatFn ratpow(const RatFn& b, int e) { return b.pow(e); }

// strip integer sign/content, monomial factors, and degenerate (z_j - 1)
// factors; returns zero poly for tautologies
Poly canon_equation(Poly p, int nshape, std::vector<std::pair<Poly, std::string>>& dropped) {
    if (p.is_zero()) return p;
    Mono mc = p.monomial_content();
    if (mono_deg(mc) > 0) {
        Poly unit(p.ring);
        unit.terms[mc] = 1;
        dropped.emplace_back(unit, "nonvanishing monomial factor");
        p = p.shift_down(mc);
    }
    p = primitive_part(p);
    for (int j = 0; j < nshape; ++j) {
        Poly zm1 = Poly::variable(p.ring, j) - Poly(p.ring, 1);
        while (true) {
            auto q = exact_divide(p, zm1);
            if (!q) break;
            dropped.emplace_back(zm1, "degenerate-shape factor");
            p = primitive_part(*q);
        }
    }
    return p;
}

void push_unique(std::vector<Poly>& polys, std::vector<std::string>& prov, Poly p,
                 std::string tag) {
    for (const auto& q : polys)
        if (q == p) return;
    polys.push_back(std::move(p));
    prov.push_back(std::move(tag));
}

Poly eliminate_impl(GluingSystem& sys, const std::vector<int>& order) {
    for (int z : order) {
        std::vector<Poly> with, without;
        std::vector<std::string> wprov, oprov;
        for (size_t i = 0; i < sys.polys.size(); ++i) {
            if (sys.polys[i].has(z)) {
                with.push_back(sys.polys[i]);
                wprov.push_back(sys.provenance[i]);
            } else {
                without.push_back(sys.polys[i]);
                oprov.push_back(sys.provenance[i]);
            }
        }
        if (with.empty()) continue;
        if (with.size() == 1) {
            // single constraint: generically solvable for z, projects away
            sys.dropped.emplace_back(with[0], "sole constraint in " + sys.ring->name(z) +
                                                  " (" + wprov[0] + ")");
            sys.polys = std::move(without);
            sys.provenance = std::move(oprov);
            continue;
        }
        std::vector<Poly> next = std::move(without);
        std::vector<std::string> nprov = std::move(oprov);
        bool any = false;
        for (size_t i = 0; i < with.size(); ++i)
            for (size_t j = i + 1; j < with.size(); ++j) {
                Poly r = resultant(with[i], with[j], z);
                if (r.is_zero()) continue;   // common factor, no information
                any = true;
                r = canon_equation(std::move(r), sys.lvar, sys.dropped);
                if (r.is_zero()) continue;
                push_unique(next, nprov, std::move(r),
                            "res_" + sys.ring->name(z) + "(" + wprov[i] + "," + wprov[j] + ")");
            }
        if (!any)
            throw ZeroEliminant("all pairwise resultants vanish eliminating " +
                                sys.ring->name(z));
        sys.polys = std::move(next);
        sys.provenance = std::move(nprov);
    }
    Poly g(sys.ring);
    for (const auto& p : sys.polys) g = poly_gcd(g, p);
    return g;
}

}  // namespace

GluingSystem build_gluing_system(const Triangulation& tri, bool invert_negative) {
    int n = tri.tet_count();
    std::vector<std::string> names;
    for (int j = 0; j < n; ++j) names.push_back("z" + std::to_string(j));
    names.push_back("l");
    names.push_back("m");
    auto ring = std::make_shared<const Ring>(names);

    GluingSystem sys;
    sys.ring = ring;
    sys.lvar = n;
    sys.mvar = n + 1;
    sys.invert_negative = invert_negative;

    NZData nz = gluing_matrices(tri);

    // product over tets of z^a * (1/(1-z))^b * ((z-1)/z)^c
    auto shape_product = [&](auto&& exps) {
        RatFn f = RatFn::constant(ring, 1);
        for (int j = 0; j < n; ++j) {
            auto [ea, eb, ec] = exps(j);
            if (invert_negative && nz.signs[j] < 0) { ea = -ea; eb = -eb; ec = -ec; }
            Poly z = Poly::variable(ring, j);
            Poly one(ring, 1);
            f = f * ratpow(RatFn(z), ea);
            f = f * ratpow(RatFn(one, one - z), eb);
            f = f * ratpow(RatFn(z - one, z), ec);
        }
        return f;
    };

    for (int i = 0; i < nz.edges(); ++i) {
        RatFn f = shape_product([&](int j) {
            return std::tuple{as_int(nz.A[i][j]), as_int(nz.B[i][j]), as_int(nz.C[i][j])};
        });
        Poly p = canon_equation(f.num - f.den, n, sys.dropped);
        std::string tag = "edge_" + tri.edge_names[i];
        if (p.is_zero()) sys.dropped.emplace_back(p, tag + " is a tautology");
        else push_unique(sys.polys, sys.provenance, std::move(p), tag);
    }
    auto cusp = [&](const std::vector<std::array<Int, 3>>& abc, int var, const std::string& tag) {
        RatFn f = shape_product([&](int j) {
            return std::tuple{as_int(abc[j][0]), as_int(abc[j][1]), as_int(abc[j][2])};
        });
        Poly p = Poly::variable(ring, var) * f.den - f.num;
        p = canon_equation(std::move(p), n, sys.dropped);
        if (p.is_zero()) sys.dropped.emplace_back(p, tag + " is a tautology");
        else push_unique(sys.polys, sys.provenance, std::move(p), tag);
    };
    cusp(nz.meridian_abc, sys.mvar, "meridian");
    cusp(nz.longitude_abc, sys.lvar, "longitude");
    return sys;
}

Poly eliminate(GluingSystem sys, const std::vector<int>& order) {
    return eliminate_impl(sys, order);
}

Poly canonical_poly(const Poly& p) {
    if (p.is_zero() || p.is_constant()) return primitive_part(p);
    Poly q = p.shift_down(p.monomial_content());
    return squarefree_part(q);
}

APolyResult apoly_factor(const Triangulation& tri, bool invert_negative) {
    GluingSystem base = build_gluing_system(tri, invert_negative);
    int n = tri.tet_count();
    std::vector<int> order(n);
    for (int j = 0; j < n; ++j) order[j] = j;

    auto attempt = [&](const std::vector<int>& ord) -> APolyResult {
        GluingSystem sys = base;
        Poly g = eliminate_impl(sys, ord);
        if (g.is_zero()) throw ZeroEliminant("no surviving eliminant");
        APolyResult res;
        res.invert_negative = invert_negative;
        res.order_used = ord;
        Poly f = canonical_poly(g);
        if (!f.is_constant()) {
            // remove the factor independent of l
            Poly lfree(f.ring);
            for (int k = 0; k <= f.degree(sys.lvar); ++k) {
                Poly c = f.coeff_of(sys.lvar, k);
                if (!c.is_zero()) lfree = poly_gcd(lfree, c);
            }
            if (!lfree.is_constant()) {
                res.discarded.emplace_back(lfree, "factor independent of l");
                f = primitive_part(*exact_divide(f, lfree));
            }
        }
        res.factor = primitive_part(f);
        res.discarded.insert(res.discarded.end(), sys.dropped.begin(), sys.dropped.end());
        return res;
    };

    try {
        return attempt(order);
    } catch (const ZeroEliminant&) {
        std::vector<int> perm = order;
        std::sort(perm.begin(), perm.end());
        do {
            if (perm == order) continue;
            try {
                return attempt(perm);
            } catch (const ZeroEliminant&) {
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        throw;
    }
}

namespace {
Poly unit_normal(const Poly& p) {
    if (p.is_zero()) return p;
    return primitive_part(p.shift_down(p.monomial_content()));
}
}  // namespace

bool equal_up_to_unit_and_lsign(const Poly& a, const Poly& b, int lvar) {
    Poly ua = unit_normal(a), ub = unit_normal(b);
    if (ua == ub) return true;
    Poly neg = subst(b, lvar, -Poly::variable(b.ring, lvar));
    return ua == unit_normal(neg);
}

Poly reciprocal_in(const Poly& p, int var) {
    int d = p.degree(var);
    Poly r(p.ring);
    for (auto& [m, c] : p.terms) {
        Mono m2 = m;
        m2[var] = d - m[var];
        r.add_term(m2, c);
    }
    return unit_normal(r);
}

bool delta_divides_factor(const Poly& delta, int Lvar, int Mvar, const APolyResult& res) {
    if (delta.is_zero() || res.factor.is_zero()) return false;
    const auto& ring = res.factor.ring;
    int lv = ring->var("l"), mv = ring->var("m");
    Poly target = unit_normal(res.factor);
    for (int neg_l = 0; neg_l < 2; ++neg_l) {
        Poly cand(ring);
        for (auto& [m, c] : delta.terms) {
            for (int i = 0; i < delta.ring->size(); ++i)
                if (i != Lvar && i != Mvar && m[i] != 0) return false;  // not bivariate
            Mono m2(ring->size());
            m2[lv] = m[Lvar];
            m2[mv] = m[Mvar];
            cand.add_term(m2, neg_l && (m[Lvar] & 1) ? Int(-c) : c);
        }
        if (exact_divide(target, unit_normal(cand))) return true;
    }
    return false;
}

}  // namespace zft
