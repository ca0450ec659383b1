#include "zft/polyops.hpp"
#include <cassert>

namespace zft {

std::optional<Poly> exact_divide(const Poly& p, const Poly& d) {
    if (d.is_zero()) return std::nullopt;
    Poly q(p.ring), r = p;
    const Mono& dm = d.leading_mono();
    const Int& dc = d.leading_coeff();
    while (!r.is_zero()) {
        const Mono& rm = r.leading_mono();
        Mono t(p.ring->size());
        for (int i = 0; i < p.ring->size(); ++i) {
            t[i] = rm[i] - dm[i];
            if (t[i] < 0) return std::nullopt;
        }
        if (r.leading_coeff() % dc != 0) return std::nullopt;
        Int c = r.leading_coeff() / dc;
        r.add_scaled(d, -c, t);
        // leading monomials shrink strictly, so quotient terms arrive in order
        q.terms.emplace_hint(q.terms.end(), std::move(t), std::move(c));
    }
    return q;
}

Poly primitive_part(const Poly& p) {
    if (p.is_zero()) return p;
    Int c = p.content();
    if (p.leading_coeff() < 0) c = -c;
    Poly r(p.ring);
    for (auto& [m, k] : p.terms) r.terms[m] = k / c;
    return r;
}

Poly prem(const Poly& a, const Poly& b, int x) {
    int da = a.degree(x), db = b.degree(x);
    if (da < db) return a;
    Poly lcb = b.coeff_of(x, db);
    Poly r = a;
    int e = da - db + 1;
    while (!r.is_zero() && r.degree(x) >= db) {
        int dr = r.degree(x);
        Poly s = r.coeff_of(x, dr) * Poly::variable(r.ring, x, dr - db);
        r = lcb * r - s * b;
        --e;
    }
    for (int i = 0; i < e; ++i) r = r * lcb;
    return r;
}

namespace {

// content of p viewed in D[x], D = ring minus x: gcd of the x-coefficients
Poly content_wrt(const Poly& p, int x) {
    Poly g(p.ring);
    for (int k = 0; k <= p.degree(x); ++k) {
        Poly c = p.coeff_of(x, k);
        if (!c.is_zero()) g = poly_gcd(g, c);
        if (g.is_constant() && g.constant_value() == 1) break;
    }
    return g;
}

Poly divide_exact(const Poly& p, const Poly& d) {
    auto q = exact_divide(p, d);
    assert(q && "inexact division in PRS");
    return *q;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? b : primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    if (a.is_constant() || b.is_constant()) return Poly(a.ring, 1);
    int x = -1;
    for (int v = 0; v < a.ring->size(); ++v)
        if (a.has(v) || b.has(v)) { x = v; break; }
    Poly ca = content_wrt(a, x), cb = content_wrt(b, x);
    Poly pa = divide_exact(a, ca), pb = divide_exact(b, cb);
    Poly cg = poly_gcd(ca, cb);
    if (pa.degree(x) < pb.degree(x)) std::swap(pa, pb);
    // subresultant PRS
    Poly g(a.ring, 1), h(a.ring, 1);
    Poly F1 = pa, F2 = pb;
    Poly part(a.ring, 1);
    while (true) {
        int d = F1.degree(x) - F2.degree(x);
        Poly R = prem(F1, F2, x);
        if (R.is_zero()) {
            part = F2;
            break;
        }
        if (R.degree(x) == 0) break;    // gcd free of x
        F1 = F2;
        Poly div = g;
        for (int i = 0; i < d; ++i) div = div * h;
        F2 = divide_exact(R, div);
        g = F1.coeff_of(x, F1.degree(x));
        if (d >= 1) {
            Poly gp = g;
            for (int i = 1; i < d; ++i) gp = gp * g;
            if (d == 1) h = gp;
            else {
                Poly hp = h;
                for (int i = 2; i < d; ++i) hp = hp * h;
                h = divide_exact(gp, hp);
            }
        }
    }
    if (!part.is_constant()) part = divide_exact(part, content_wrt(part, x));
    return primitive_part(cg * part);
}

Poly resultant(const Poly& p, const Poly& q, int x) {
    int dp = p.degree(x), dq = q.degree(x);
    if (dp < 0 || dq < 0) throw std::invalid_argument("resultant: zero input");
    if (dp == 0) return p.pow(dq);
    if (dq == 0) return q.pow(dp);
    // subresultant PRS; far cheaper than expanding the Sylvester determinant
    Poly P = p, Q = q;
    bool neg = false;
    if (dp < dq) {
        std::swap(P, Q);
        std::swap(dp, dq);
        if ((dp & 1) && (dq & 1)) neg = !neg;
    }
    Poly a = content_wrt(P, x), b = content_wrt(Q, x);
    P = divide_exact(P, a);
    Q = divide_exact(Q, b);
    Poly t = a.pow(dq) * b.pow(dp);     // content scales one row block each
    Poly g(p.ring, 1), h(p.ring, 1);
    while (true) {
        dp = P.degree(x);
        dq = Q.degree(x);
        int d = dp - dq;
        if ((dp & 1) && (dq & 1)) neg = !neg;
        Poly R = prem(P, Q, x);
        if (R.is_zero()) return Poly(p.ring);    // common factor in x
        P = Q;
        Q = divide_exact(R, g * h.pow(d));
        g = P.coeff_of(x, P.degree(x));
        if (d == 1) h = g;
        else if (d > 1) h = divide_exact(g.pow(d), h.pow(d - 1));
        if (Q.degree(x) == 0) break;
    }
    int dP = P.degree(x);
    Poly res = dP == 1 ? Q : divide_exact(Q.pow(dP), h.pow(dP - 1));
    res = t * res;
    return neg ? -res : res;
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
    std::vector<std::pair<Poly, int>> out;
    if (p.is_zero() || p.is_constant()) return out;
    int x = p.vars_used().front();
    Poly cont = content_wrt(p, x);
    Poly pp = divide_exact(p, cont);
    // Yun's algorithm in D[x]
    Poly dp = pp.derivative(x);
    Poly g = poly_gcd(pp, dp);
    Poly w = divide_exact(pp, g);
    Poly y = divide_exact(dp, g);
    Poly z = y - w.derivative(x);
    int i = 1;
    while (w.degree(x) > 0) {
        Poly gi = poly_gcd(w, z);
        if (!gi.is_constant()) out.emplace_back(primitive_part(gi), i);
        w = divide_exact(w, gi);
        y = divide_exact(z, gi);
        z = y - w.derivative(x);
        ++i;
    }
    auto rest = squarefree_decomposition(cont);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

Poly squarefree_part(const Poly& p) {
    if (p.is_zero() || p.is_constant()) return p;
    Poly r(p.ring, 1);
    for (auto& [f, m] : squarefree_decomposition(p)) r = r * f;
    return primitive_part(r);
}

std::vector<Poly> split_binomial(const Poly& p) {
    // caller passes primitive +LC polys, so the leading coefficient is positive
    std::vector<Poly> out;
    if (p.terms.size() != 2) { out.push_back(p); return out; }
    auto it = p.terms.begin();
    Mono m1 = it->first; Int c1 = it->second;
    ++it;
    Mono m2 = it->first; Int c2 = it->second;
    int e = 0;
    for (int i = 0; i < p.ring->size(); ++i) {
        if (m1[i]) e = std::gcd(e, m1[i]);
        if (m2[i]) e = std::gcd(e, m2[i]);
    }
    for (int pi : {2, 3, 5, 7}) {
        if (e % pi != 0) continue;
        if (pi == 2 && c2 > 0) continue;     // X^2 + Y^2 has no split over Z
        bool ex1, ex2;
        Int a = iroot(abs(c1), (unsigned)pi, ex1), b = iroot(abs(c2), (unsigned)pi, ex2);
        if (!ex1 || !ex2) continue;
        Mono r1(p.ring->size()), r2(p.ring->size());
        for (int i = 0; i < p.ring->size(); ++i) { r1[i] = m1[i] / pi; r2[i] = m2[i] / pi; }
        Poly A(p.ring), B(p.ring);
        A.terms[r1] = a;
        B.terms[r2] = b;
        Poly lin(p.ring), cof(p.ring);
        if (c2 < 0) {            // A^pi - B^pi = (A - B) * sum A^{pi-1-j} B^j
            lin = A - B;
            for (int j = 0; j < pi; ++j) cof = cof + A.pow(pi - 1 - j) * B.pow(j);
        } else {                 // A^pi + B^pi, pi odd: (A + B) * alternating sum
            lin = A + B;
            for (int j = 0; j < pi; ++j) {
                Poly t = A.pow(pi - 1 - j) * B.pow(j);
                cof = (j % 2 == 0) ? cof + t : cof - t;
            }
        }
        auto left = split_binomial(primitive_part(lin));
        auto right = split_binomial(primitive_part(cof));
        out.insert(out.end(), left.begin(), left.end());
        out.insert(out.end(), right.begin(), right.end());
        return out;
    }
    out.push_back(p);
    return out;
}

Poly subst(const Poly& p, int v, const Poly& q) {
    // Horner by descending degree in v
    int d = p.degree(v);
    if (d <= 0) return p;
    Poly acc = p.coeff_of(v, d);
    for (int k = d - 1; k >= 0; --k) acc = acc * q + p.coeff_of(v, k);
    return acc;
}

} // namespace zft
