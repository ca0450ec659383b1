#pragma once
#include "zft/poly.hpp"
#include "zft/polyops.hpp"

namespace zft {

// quotient of two polynomials, kept normalized: gcd cancelled, denominator
// primitive with positive leading coefficient
struct RatFn {
    Poly num, den;

    explicit RatFn(RingPtr r) : num(r), den(Poly::constant(r, 1)) {}
    RatFn(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    explicit RatFn(Poly n) : num(std::move(n)), den(Poly::constant(num.ring, 1)) {}

    static RatFn constant(RingPtr r, const Rat& q) {
        RatFn f(r);
        f.num = Poly::constant(r, numerator(q));
        f.den = Poly::constant(r, denominator(q));
        f.normalize();
        return f;
    }
    static RatFn variable(RingPtr r, int v, int e = 1) {
        RatFn f(r);
        f.num = Poly::constant(r, 1);
        if (e >= 0) f.num = Poly::variable(r, v, e);
        else f.den = Poly::variable(r, v, -e);
        return f;
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_poly() const { return den.is_constant() && den.constant_value() == 1; }

    void normalize() {
        if (den.is_zero()) throw std::domain_error("RatFn: zero denominator");
        if (num.is_zero()) { den = Poly::constant(num.ring, 1); return; }
        Poly g = poly_gcd(num, den);
        if (!(g.is_constant() && g.constant_value() == 1)) {
            num = *exact_divide(num, g);
            den = *exact_divide(den, g);
        }
        Int cn = num.content(), cd = den.content();
        Int c = igcd(cn, cd);
        if (den.leading_coeff() < 0) c = -c;
        if (c != 1) {
            num = *exact_divide(num, Poly::constant(num.ring, c));
            den = *exact_divide(den, Poly::constant(num.ring, c));
        }
    }

    RatFn operator+(const RatFn& o) const { return RatFn(num * o.den + o.num * den, den * o.den); }
    RatFn operator-(const RatFn& o) const { return RatFn(num * o.den - o.num * den, den * o.den); }
    RatFn operator*(const RatFn& o) const { return RatFn(num * o.num, den * o.den); }
    RatFn operator/(const RatFn& o) const {
        if (o.is_zero()) throw std::domain_error("RatFn: division by zero");
        return RatFn(num * o.den, den * o.num);
    }
    RatFn operator-() const { RatFn f = *this; f.num = -f.num; return f; }
    RatFn inv() const { return RatFn(den, num); }
    RatFn pow(int e) const {
        if (e < 0) return inv().pow(-e);
        RatFn r = RatFn::constant(num.ring, 1);
        RatFn b = *this;
        while (e) { if (e & 1) r = r * b; b = b * b; e >>= 1; }
        return r;
    }

    bool operator==(const RatFn& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatFn& o) const { return !(*this == o); }

    template <typename T> T eval(const std::vector<T>& point) const {
        return num.eval(point) / den.eval(point);
    }

    std::string str() const {
        if (is_poly()) return num.str();
        std::string d = den.str();
        if (den.terms.size() > 1 || den.vars_used().size() > 1) d = "(" + d + ")";
        std::string n = num.str();
        if (num.terms.size() > 1) n = "(" + n + ")";
        return n + "/" + d;
    }
};

// substitute variable v := r into p; result is rational in general
inline RatFn subst(const Poly& p, int v, const RatFn& r) {
    // Horner in v: collect coefficients of v^k
    int d = p.degree(v);
    if (d == 0) return RatFn(p);
    RatFn acc(p.ring);
    for (int k = d; k >= 0; --k) {
        acc = acc * r;
        acc = acc + RatFn(p.coeff_of(v, k));
    }
    return acc;
}

inline RatFn subst(const RatFn& f, int v, const RatFn& r) {
    return subst(f.num, v, r) / subst(f.den, v, r);
}

}  // namespace zft
