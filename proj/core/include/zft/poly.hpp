#pragma once
#include "bigint.hpp"
#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace zft {

// fixed variable universe shared by all polynomials of one computation
class Ring {
  public:
    explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {}
    int size() const { return (int)names_.size(); }
    const std::string& name(int i) const { return names_[i]; }
    int var(const std::string& n) const {
        for (int i = 0; i < size(); ++i)
            if (names_[i] == n) return i;
        throw std::invalid_argument("unknown variable " + n);
    }
  private:
    std::vector<std::string> names_;
};
using RingPtr = std::shared_ptr<const Ring>;

using Mono = std::vector<int>;

inline int mono_deg(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }

// graded-lex, descending: leading term first in map order
struct MonoOrder {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = mono_deg(a), db = mono_deg(b);
        if (da != db) return da > db;
        return a > b;
    }
};

struct MonoHash {
    size_t operator()(const Mono& m) const {
        size_t h = 1469598103934665603ull;
        for (int v : m) {
            h ^= (size_t)(unsigned)v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

class Poly {
  public:
    RingPtr ring;
    std::map<Mono, Int, MonoOrder> terms;

    Poly() = default;
    explicit Poly(RingPtr r) : ring(std::move(r)) {}
    Poly(RingPtr r, const Int& c) : ring(std::move(r)) {
        if (c != 0) terms[Mono(ring->size(), 0)] = c;
    }
    static Poly constant(RingPtr r, const Int& c) { return Poly(std::move(r), c); }
    static Poly variable(RingPtr r, int v, int e = 1) {
        Poly p(r);
        Mono m(r->size(), 0);
        m[v] = e;
        p.terms[m] = 1;
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && mono_deg(terms.begin()->first) == 0);
    }
    Int constant_value() const {
        if (terms.empty()) return 0;
        return terms.begin()->second;
    }
    const Mono& leading_mono() const { return terms.begin()->first; }
    const Int& leading_coeff() const { return terms.begin()->second; }
    int total_degree() const { return terms.empty() ? -1 : mono_deg(terms.begin()->first); }

    int degree(int v) const {
        int d = -1;
        for (auto& [m, c] : terms) d = std::max(d, m[v]);
        return d;
    }
    bool has(int v) const {
        for (auto& [m, c] : terms)
            if (m[v] > 0) return true;
        return false;
    }
    std::vector<int> vars_used() const {
        std::vector<int> out;
        for (int v = 0; v < ring->size(); ++v)
            if (has(v)) out.push_back(v);
        return out;
    }

    void add_term(const Mono& m, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) terms.emplace(m, c);
        else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    // in-place *this += scale * x^shift * q; keeps division loops allocation-light
    void add_scaled(const Poly& q, const Int& scale, const Mono& shift) {
        const int n = ring->size();
        Mono key(n);
        for (auto& [m, c] : q.terms) {
            for (int i = 0; i < n; ++i) key[i] = m[i] + shift[i];
            add_term(key, Int(c * scale));
        }
    }

    Poly operator-() const {
        Poly r(ring);
        for (auto& [m, c] : terms) r.terms.emplace_hint(r.terms.end(), m, -c);
        return r;
    }
    // both maps are sorted, so + and - are linear merges with end-hinted inserts
    Poly merged(const Poly& o, int sign) const {
        Poly r(ring);
        MonoOrder before;
        auto a = terms.begin(), ae = terms.end();
        auto b = o.terms.begin(), be = o.terms.end();
        while (a != ae && b != be) {
            if (before(a->first, b->first)) {
                r.terms.emplace_hint(r.terms.end(), a->first, a->second);
                ++a;
            } else if (before(b->first, a->first)) {
                r.terms.emplace_hint(r.terms.end(), b->first, sign < 0 ? -b->second : b->second);
                ++b;
            } else {
                Int c = sign < 0 ? Int(a->second - b->second) : Int(a->second + b->second);
                if (c != 0) r.terms.emplace_hint(r.terms.end(), a->first, std::move(c));
                ++a; ++b;
            }
        }
        for (; a != ae; ++a) r.terms.emplace_hint(r.terms.end(), a->first, a->second);
        for (; b != be; ++b) r.terms.emplace_hint(r.terms.end(), b->first, sign < 0 ? -b->second : b->second);
        return r;
    }
    Poly operator+(const Poly& o) const { return merged(o, +1); }
    Poly operator-(const Poly& o) const { return merged(o, -1); }
    Poly& operator+=(const Poly& o) { *this = merged(o, +1); return *this; }
    Poly& operator-=(const Poly& o) { *this = merged(o, -1); return *this; }
    Poly operator*(const Poly& o) const {
        Poly r(ring);
        if (terms.empty() || o.terms.empty()) return r;
        const int n = ring->size();
        // single-term factor: shift preserves the term order
        if (terms.size() == 1 || o.terms.size() == 1) {
            const Poly& big = terms.size() == 1 ? o : *this;
            auto& [ms, cs] = *(terms.size() == 1 ? terms : o.terms).begin();
            for (auto& [mb, cb] : big.terms) {
                Mono m(n);
                for (int i = 0; i < n; ++i) m[i] = mb[i] + ms[i];
                r.terms.emplace_hint(r.terms.end(), std::move(m), cb * cs);
            }
            return r;
        }
        // accumulate into a hash map (one allocation per distinct monomial),
        // then sort only the distinct monomials
        std::unordered_map<Mono, Int, MonoHash> acc;
        acc.reserve(4 * std::max(terms.size(), o.terms.size()));
        Mono key(n);
        for (auto& [m1, c1] : terms)
            for (auto& [m2, c2] : o.terms) {
                for (int i = 0; i < n; ++i) key[i] = m1[i] + m2[i];
                auto it = acc.find(key);
                if (it == acc.end()) acc.emplace(key, c1 * c2);
                else it->second += c1 * c2;
            }
        std::vector<std::pair<Mono, Int>> flat;
        flat.reserve(acc.size());
        while (!acc.empty()) {
            auto nh = acc.extract(acc.begin());
            if (nh.mapped() != 0) flat.emplace_back(std::move(nh.key()), std::move(nh.mapped()));
        }
        std::sort(flat.begin(), flat.end(),
                  [](const auto& a, const auto& b) { return MonoOrder{}(a.first, b.first); });
        for (auto& [m, c] : flat) r.terms.emplace_hint(r.terms.end(), std::move(m), std::move(c));
        return r;
    }
    Poly operator*(const Int& k) const {
        Poly r(ring);
        if (k == 0) return r;
        for (auto& [m, c] : terms) r.terms.emplace_hint(r.terms.end(), m, c * k);
        return r;
    }
    Poly pow(int e) const {
        Poly r(ring, 1), b = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }
    bool operator==(const Poly& o) const { return terms == o.terms; }
    bool operator!=(const Poly& o) const { return terms != o.terms; }
    bool operator<(const Poly& o) const {   // deterministic total order
        if (total_degree() != o.total_degree()) return total_degree() < o.total_degree();
        auto a = terms.begin(); auto b = o.terms.begin();
        for (; a != terms.end() && b != o.terms.end(); ++a, ++b) {
            if (a->first != b->first) return MonoOrder{}(b->first, a->first);
            if (a->second != b->second) return a->second < b->second;
        }
        return terms.size() < o.terms.size();
    }

    // coefficient of v^k, as polynomial in the remaining variables
    // (dropping v from terms that share its exponent keeps them ordered)
    Poly coeff_of(int v, int k) const {
        Poly r(ring);
        for (auto& [m, c] : terms)
            if (m[v] == k) {
                Mono m2 = m;
                m2[v] = 0;
                r.terms.emplace_hint(r.terms.end(), std::move(m2), c);
            }
        return r;
    }

    Poly derivative(int v) const {
        Poly r(ring);
        for (auto& [m, c] : terms)
            if (m[v] > 0) {
                Mono m2 = m;
                m2[v] -= 1;
                r.terms.emplace_hint(r.terms.end(), std::move(m2), c * m[v]);
            }
        return r;
    }

    Int content() const {
        Int g = 0;
        for (auto& [m, c] : terms) {
            g = igcd(g, c);
            if (g == 1) break;
        }
        return g;
    }
    // gcd of all monomials: minimal exponent per variable
    Mono monomial_content() const {
        Mono g(ring->size(), 0);
        if (terms.empty()) return g;
        bool first = true;
        for (auto& [m, c] : terms) {
            if (first) { g = m; first = false; continue; }
            for (int i = 0; i < ring->size(); ++i) g[i] = std::min(g[i], m[i]);
        }
        return g;
    }
    Poly shift_down(const Mono& s) const {    // divide by monomial s (must divide)
        Poly r(ring);
        for (auto& [m, c] : terms) {
            Mono m2(ring->size());
            for (int i = 0; i < ring->size(); ++i) m2[i] = m[i] - s[i];
            r.terms.emplace_hint(r.terms.end(), std::move(m2), c);
        }
        return r;
    }
    bool is_monomial() const { return terms.size() == 1; }

    template <typename T> T eval(const std::vector<T>& point) const {
        T acc = T(0);
        for (auto& [m, c] : terms) {
            T t = T(c.template convert_to<double>());
            for (int i = 0; i < ring->size(); ++i)
                for (int k = 0; k < m[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }
    Rat eval_rat(const std::vector<Rat>& point) const {
        Rat acc = 0;
        for (auto& [m, c] : terms) {
            Rat t = Rat(c);
            for (int i = 0; i < ring->size(); ++i)
                for (int k = 0; k < m[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms) {
            Int a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool unit = a == 1, any = false;
            if (!unit) { os << a.str(); any = true; }
            for (int i = 0; i < ring->size(); ++i)
                if (m[i] > 0) {
                    if (any) os << "*";
                    os << ring->name(i);
                    if (m[i] > 1) os << "^" << m[i];
                    any = true;
                }
            if (!any) os << "1";
        }
        return os.str();
    }
};

inline Poly operator*(const Int& k, const Poly& p) { return p * k; }

} // namespace zft
