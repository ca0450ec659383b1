#pragma once
#include "zft/bigint.hpp"
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace zft {

// rational-affine combination of named symbols: sum c_i * sym_i + k.
// used for norm exponents (symbols are real angle parts) and their reduced
// form over the peripheral basis.
struct LinExpr {
    std::map<int, Rat> c;
    Rat k = 0;

    LinExpr() = default;
    explicit LinExpr(Rat cst) : k(std::move(cst)) {}
    static LinExpr sym(int i, Rat coeff = 1) {
        LinExpr e;
        if (coeff != 0) e.c[i] = std::move(coeff);
        return e;
    }

    bool is_zero() const { return c.empty() && k == 0; }
    bool is_constant() const { return c.empty(); }

    void add(int i, const Rat& v) {
        if (v == 0) return;
        auto it = c.find(i);
        if (it == c.end()) c[i] = v;
        else {
            it->second += v;
            if (it->second == 0) c.erase(it);
        }
    }

    LinExpr operator+(const LinExpr& o) const {
        LinExpr r = *this;
        for (auto& [i, v] : o.c) r.add(i, v);
        r.k += o.k;
        return r;
    }
    LinExpr operator-(const LinExpr& o) const {
        LinExpr r = *this;
        for (auto& [i, v] : o.c) r.add(i, -v);
        r.k -= o.k;
        return r;
    }
    LinExpr operator*(const Rat& s) const {
        LinExpr r;
        if (s == 0) return r;
        for (auto& [i, v] : c) r.c[i] = v * s;
        r.k = k * s;
        return r;
    }
    LinExpr operator-() const { return *this * Rat(-1); }

    bool operator==(const LinExpr& o) const { return c == o.c && k == o.k; }
    bool operator!=(const LinExpr& o) const { return !(*this == o); }
    bool operator<(const LinExpr& o) const {
        if (c != o.c) return c < o.c;
        return k < o.k;
    }

    // e.g. "mdot + 1", "-ldot + 3", "2", "0"
    std::string str(const std::vector<std::string>& names) const {
        std::ostringstream os;
        bool first = true;
        auto coeff = [&](const Rat& v, const std::string& n) {
            Rat a = v;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (n.empty()) { os << a; return; }
            if (a != 1) os << a << "*";
            os << n;
        };
        for (auto& [i, v] : c) coeff(v, names.at(i));
        if (k != 0 || first) coeff(k, "");
        return os.str();
    }
};

}  // namespace zft
