#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace zft {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int igcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { Int t = a % b; a = b; b = t; }
    return a;
}

// floor of the k-th root; exact flag set iff r^k == n.  n >= 0.
inline Int iroot(const Int& n, unsigned k, bool& exact) {
    if (n < 0) throw std::invalid_argument("iroot: negative");
    if (n == 0 || n == 1 || k == 1) { exact = true; return n; }
    Int lo = 0, hi = 1;
    while (boost::multiprecision::pow(hi, k) <= n) hi <<= 1;
    while (lo + 1 < hi) {
        Int mid = (lo + hi) >> 1;
        if (boost::multiprecision::pow(mid, k) <= n) lo = mid; else hi = mid;
    }
    exact = boost::multiprecision::pow(lo, k) == n;
    return lo;
}

// trial-division factorization; inputs stay tiny (polynomial contents)
inline std::map<Int, int> factor_int(Int n) {
    std::map<Int, int> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n; ++p)
        while (n % p == 0) { ++out[p]; n /= p; }
    if (n > 1) ++out[n];
    return out;
}

} // namespace zft
