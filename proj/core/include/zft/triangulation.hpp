#pragma once
#include "zft/bigint.hpp"
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace zft {

// vertex-pair slots in fixed order 01, 02, 03, 12, 13, 23.
// opposite pairs: {01,23} carry angle a, {02,13} angle b, {03,12} angle c.
inline constexpr int SLOT_COUNT = 6;
inline constexpr int slot_angle(int s) {   // 0=a, 1=b, 2=c
    constexpr int role[SLOT_COUNT] = {0, 1, 2, 2, 1, 0};
    return role[s];
}

struct Tetrahedron {
    int index = 0;
    int sign = +1;                      // +1 or -1
    std::array<int, SLOT_COUNT> slots;  // edge-class index per slot
};

struct HolonomyRow {
    std::string name;         // "meridian" or "longitude"
    std::vector<Int> coeff;   // length 3N, (a_j, b_j, c_j) per tetrahedron
};

struct Triangulation {
    std::vector<Tetrahedron> tets;
    std::vector<std::string> edge_names;   // dense edge-class index -> file token
    HolonomyRow meridian, longitude;

    int tet_count() const { return (int)tets.size(); }
    int edge_count() const { return (int)edge_names.size(); }
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& what, int ln)
        : std::runtime_error("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

Triangulation parse_triangulation(const std::string& text);
std::string serialize_triangulation(const Triangulation& tri);

// slot-occurrence count per edge class; sums to 6N
std::vector<int> edge_valences(const Triangulation& tri);

// exponent vector over edge classes; exponents sum to zero
struct QuotientMonomial {
    std::vector<int> exponents;
};

// first component: slots 02*13 / (03*12); second: 01*23 / (02*13)
std::pair<QuotientMonomial, QuotientMonomial> tet_quotient_monomials(const Triangulation& tri,
                                                                     int j);

}  // namespace zft
