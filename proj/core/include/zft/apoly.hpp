#pragma once
#include "zft/poly.hpp"
#include "zft/polyops.hpp"
#include "zft/ratfn.hpp"
#include "zft/triangulation.hpp"

namespace zft {

// denominator-cleared gluing/cusp equations over {z_0..z_{N-1}, l, m}
struct GluingSystem {
    RingPtr ring;
    int lvar = -1, mvar = -1;
    std::vector<Poly> polys;
    std::vector<std::string> provenance;                  // parallel to polys
    std::vector<std::pair<Poly, std::string>> dropped;    // removed factors / tautologies
    bool invert_negative = true;
};

// one cleared polynomial per edge class plus the two cusp equations;
// invert_negative negates the (a,b,c) exponents of negative tetrahedra
GluingSystem build_gluing_system(const Triangulation& tri, bool invert_negative = true);

struct ZeroEliminant : std::runtime_error {
    explicit ZeroEliminant(const std::string& w) : std::runtime_error(w) {}
};

// pairwise-resultant elimination of the shape variables in the given order;
// returns the gcd of the surviving (l,m) polynomials before cleanup
Poly eliminate(GluingSystem sys, const std::vector<int>& order);

struct APolyResult {
    Poly factor;   // primitive, squarefree, positive leading coefficient
    std::vector<std::pair<Poly, std::string>> discarded;
    bool invert_negative = true;
    std::vector<int> order_used;
};

APolyResult apoly_factor(const Triangulation& tri, bool invert_negative = true);

// squarefree primitive +LC form with monomial content removed
Poly canonical_poly(const Poly& p);

// equality up to monomial units, sign, and l -> -l
bool equal_up_to_unit_and_lsign(const Poly& a, const Poly& b, int lvar);

// substitute l -> 1/l and clear (degree-reversal in l), canonicalized
Poly reciprocal_in(const Poly& p, int var);

// exact integer-polynomial divisibility of the delta-support argument into the
// eliminant factor, allowing sign and l -> -l (delta lives on its own ring
// with variables Lvar, Mvar mapped onto the factor's l, m)
bool delta_divides_factor(const Poly& delta, int Lvar, int Mvar, const APolyResult& res);

}  // namespace zft
