#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zft/linexpr.hpp"
#include "zft/poly.hpp"
#include "zft/ratfn.hpp"
#include "zft/triangulation.hpp"

namespace zft {

// Symbolic reduction of the edge-type state integral to a closed form
//   prefactor  = product of ||base||^(affine exponent)   (norm of the local field)
//   integrand  = single delta function of a Laurent-free polynomial in the
//                multiplicative cusp holonomies L (longitude) and M (meridian).
//
// Real parts of the dihedral parameters enter only through the exponents.
// They are tracked as affine expressions over the symbols
//   adot_j -> LinExpr symbol 2j,  cdot_j -> LinExpr symbol 2j+1
// and reduced at the end to the basis {1, ldot, mdot} (real parts of the cusp
// holonomies; LinExpr symbols 0 and 1 of the output table).

struct NotExpressible : std::runtime_error {
    explicit NotExpressible(const std::string& w) : std::runtime_error(w) {}
};
struct InconsistentRelations : std::runtime_error {
    explicit InconsistentRelations(const std::string& w) : std::runtime_error(w) {}
};
struct NotLinear : std::runtime_error {
    explicit NotLinear(const std::string& w) : std::runtime_error(w) {}
};
struct InadmissibleOrder : std::runtime_error {
    explicit InadmissibleOrder(const std::string& w) : std::runtime_error(w) {}
};

// ---- real-part bookkeeping -------------------------------------------------

std::vector<std::string> real_symbol_names(int tet_count);   // adot0, cdot0, ...
std::vector<std::string> holonomy_symbol_names();            // ldot, mdot

struct RealAngleRelations {
    int symbol_count = 0;                // 2N: adot_j = 2j, cdot_j = 2j+1
    std::vector<LinExpr> balance_zero;   // one per edge class, == 0 on shape space
    LinExpr ldot;                        // real longitude holonomy
    LinExpr mdot;                        // real meridian holonomy
};

RealAngleRelations real_angle_relations(const Triangulation& tri);

// Rewrite `expr` (over adot/cdot symbols) as c0 + c1*ldot + c2*mdot modulo the
// balance relations.  Returns a LinExpr over the {ldot, mdot} table.
// Throws InconsistentRelations if no such rewriting exists, NotExpressible if
// the coefficients are not uniquely determined.
LinExpr reduce_real_exponent(const LinExpr& expr, const RealAngleRelations& rel);

// ---- multiplicative dihedral parametrization -------------------------------

// Each multiplicative parameter is expressed as a signed monomial
//     +/- L^p M^q u_1^{s_1} ... u_F^{s_F}
// in the holonomies and a basis of free units u_t (multiplicative kernel of
// the balance + holonomy lattice).  The parametrization is canonicalized by
// lattice reduction against the kernel so it is deterministic.
struct AngleParametrization {
    RingPtr ring;                 // shared reduction ring (see make_reduction_ring)
    std::vector<RatFn> a_par;     // per tetrahedron
    std::vector<RatFn> c_par;
    int unit_count = 0;
};

// Ring layout: [L, M, x_<edge_0>, ..., x_<edge_{M-1}>, u1, ..., uF].
struct ReductionRing {
    RingPtr ring;
    int L = 0, MM = 1;
    std::vector<int> edge_var;    // ring id per edge class
    std::vector<int> unit_var;    // ring ids of free units
};

ReductionRing make_reduction_ring(const Triangulation& tri, int unit_count);

AngleParametrization parametrize_angles(const Triangulation& tri);

// ---- norm ledger ------------------------------------------------------------

// Tracks the product of ||base||^exponent accumulated by the reduction rules.
// Bases are kept in three channels: single variables, prime integers, and
// primitive non-monomial polynomials (binomial-split, squarefree components,
// pairwise gcd-refined so equal content is always merged).
class Ledger {
  public:
    explicit Ledger(RingPtr ring) : ring_(std::move(ring)) {}

    void add_var(int v, const LinExpr& e);
    void add_int(const Int& n, const LinExpr& e);       // n > 0, split into primes
    void add_base(Poly p, const LinExpr& e);            // refined insert
    void add_factors(const Poly& p, const LinExpr& e);  // full factor routine
    void add_factors(const RatFn& f, const LinExpr& e); // num +e, den -e

    void substitute(int v, const RatFn& value);

    // true iff p divides one of the polynomial bases (hence is provably
    // nonvanishing wherever the ledger is); used by the final classification
    bool covers(const Poly& p) const;

    const std::map<int, LinExpr>& var_channel() const { return vars_; }
    const std::map<Int, LinExpr>& int_channel() const { return ints_; }
    const std::vector<std::pair<Poly, LinExpr>>& bases() const { return bases_; }

    RingPtr ring() const { return ring_; }

  private:
    RingPtr ring_;
    std::map<int, LinExpr> vars_;
    std::map<Int, LinExpr> ints_;
    std::vector<std::pair<Poly, LinExpr>> bases_;  // primitive, +lc, non-monomial
};

// ---- reduction --------------------------------------------------------------

struct ReduceStep {
    int delta_index = -1;
    int var = -1;          // ring id of the eliminated edge variable
    RatFn value;           // substituted value of the variable
    bool used_row_op = false;
};

struct NormFactor {
    Poly base;             // over the reduction ring (L/M/integers only at the end)
    LinExpr exponent;      // over the {ldot, mdot} table
};

struct ClosedForm {
    RingPtr ring;
    int Lvar = 0, Mvar = 1;
    std::vector<NormFactor> prefactor;   // deterministic order, zero exponents dropped
    Poly delta_argument;                 // primitive, positive leading coefficient
    std::string str() const;             // canonical one-line rendering
};

struct ReduceOptions {
    int gauge_edge = -1;   // -1: fix the last edge class
    // explicit elimination order: (delta index, edge index) pairs
    std::optional<std::vector<std::pair<int, int>>> order;
};

struct ReduceResult {
    ReductionRing rring;
    AngleParametrization angles;
    int gauge_edge = -1;
    std::vector<int> live_vars;                      // ring ids, elimination pool
    std::vector<RatFn> raw_deltas;                   // original delta arguments
    std::vector<std::pair<RatFn, LinExpr>> weights;  // norm weights of the tetrahedra
    std::vector<Poly> cleared_denominators;          // must not vanish on support
    std::vector<ReduceStep> steps;
    std::vector<std::string> pulls;                  // final factor classification log
    std::vector<std::string> trace;
    ClosedForm form;
};

// Runs the reduction.  Returns nullopt iff an explicit order was given and is
// inadmissible (a requested pick cannot be made linear).  Throws NotLinear if
// the default strategy gets stuck, NotExpressible if a free unit survives.
std::optional<ReduceResult> try_reduce(const Triangulation& tri,
                                       const ReduceOptions& opts = {});

// Same, but inadmissible explicit orders throw InadmissibleOrder.
ReduceResult reduce_state_integral(const Triangulation& tri,
                                   const ReduceOptions& opts = {});

// ---- order enumeration (invariance checks) ----------------------------------

struct OrderCombo {
    int gauge_edge = 0;
    std::vector<std::pair<int, int>> order;  // (delta index, edge index)
};

struct EnumeratedForm {
    OrderCombo combo;
    ReduceResult result;
};

// Every (gauge, delta sequence, variable sequence) combination that reduces
// successfully.  All of them must share the same canonical delta argument.
std::vector<EnumeratedForm> enumerate_reductions(const Triangulation& tri);

}  // namespace zft
