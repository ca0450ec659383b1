#pragma once
#include "poly.hpp"
#include <optional>
#include <utility>

namespace zft {

// single-divisor multivariate division; succeeds iff d | p exactly
std::optional<Poly> exact_divide(const Poly& p, const Poly& d);

// primitive part and sign normalization: content 1, positive leading coeff
Poly primitive_part(const Poly& p);

// primitive gcd with positive leading coefficient (constants gcd to 1)
Poly poly_gcd(const Poly& a, const Poly& b);

// pseudo-remainder of a by b w.r.t. x:  lc_x(b)^(da-db+1) * a = q*b + prem
Poly prem(const Poly& a, const Poly& b, int x);

// Sylvester-matrix resultant via fraction-free (Bareiss) elimination
Poly resultant(const Poly& p, const Poly& q, int x);

// squarefree part (distinct irreducible factors, each once), primitive +LC
Poly squarefree_part(const Poly& p);

// full squarefree decomposition: list of (primitive factor, multiplicity)
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

// complete splitting of two-term polynomials (a*X^k - b*Y^k patterns);
// non-binomials and unsplittable binomials come back unchanged
std::vector<Poly> split_binomial(const Poly& p);

// substitute variable v by polynomial q
Poly subst(const Poly& p, int v, const Poly& q);

} // namespace zft
