#ifndef SFCLUST_VARIATIONAL_HPP
#define SFCLUST_VARIATIONAL_HPP

// Lower bounds for M_k = sup_F (sum_m J_k^(m)(F)) / I_k(F) over a
// polynomial basis, via the generalized symmetric eigenproblem
// A x = lambda B x.  The returned bound is re-certified by evaluating
// the Rayleigh quotient in exact rational arithmetic at a rationalized
// eigenvector, so it never rests on the floating-point solve alone.

#include <vector>

#include "sfclust/simplex.hpp"

namespace sfclust::variational {

using simplex::cpp_rational;
using simplex::SimplexPolynomial;

struct VariationalResult {
  unsigned k = 0;
  unsigned degree = 0;
  double mk_lower = 0.0;             // exact ratio, rounded once to double
  std::vector<cpp_rational> coefficients;  // optimal F in the basis below
  std::vector<SimplexPolynomial> basis;
  cpp_rational I;                    // I_k at the returned F
  std::vector<cpp_rational> J;       // J_k^(m) at the returned F, m = 1..k
  double eigen_estimate = 0.0;       // raw floating-point eigenvalue
};

// Monomial bases restricted to total degree <= degree; the symmetric
// variant uses orbit sums of exponent multisets.
std::vector<SimplexPolynomial> monomial_basis(unsigned k, unsigned degree);
std::vector<SimplexPolynomial> symmetric_basis(unsigned k, unsigned degree);

VariationalResult mk_lower_bound(unsigned k, unsigned degree, bool symmetric = true);

}  // namespace sfclust::variational

#endif
