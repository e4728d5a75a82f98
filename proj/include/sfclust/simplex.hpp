#ifndef SFCLUST_SIMPLEX_HPP
#define SFCLUST_SIMPLEX_HPP

// Exact-rational polynomials supported on the simplex
// E_k = {x : x_j >= 0, sum x_j <= 1}, and closed-form integrals of
// monomials against powers of (1 - sum x_j).

#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sfclust::simplex {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

using Exponents = std::vector<unsigned>;

// F = sum_a c_a * prod_i t_i^{a_i}, interpreted as supported on E_k
// (identically zero outside).
class SimplexPolynomial {
public:
  explicit SimplexPolynomial(unsigned k) : k_(k) {}

  unsigned k() const { return k_; }
  const std::map<Exponents, cpp_rational>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  unsigned degree() const;

  void add_term(const Exponents& a, const cpp_rational& c);

  SimplexPolynomial operator+(const SimplexPolynomial& o) const;
  SimplexPolynomial operator*(const SimplexPolynomial& o) const;
  SimplexPolynomial scaled(const cpp_rational& c) const;

  // Value of the polynomial expression at x (no support indicator).
  double eval(const std::vector<double>& x) const;

  // 1 if x in E_k else 0, times eval.
  double eval_on_simplex(const std::vector<double>& x) const;

private:
  unsigned k_;
  std::map<Exponents, cpp_rational> terms_;
};

// int_{E_k} prod t_i^{alpha_i} (1 - sum t_i)^beta dt
//   = (prod alpha_i!) beta! / (sum alpha_i + beta + k)!
cpp_rational dirichlet_integral(const Exponents& alpha, unsigned beta, unsigned k);

// I_k(F) = int_{E_k} F^2
cpp_rational compute_I(const SimplexPolynomial& F);

// J_k^(m)(F) = int over the remaining k-1 variables of
// (int_0^{1 - sum_{i != m}} F dt_m)^2; m is 1-based.
cpp_rational compute_J(const SimplexPolynomial& F, unsigned m);

// Bilinear extensions used for matrix assembly: <F,G>_I = int F G and
// the J-form int (int F dt_m)(int G dt_m).
cpp_rational bilinear_I(const SimplexPolynomial& F, const SimplexPolynomial& G);
cpp_rational bilinear_J(const SimplexPolynomial& F, const SimplexPolynomial& G, unsigned m);

}  // namespace sfclust::simplex

#endif
