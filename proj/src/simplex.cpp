#include "sfclust/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sfclust/errors.hpp"

namespace sfclust::simplex {

namespace {

cpp_int factorial(unsigned n) {
  static std::vector<cpp_int> memo{1};
  while (memo.size() <= n) memo.push_back(memo.back() * static_cast<unsigned>(memo.size()));
  return memo[n];
}

}  // namespace

unsigned SimplexPolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [a, c] : terms_)
    d = std::max(d, std::accumulate(a.begin(), a.end(), 0u));
  return d;
}

void SimplexPolynomial::add_term(const Exponents& a, const cpp_rational& c) {
  if (a.size() != k_) throw InvalidInput("SimplexPolynomial: exponent arity mismatch");
  if (c == 0) return;
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SimplexPolynomial SimplexPolynomial::operator+(const SimplexPolynomial& o) const {
  if (k_ != o.k_) throw InvalidInput("SimplexPolynomial: dimension mismatch");
  SimplexPolynomial r = *this;
  for (const auto& [a, c] : o.terms_) r.add_term(a, c);
  return r;
}

SimplexPolynomial SimplexPolynomial::operator*(const SimplexPolynomial& o) const {
  if (k_ != o.k_) throw InvalidInput("SimplexPolynomial: dimension mismatch");
  SimplexPolynomial r(k_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      Exponents s(k_);
      for (unsigned i = 0; i < k_; ++i) s[i] = a[i] + b[i];
      r.add_term(s, ca * cb);
    }
  }
  return r;
}

SimplexPolynomial SimplexPolynomial::scaled(const cpp_rational& c) const {
  SimplexPolynomial r(k_);
  if (c == 0) return r;
  for (const auto& [a, ca] : terms_) r.add_term(a, ca * c);
  return r;
}

double SimplexPolynomial::eval(const std::vector<double>& x) const {
  double acc = 0;
  for (const auto& [a, c] : terms_) {
    double t = static_cast<double>(c);
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned e = 0; e < a[i]; ++e) t *= x[i];
    acc += t;
  }
  return acc;
}

double SimplexPolynomial::eval_on_simplex(const std::vector<double>& x) const {
  double sum = 0;
  for (double xi : x) {
    if (xi < 0) return 0.0;
    sum += xi;
  }
  if (sum > 1.0) return 0.0;
  return eval(x);
}

cpp_rational dirichlet_integral(const Exponents& alpha, unsigned beta, unsigned k) {
  if (alpha.size() != k) throw InvalidInput("dirichlet_integral: len(alpha) != k");
  cpp_int num = factorial(beta);
  unsigned total = beta + k;
  for (unsigned ai : alpha) {
    num *= factorial(ai);
    total += ai;
  }
  return cpp_rational(num, factorial(total));
}

cpp_rational compute_I(const SimplexPolynomial& F) {
  return bilinear_I(F, F);
}

cpp_rational bilinear_I(const SimplexPolynomial& F, const SimplexPolynomial& G) {
  if (F.k() != G.k()) throw InvalidInput("bilinear_I: dimension mismatch");
  unsigned k = F.k();
  cpp_rational acc = 0;
  for (const auto& [a, ca] : F.terms()) {
    for (const auto& [b, cb] : G.terms()) {
      Exponents s(k);
      for (unsigned i = 0; i < k; ++i) s[i] = a[i] + b[i];
      acc += ca * cb * dirichlet_integral(s, 0, k);
    }
  }
  return acc;
}

cpp_rational compute_J(const SimplexPolynomial& F, unsigned m) {
  return bilinear_J(F, F, m);
}

cpp_rational bilinear_J(const SimplexPolynomial& F, const SimplexPolynomial& G, unsigned m) {
  if (F.k() != G.k()) throw InvalidInput("bilinear_J: dimension mismatch");
  unsigned k = F.k();
  if (m < 1 || m > k) throw InvalidInput("bilinear_J: m out of range");
  unsigned mi = m - 1;

  // For terms a of F and b of G, integrating first in t_m over
  // [0, 1 - sum_{i != m} t_i] gives u^{a_m+1}/(a_m+1) with u the slack
  // variable; the product integral over the remaining (k-1)-simplex is
  // a Dirichlet integral with beta = a_m + b_m + 2.
  cpp_rational acc = 0;
  for (const auto& [a, ca] : F.terms()) {
    for (const auto& [b, cb] : G.terms()) {
      Exponents rest;
      rest.reserve(k - 1);
      for (unsigned i = 0; i < k; ++i)
        if (i != mi) rest.push_back(a[i] + b[i]);
      unsigned beta = a[mi] + b[mi] + 2;
      cpp_rational w = ca * cb /
                       (cpp_rational(a[mi] + 1) * cpp_rational(b[mi] + 1));
      acc += w * dirichlet_integral(rest, beta, k - 1);
    }
  }
  return acc;
}

}  // namespace sfclust::simplex
