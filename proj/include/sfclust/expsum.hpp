#ifndef SFCLUST_EXPSUM_HPP
#define SFCLUST_EXPSUM_HPP

// Evaluators and empirical bound checks for the three exponential-sum
// lemmas: the discrepancy inequality (shift existence and the
// Erdos-Turan-style bound), bilinear character sums, and
// progression-twisted sums over fractional powers.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "sfclust/characters.hpp"
#include "sfclust/mp.hpp"

namespace sfclust::expsum {

// Interval of length len in (0,1), taken mod 1 as (lo, lo+len].
struct UnitInterval {
  double lo = 0.0;
  double len = 0.0;

  bool contains_mod1(double x) const;
};

struct Lemma1Instance {
  std::vector<double> x;
  std::vector<double> a;  // non-negative weights
  UnitInterval I;
  unsigned L = 1;
};

// A shift z with #{j : x_j in z + I (mod 1)} >= J * len.
double lemma1_shift(const std::vector<double>& x, const UnitInterval& I);

struct Lemma1bResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

// |sum_{x_j in I} a_j - len * sum a_j| against the trigonometric bound
// with cutoff L; ok allows only float slack 1e-9 * sum a_j.
Lemma1bResult lemma1b_check(const Lemma1Instance& inst);

struct Lemma3Result {
  std::complex<double> S{0.0, 0.0};
  double bound = 0.0;
  double ratio = 0.0;
  std::uint64_t terms = 0;
};

// S = sum_{K < k <= K', mk = u (mod q)} e(h (mk)^c), with the phase
// fractional part certified to `tol / terms`; double evaluation is used
// only when its worst-case rounding fits that budget, otherwise the
// reduction runs in MPFR at the needed precision.
Lemma3Result lemma3_sum(double c, std::uint64_t h, std::uint64_t m, std::uint64_t K,
                        std::uint64_t K_prime, std::uint64_t q, std::uint64_t u,
                        double tol = 1e-10);

// Same sum carried out entirely at `prec` bits (reference path).
Lemma3Result lemma3_reference(double c, std::uint64_t h, std::uint64_t m, std::uint64_t K,
                              std::uint64_t K_prime, std::uint64_t q, std::uint64_t u,
                              mpfr_prec_t prec = 256);

struct BilinearInstance {
  std::uint64_t H = 1, N = 1, M = 1, Q = 1;
  double X = 1.0;
  double alpha = 0.5, beta = 1.0, gamma = 1.0;
  double epsilon = 0.05;  // the (HMN)^eps factor on the bound
  // coefficient oracles, |a| <= 1 and |b| <= 1; defaults are constant 1
  std::function<std::complex<double>(std::uint64_t h, std::uint64_t n, std::uint64_t q,
                                     const DirichletCharacter&)>
      a;
  std::function<std::complex<double>(std::uint64_t m)> b;
};

struct Lemma2Result {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// lhs = sum_{q<=Q} sum_chi |S_0(chi)| by direct evaluation; rhs is the
// stated bound with the configured epsilon factor.
Lemma2Result lemma2_sum(const BilinearInstance& inst,
                        std::uint64_t ops_budget = 2'000'000'000ull);

}  // namespace sfclust::expsum

#endif
