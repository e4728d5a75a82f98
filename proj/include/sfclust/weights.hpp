#ifndef SFCLUST_WEIGHTS_HPP
#define SFCLUST_WEIGHTS_HPP

// Sieve weights y_r, lambda_d and w_n = (sum_{d_i | n+h_i} lambda_d)^2
// restricted to the residue class nu0 mod W1, with empirical sums S1,
// S2(m) measured against their predicted main terms, the second-moment
// diagnostic, and the Omega(p) square-divisibility sums.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sfclust/sets.hpp"
#include "sfclust/simplex.hpp"
#include "sfclust/tuples.hpp"

namespace sfclust::weights {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

struct SieveContext {
  std::uint64_t N = 0;
  std::uint64_t M = 0;
  double Y = 0.0;
  double theta = 0.5;
  double epsilon = 0.01;
  unsigned t = 2;
  unsigned k = 0;
  std::int64_t K = 0;   // (r+1)k+1
  std::int64_t D0 = 3;
  cpp_int W1;
  cpp_int nu0;
  std::int64_t W1_i64 = 0;   // checked narrowing for scan loops
  std::int64_t nu0_i64 = 0;
  double R_level = 0.0;      // N^(theta/2 - epsilon)
  simplex::SimplexPolynomial F{1};
  std::vector<std::int64_t> h;  // tuple offsets, narrowed
  std::vector<std::int64_t> b;  // the reasonable set
  double b_floor = 1.0;         // min_m b_m
  std::vector<double> b_m;
  std::vector<double> Y_m;
  std::vector<std::string> warnings;
};

// Assembles the context: nu0/W1 construction, R = N^(theta/2-eps),
// Y_m = (Y/M) * int_N^{N+M} dt/log t, and the (1.3)-style validation
// warnings.  Throws InvalidInput when theta is outside (0, 3/4) or the
// offsets do not fit 64-bit arithmetic.
SieveContext make_context(std::uint64_t N, std::uint64_t M, double Y, double theta,
                          double epsilon, unsigned t,
                          const tuples::AdmissibleTuple& H,
                          const tuples::ReasonableSet& R,
                          const simplex::SimplexPolynomial& F);

struct LambdaTable {
  std::vector<std::vector<std::int64_t>> support;  // admissible d-tuples, sorted
  std::vector<double> values;                      // lambda_d
  double ymax = 0.0;
  double lmax = 0.0;

  std::size_t size() const { return support.size(); }
};

// F(log r_1 / log R, ...) when (prod r_i, W1) = 1, mu^2(prod r_i) = 1
// and prod r_i <= R; zero otherwise.
double y_weight(const std::vector<std::int64_t>& r, const SieveContext& ctx);

// Exact enumeration of every admissible tuple with prod <= R_level.
// Throws BudgetExceeded when the support would exceed `cap` tuples.
LambdaTable lambda_table(const SieveContext& ctx, std::size_t cap = 5'000'000);

// Exact-rational recomputation of lambda over the same support (y
// values taken as exact dyadics); used to validate double rounding.
std::vector<cpp_rational> lambda_table_exact(const SieveContext& ctx,
                                             const LambdaTable& table);

// sum_{d_i | n + h_i for all i} lambda_d (no residue-class indicator)
double divisor_sum(std::uint64_t n, const LambdaTable& table,
                   const std::vector<std::int64_t>& h);

double weight_w(std::uint64_t n, const LambdaTable& table, const SieveContext& ctx);

struct WeightDiagnostics {
  double S1_emp = 0.0;
  double S1_pred = 0.0;
  std::vector<double> S2_emp;   // per m
  std::vector<double> S2_pred;  // per m
  double second_moment = 0.0;
  double second_moment_scale = 0.0;  // L^{19k} M/W1 + N^{2 theta}
  std::map<std::int64_t, double> omega;
  std::uint64_t class_members = 0;
};

WeightDiagnostics empirical_sums(const sets::IndexedSet& A, const LambdaTable& table,
                                 const SieveContext& ctx);

// Omega(p) = sum of w_n over n in A with p^2 | n + h_m - b_l.
double omega_diagnostic(std::int64_t p, unsigned m, unsigned ell,
                        const sets::IndexedSet& A, const LambdaTable& table,
                        const SieveContext& ctx);

// B = (M/Y)^2 max(L^{18k}, N^{2 theta}/M); the Y > N^{1/2+eps} variant
// B1 = (M/Y) N^eps is selected by `variant_b1`.
double omega_cutoff_B(const SieveContext& ctx, bool variant_b1 = false);

}  // namespace sfclust::weights

#endif
