#ifndef SFCLUST_SETS_HPP
#define SFCLUST_SETS_HPP

// Ambient sets A over [N, N+M): full and short intervals, Beatty
// sequences (gamma n mod 1 in a prescribed interval) and
// fractional-power sets ({n^c - beta} < delta), with certified
// membership at the borderline, plus the V(q) equidistribution
// discrepancy and its mu^2 tau_{3k}-weighted sums.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sfclust/mp.hpp"

namespace sfclust::sets {

enum class SetKind { interval, short_interval, beatty, power };

struct IntervalParams {};

struct ShortIntervalParams {
  double phi = 0.7;  // M = floor(N^phi) + 1
};

struct BeattyParams {
  std::string alpha_expr = "sqrt(2)";  // irrational > 1
  std::string beta_expr = "0";
  bool cross_check = true;  // verify against floor-enumeration
};

struct PowerParams {
  double c = 0.9;        // 8/9 < c < 1 for the theorem range
  std::string beta_expr = "0";
  double epsilon = 0.01;
  double delta_override = 0.0;  // > 0 replaces N^(-1+c+eps)
  double shrink = 0.0;          // optional I_2 factor (1 - L^-shrink ... ) unused when 0
};

using SetParams =
    std::variant<IntervalParams, ShortIntervalParams, BeattyParams, PowerParams>;

struct IndexedSet {
  SetKind kind = SetKind::interval;
  std::uint64_t N = 0;
  std::uint64_t M = 0;
  std::vector<bool> members;  // indexed by n - N
  SetParams params;
  double Y = 0.0;
  double delta = 0.0;              // power kind: the threshold actually used
  std::uint64_t borderline = 0;    // memberships unresolved at max precision
  std::vector<std::string> warnings;

  bool contains(std::uint64_t n) const {
    return n >= N && n < N + M && members[n - N];
  }
  std::uint64_t size() const;
};

struct BuildOptions {
  mpfr_prec_t precision = 256;
  int max_doublings = 4;  // borderline escalation: up to precision << max_doublings
  double Y_override = 0.0;
};

IndexedSet build_set(SetKind kind, const SetParams& params, std::uint64_t N,
                     std::uint64_t M, const BuildOptions& opts = {});

// V(q) = max_a |#{n in A : n = a (mod q)} - Y/q|
double equidist_V(const IndexedSet& A, std::uint64_t q);

struct EquidistReport {
  std::uint64_t q_max = 0;
  std::map<std::uint64_t, double> V;  // q -> V(dq) for contributing q
  double weighted_lhs = 0.0;
  double rhs_scale = 0.0;
};

// sum_{q <= q_max, (q,d)=1} mu^2(q) tau_{3k}(q) V(dq), with the
// reference scale Y (log N)^(-k-eps) / d reported alongside.
EquidistReport weighted_equidist(const IndexedSet& A, std::uint64_t d,
                                 std::uint64_t q_max, unsigned k, double eps = 0.05);

}  // namespace sfclust::sets

#endif
