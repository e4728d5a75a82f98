#ifndef SFCLUST_ARITH_HPP
#define SFCLUST_ARITH_HPP

// Core integer machinery: segmented prime/squarefree sieves,
// multiplicative function tables, CRT, primorials and continued
// fractions.  Everything here is pure and safe to call concurrently.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sfclust/mp.hpp"

namespace sfclust::arith {

using boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultSegmentLen = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultSegmentBudget = std::uint64_t{1} << 28;

// Half-open window [lo, hi) with primality and squarefree bitmaps.
struct Segment {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<bool> prime_flags;
  std::vector<bool> squarefree_flags;

  bool is_prime(std::uint64_t n) const { return prime_flags[n - lo]; }
  bool is_squarefree(std::uint64_t n) const { return squarefree_flags[n - lo]; }
};

// Flags for [lo, hi); throws BudgetExceeded when hi - lo > budget.
Segment sieve_segment(std::uint64_t lo, std::uint64_t hi,
                      std::uint64_t budget = kDefaultSegmentBudget);

// Primes p < limit (strict), simple sieve.
std::vector<std::uint64_t> primes_below(std::uint64_t limit);

// The first `count` primes strictly greater than `bound`.
std::vector<std::uint64_t> first_primes_above(std::size_t count, std::uint64_t bound);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

// Squarefree test by trial division up to cbrt(n) plus a perfect-square
// check on the cofactor.  Independent of the sieve path.
bool is_squarefree_u64(std::uint64_t n);

// P(z) = prod_{p < z} p  (strict inequality; empty product = 1).
cpp_int primorial(std::uint64_t z);

// mu, phi and smallest-prime-factor tables for n <= limit, plus a
// tau_k evaluator.
struct MultTables {
  std::uint64_t limit = 0;
  std::vector<std::int8_t> mu;
  std::vector<std::uint32_t> spf;
  std::vector<std::uint64_t> phi;

  std::int8_t mu_at(std::uint64_t n) const { return mu[n]; }
  std::uint64_t phi_at(std::uint64_t n) const { return phi[n]; }
  // tau_k(n) = number of ordered k-tuples with product n.
  cpp_int tau_k(unsigned k, std::uint64_t n) const;
  std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) const;
};

MultTables mult_tables(std::uint64_t limit,
                       std::uint64_t budget = std::uint64_t{1} << 31);

// phi(n) by trial-division factorization (for n beyond table limits).
std::uint64_t euler_phi_u64(std::uint64_t n);

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

// Simultaneous congruences x = r_i (mod m_i); moduli pairwise coprime.
// Returns (x, prod m_i) with 0 <= x < prod.
std::pair<cpp_int, cpp_int> crt_solve(
    const std::vector<std::pair<cpp_int, cpp_int>>& congruences);

// Continued-fraction convergent u/v of alpha with the certificate
// |alpha - u/v| * v^2 < 1 checked in interval arithmetic.
struct Convergent {
  cpp_int u;
  cpp_int v;
  mp::Real alpha;  // the expansion's alpha at working precision
};

// All convergents with v <= v_max.  Throws PrecisionExhausted when a
// partial quotient cannot be certified at the given precision.
std::vector<Convergent> convergents(const mp::Interval& alpha, std::uint64_t v_max);
std::vector<Convergent> convergents(const std::string& alpha_expr, std::uint64_t v_max,
                                    mpfr_prec_t prec = 256);

}  // namespace sfclust::arith

#endif
