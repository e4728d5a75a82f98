#ifndef SFCLUST_TUPLES_HPP
#define SFCLUST_TUPLES_HPP

// Reasonable sets, admissible tuples, compatibility certificates, the
// recursive compatible-tuple construction and the CRT construction of
// the residue nu0 that clears small prime-square obstructions.

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sfclust::tuples {

using boost::multiprecision::cpp_int;

// R = {b_1,...,b_r}: for every prime p some unit v mod p^2 avoids all
// b mod p^2.  Only primes with p(p-1) <= r can fail; witnesses are
// stored exactly for those.
struct ReasonableSet {
  std::vector<std::int64_t> b;                  // sorted, distinct, nonzero
  std::map<std::int64_t, std::int64_t> witnesses;  // prime -> unit v mod p^2

  std::size_t r() const { return b.size(); }
};

struct AdmissibleTuple {
  std::vector<cpp_int> h;                          // sorted, distinct, >= 0
  std::map<std::int64_t, std::int64_t> witnesses;  // prime p <= k -> v_p

  std::size_t k() const { return h.size(); }
  cpp_int diameter() const { return h.empty() ? cpp_int(0) : h.back() - h.front(); }
};

struct CompatibilityCertificate {
  std::int64_t K = 0;  // (r+1)k + 1
  cpp_int P;           // product of primes p <= K (inclusive; see README)
  std::int64_t r = 0;
  bool checks_11 = false;  // h_m = 0 (mod P^2) for all m
  bool checks_12 = false;  // h_i - h_j + b_l != 0 for all i, j, l

  bool compatible() const { return checks_11 && checks_12; }
};

// Least prime at which a reasonability / admissibility check fails.
struct PrimeCounterexample {
  std::int64_t p;
};

std::variant<ReasonableSet, PrimeCounterexample> check_reasonable(
    std::vector<std::int64_t> b);

std::variant<AdmissibleTuple, PrimeCounterexample> check_admissible(
    std::vector<cpp_int> h);

enum class Scaling { P_squared, P_linear };

// Recursive construction: with L = max(2(k-1)r + 1, k), take the first
// L primes above L and select q'_1 < ... < q'_k so that
// S q'_j != S q'_i +- b_l; returns H = {S q'_1, ..., S q'_k} with
// S = P^2 (default) or S = P.
std::pair<AdmissibleTuple, CompatibilityCertificate> construct_compatible(
    std::size_t k, const ReasonableSet& R, Scaling scaling = Scaling::P_squared);

CompatibilityCertificate check_compatible(const AdmissibleTuple& H,
                                          const ReasonableSet& R);

struct Nu0Result {
  cpp_int nu0;
  cpp_int W1;
};

// W1 = prod_{p<=K} p^2 * prod_{K<p<=D0} p and the least-per-prime
// residue nu0 with (nu0+h_m, W1) = 1, p^2 not dividing nu0+h_m-b_l for
// p <= K, and p not dividing nu0+h_m-b_l for K < p <= D0.
Nu0Result construct_nu0(const AdmissibleTuple& H, const ReasonableSet& R,
                        std::int64_t K, std::int64_t D0);

// The paper's truncation level D0 = log L / log log L with L = log N,
// floored at 3.
std::int64_t d0_for(double N);

std::int64_t k_param(std::size_t k, std::size_t r);  // K = (r+1)k+1

}  // namespace sfclust::tuples

#endif
