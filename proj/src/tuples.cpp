#include "sfclust/tuples.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sfclust/arith.hpp"
#include "sfclust/errors.hpp"

namespace sfclust::tuples {

namespace {

// least non-negative residue of a (possibly negative) big integer
std::int64_t mod_i64(const cpp_int& a, std::int64_t m) {
  cpp_int r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::int64_t k_param(std::size_t k, std::size_t r) {
  return static_cast<std::int64_t>((r + 1) * k + 1);
}

std::int64_t d0_for(double N) {
  if (N <= 1.0) return 3;
  double L = std::log(N);
  if (L <= 1.0) return 3;
  double ll = std::log(L);
  if (ll <= 1.0) return 3;
  double d0 = std::floor(ll / std::log(ll));
  return d0 < 3.0 ? 3 : static_cast<std::int64_t>(d0);
}

std::variant<ReasonableSet, PrimeCounterexample> check_reasonable(
    std::vector<std::int64_t> b) {
  for (std::int64_t v : b)
    if (v == 0) throw InvalidInput("check_reasonable: zero entry");
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(b.begin(), b.end()) != b.end())
    throw InvalidInput("check_reasonable: duplicate entry");

  ReasonableSet R;
  R.b = std::move(b);
  auto r = static_cast<std::int64_t>(R.b.size());

  // Only primes with p(p-1) <= r can have every unit class mod p^2
  // occupied; beyond that a free class exists by counting.
  for (std::int64_t p : arith::primes_below(static_cast<std::uint64_t>(r) + 2)) {
    if (p * (p - 1) > r) continue;
    std::int64_t p2 = p * p;
    std::int64_t found = -1;
    for (std::int64_t v = 1; v < p2; ++v) {
      if (v % p == 0) continue;
      bool clash = false;
      for (std::int64_t bl : R.b) {
        std::int64_t res = bl % p2;
        if (res < 0) res += p2;
        if (res == v) {
          clash = true;
          break;
        }
      }
      if (!clash) {
        found = v;
        break;
      }
    }
    if (found < 0) return PrimeCounterexample{p};
    R.witnesses[p] = found;
  }
  return R;
}

std::variant<AdmissibleTuple, PrimeCounterexample> check_admissible(
    std::vector<cpp_int> h) {
  if (!std::is_sorted(h.begin(), h.end()))
    throw InvalidInput("check_admissible: input not sorted");
  if (std::adjacent_find(h.begin(), h.end()) != h.end())
    throw InvalidInput("check_admissible: duplicate entry");
  if (!h.empty() && h.front() < 0)
    throw InvalidInput("check_admissible: negative entry");

  AdmissibleTuple H;
  H.h = std::move(h);
  auto k = static_cast<std::uint64_t>(H.h.size());

  // For p > k at most k < p classes are occupied, so only p <= k needs
  // a witness.
  for (std::int64_t p : arith::primes_below(k + 1)) {
    std::vector<bool> hit(static_cast<std::size_t>(p), false);
    for (const cpp_int& hm : H.h) hit[static_cast<std::size_t>(mod_i64(hm, p))] = true;
    std::int64_t found = -1;
    for (std::int64_t v = 0; v < p; ++v) {
      if (!hit[static_cast<std::size_t>(v)]) {
        found = v;
        break;
      }
    }
    if (found < 0) return PrimeCounterexample{p};
    H.witnesses[p] = found;
  }
  return H;
}

std::pair<AdmissibleTuple, CompatibilityCertificate> construct_compatible(
    std::size_t k, const ReasonableSet& R, Scaling scaling) {
  if (k < 1) throw InvalidInput("construct_compatible: k >= 1 required");
  std::size_t r = R.r();
  std::int64_t K = k_param(k, r);
  cpp_int P = arith::primorial(static_cast<std::uint64_t>(K) + 1);  // primes p <= K
  cpp_int S = (scaling == Scaling::P_squared) ? P * P : P;

  // The recursion needs a pool of at least k candidates; the paper's
  // L = 2(k-1)r+1 covers this for r >= 1.
  std::size_t L = std::max<std::size_t>(2 * (k - 1) * r + 1, k);
  auto pool = arith::first_primes_above(L, L);

  std::vector<std::uint64_t> chosen;
  std::vector<bool> used(pool.size(), false);
  for (std::size_t j = 0; j < k; ++j) {
    std::int64_t pick = -1;
    for (std::size_t idx = 0; idx < pool.size(); ++idx) {
      if (used[idx]) continue;
      bool ok = true;
      // scaled analogue of the selection rule: S q != S q'_i +- b_l
      for (std::uint64_t qi : chosen) {
        for (std::int64_t bl : R.b) {
          cpp_int lhs = S * pool[idx];
          if (lhs == S * qi + bl || lhs == S * qi - bl) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) {
        pick = static_cast<std::int64_t>(idx);
        break;
      }
    }
    if (pick < 0)
      throw InternalError("construct_compatible: selection exhausted (L > 2(j-1)r violated)");
    used[static_cast<std::size_t>(pick)] = true;
    chosen.push_back(pool[static_cast<std::size_t>(pick)]);
  }

  std::vector<cpp_int> h;
  h.reserve(k);
  for (std::uint64_t q : chosen) h.push_back(S * q);
  std::sort(h.begin(), h.end());

  auto checked = check_admissible(std::move(h));
  if (!std::holds_alternative<AdmissibleTuple>(checked))
    throw InternalError("construct_compatible: constructed tuple not admissible");
  AdmissibleTuple H = std::get<AdmissibleTuple>(std::move(checked));
  CompatibilityCertificate cert = check_compatible(H, R);
  return {std::move(H), cert};
}

CompatibilityCertificate check_compatible(const AdmissibleTuple& H,
                                          const ReasonableSet& R) {
  CompatibilityCertificate cert;
  cert.r = static_cast<std::int64_t>(R.r());
  cert.K = k_param(H.k(), R.r());
  cert.P = arith::primorial(static_cast<std::uint64_t>(cert.K) + 1);
  cpp_int P2 = cert.P * cert.P;

  cert.checks_11 = true;
  for (const cpp_int& hm : H.h) {
    if (hm % P2 != 0) {
      cert.checks_11 = false;
      break;
    }
  }

  cert.checks_12 = true;
  for (const cpp_int& hi : H.h) {
    for (const cpp_int& hj : H.h) {
      for (std::int64_t bl : R.b) {
        if (hi - hj + bl == 0) {
          cert.checks_12 = false;
          break;
        }
      }
      if (!cert.checks_12) break;
    }
    if (!cert.checks_12) break;
  }
  return cert;
}

Nu0Result construct_nu0(const AdmissibleTuple& H, const ReasonableSet& R,
                        std::int64_t K, std::int64_t D0) {
  if (K != k_param(H.k(), R.r()))
    throw InvalidInput("construct_nu0: K must equal (r+1)k+1");

  std::vector<std::pair<cpp_int, cpp_int>> congruences;
  cpp_int W1 = 1;

  for (std::int64_t p : arith::primes_below(static_cast<std::uint64_t>(K) + 1)) {
    std::int64_t p2 = p * p;
    // least residue mod p^2 with (rho + h_m, p) = 1 and
    // p^2 not dividing rho + h_m - b_l, for all m, l
    std::int64_t found = -1;
    for (std::int64_t rho = 0; rho < p2 && found < 0; ++rho) {
      bool ok = true;
      for (const cpp_int& hm : H.h) {
        std::int64_t hp = mod_i64(hm, p2);
        if ((rho + hp) % p == 0) {
          ok = false;
          break;
        }
        for (std::int64_t bl : R.b) {
          std::int64_t t = (rho + hp - bl) % p2;
          if (t < 0) t += p2;
          if (t == 0) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) found = rho;
    }
    if (found < 0)
      throw InternalError("construct_nu0: no valid residue mod " + std::to_string(p2) +
                          " (R not reasonable or H not compatible)");
    congruences.emplace_back(found, p2);
    W1 *= p2;
  }

  if (D0 > K) {
    for (std::int64_t p : arith::primes_below(static_cast<std::uint64_t>(D0) + 1)) {
      if (p <= K) continue;
      // least residue mod p avoiding rho + h_m - b_l = 0 (b_0 = 0 included)
      std::int64_t found = -1;
      for (std::int64_t rho = 0; rho < p && found < 0; ++rho) {
        bool ok = true;
        for (const cpp_int& hm : H.h) {
          std::int64_t hp = mod_i64(hm, p);
          if ((rho + hp) % p == 0) {
            ok = false;
            break;
          }
          for (std::int64_t bl : R.b) {
            std::int64_t t = (rho + hp - bl) % p;
            if (t < 0) t += p;
            if (t == 0) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (ok) found = rho;
      }
      if (found < 0)
        throw InternalError("construct_nu0: no valid residue mod " + std::to_string(p) +
                            " (impossible: p-1 > (r+1)k)");
      congruences.emplace_back(found, p);
      W1 *= p;
    }
  }

  auto [nu0, mod] = arith::crt_solve(congruences);
  if (mod != W1) throw InternalError("construct_nu0: modulus mismatch");
  return Nu0Result{nu0, W1};
}

}  // namespace sfclust::tuples
