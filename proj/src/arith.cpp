#include "sfclust/arith.hpp"

#include <algorithm>
#include <cmath>

#include "sfclust/errors.hpp"

namespace sfclust::arith {

std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit <= 2) return primes;
  std::vector<bool> composite(limit, false);
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
  }
  return primes;
}

namespace {

// Base primes up to sqrt of the largest segment end seen so far,
// grown on demand.  thread_local so disjoint segments can be sieved
// concurrently.
const std::vector<std::uint64_t>& base_primes_for(std::uint64_t hi) {
  thread_local std::vector<std::uint64_t> cache;
  thread_local std::uint64_t cache_limit = 0;
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
  if (root > cache_limit) {
    cache = primes_below(root + 1);
    cache_limit = root;
  }
  return cache;
}

}  // namespace

Segment sieve_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t budget) {
  if (!(2 <= lo && lo < hi)) throw InvalidInput("sieve_segment: need 2 <= lo < hi");
  if (hi > (std::uint64_t{1} << 63)) throw InvalidInput("sieve_segment: hi > 2^63");
  if (hi - lo > budget)
    throw BudgetExceeded("sieve_segment: range-too-large (" + std::to_string(hi - lo) +
                         " > budget " + std::to_string(budget) + ")");

  Segment seg;
  seg.lo = lo;
  seg.hi = hi;
  std::uint64_t len = hi - lo;
  seg.prime_flags.assign(len, true);
  seg.squarefree_flags.assign(len, true);

  const auto& primes = base_primes_for(hi);
  for (std::uint64_t p : primes) {
    if (p * p >= hi) break;
    // strike proper multiples of p
    std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (std::uint64_t n = start; n < hi; n += p) seg.prime_flags[n - lo] = false;
    // strike multiples of p^2
    std::uint64_t p2 = p * p;
    std::uint64_t start2 = ((lo + p2 - 1) / p2) * p2;
    for (std::uint64_t n = start2; n < hi; n += p2) seg.squarefree_flags[n - lo] = false;
  }
  // p itself stays prime when p >= lo: handled since start >= p*p > p.
  return seg;
}

std::vector<std::uint64_t> first_primes_above(std::size_t count, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  std::uint64_t n = bound;
  while (out.size() < count) {
    ++n;
    if (is_prime_u64(n)) out.push_back(n);
  }
  return out;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((u128)a * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 3.3 * 10^24.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_squarefree_u64(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  // Remaining cofactor has at most two prime factors; a square divisor
  // is only possible if it is a perfect square.
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  for (std::uint64_t s = (r > 1 ? r - 1 : 1); s <= r + 1; ++s) {
    if (s * s == n && n > 1) return false;
  }
  return true;
}

cpp_int primorial(std::uint64_t z) {
  cpp_int out = 1;
  for (std::uint64_t p : primes_below(z)) out *= p;
  return out;
}

MultTables mult_tables(std::uint64_t limit, std::uint64_t budget) {
  if (limit < 2) throw InvalidInput("mult_tables: limit >= 2 required");
  if (limit > budget)
    throw BudgetExceeded("mult_tables: limit " + std::to_string(limit) +
                         " exceeds budget " + std::to_string(budget));
  MultTables t;
  t.limit = limit;
  t.mu.assign(limit + 1, 0);
  t.spf.assign(limit + 1, 0);
  t.phi.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  t.mu[1] = 1;
  t.phi[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (t.spf[i] == 0) {
      t.spf[i] = static_cast<std::uint32_t>(i);
      t.mu[i] = -1;
      t.phi[i] = i - 1;
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      std::uint64_t ip = i * p;
      if (p > t.spf[i] || ip > limit) break;
      t.spf[ip] = p;
      if (i % p == 0) {
        t.mu[ip] = 0;
        t.phi[ip] = t.phi[i] * p;
        break;
      }
      t.mu[ip] = static_cast<std::int8_t>(-t.mu[i]);
      t.phi[ip] = t.phi[i] * (p - 1);
    }
  }
  return t;
}

std::vector<std::pair<std::uint64_t, unsigned>> MultTables::factor(std::uint64_t n) const {
  std::vector<std::pair<std::uint64_t, unsigned>> f;
  if (n <= limit) {
    while (n > 1) {
      std::uint64_t p = spf[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
    return f;
  }
  return factor_u64(n);
}

cpp_int MultTables::tau_k(unsigned k, std::uint64_t n) const {
  if (n == 0) throw InvalidInput("tau_k: n >= 1 required");
  cpp_int out = 1;
  for (auto [p, e] : factor(n)) {
    // number of ways to write p^e as an ordered k-fold product:
    // C(e + k - 1, k - 1)
    cpp_int binom = 1;
    for (unsigned i = 1; i <= e; ++i) {
      binom *= (k - 1 + i);
      binom /= i;
    }
    out *= binom;
  }
  return out;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> f;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::uint64_t euler_phi_u64(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto [p, e] : factor_u64(n)) {
    r -= r / p;
  }
  return r;
}

namespace {

// g = gcd(a, b) and x, y with a x + b y = g.
cpp_int ext_gcd(const cpp_int& a, const cpp_int& b, cpp_int& x, cpp_int& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  cpp_int x1, y1;
  cpp_int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

std::pair<cpp_int, cpp_int> crt_solve(
    const std::vector<std::pair<cpp_int, cpp_int>>& congruences) {
  cpp_int r = 0, m = 1;
  for (const auto& [ri, mi] : congruences) {
    if (mi <= 0) throw InvalidInput("crt_solve: modulus must be positive");
    cpp_int x, y;
    cpp_int g = ext_gcd(m, mi, x, y);
    if (g != 1) throw InvalidInput("crt_solve: non-coprime-moduli");
    // r' = r + m * ((ri - r) * x mod mi)
    cpp_int t = ((ri - r) % mi) * x % mi;
    r += m * t;
    m *= mi;
    r %= m;
    if (r < 0) r += m;
  }
  return {r, m};
}

std::vector<Convergent> convergents(const mp::Interval& alpha, std::uint64_t v_max) {
  if (v_max < 1) throw InvalidInput("convergents: v_max >= 1 required");
  std::vector<Convergent> out;
  mp::Real alpha_mid(alpha.prec());
  mpfr_add(alpha_mid.raw(), alpha.lo(), alpha.hi(), MPFR_RNDN);
  mpfr_div_2ui(alpha_mid.raw(), alpha_mid.raw(), 1, MPFR_RNDN);

  mp::Interval x = alpha;
  cpp_int p_prev = 1, p_prev2 = 0;  // p_{-1}, p_{-2}
  cpp_int q_prev = 0, q_prev2 = 1;  // q_{-1}, q_{-2}
  for (;;) {
    auto a = mp::floor_exact(x);
    if (!a)
      throw PrecisionExhausted(
          "convergents: partial quotient not certifiable at this precision");
    cpp_int p = *a * p_prev + p_prev2;
    cpp_int q = *a * q_prev + q_prev2;
    if (q > v_max) break;
    // certificate: |alpha - p/q| * q^2 < 1
    mp::Interval e =
        mp::sub(mp::mul(alpha, mp::Interval::of_cpp_int(q, alpha.prec())),
                mp::Interval::of_cpp_int(p, alpha.prec()));
    // |e| * q < 1
    mp::Interval mag(alpha.prec());
    mpfr_t alo, ahi;
    mpfr_init2(alo, alpha.prec());
    mpfr_init2(ahi, alpha.prec());
    mpfr_abs(alo, e.lo(), MPFR_RNDU);
    mpfr_abs(ahi, e.hi(), MPFR_RNDU);
    mpfr_max(mag.hi(), alo, ahi, MPFR_RNDU);
    mpfr_set_zero(mag.lo(), 1);
    mpfr_clear(alo);
    mpfr_clear(ahi);
    mp::Interval lhs = mp::mul(mag, mp::Interval::of_cpp_int(q, alpha.prec()));
    if (!lhs.certainly_lt(mp::Interval::of_u64(1, alpha.prec())))
      throw PrecisionExhausted("convergents: certificate |alpha*v - u|*v < 1 not certifiable");
    out.push_back(Convergent{p, q, alpha_mid});

    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    mp::Interval rem = mp::sub(x, mp::Interval::of_cpp_int(*a, alpha.prec()));
    if (rem.contains_zero())
      throw PrecisionExhausted("convergents: remainder not separable from zero");
    x = mp::div(mp::Interval::of_u64(1, alpha.prec()), rem);
  }
  return out;
}

std::vector<Convergent> convergents(const std::string& alpha_expr, std::uint64_t v_max,
                                    mpfr_prec_t prec) {
  return convergents(mp::eval_expr(alpha_expr, prec), v_max);
}

}  // namespace sfclust::arith
