#include "sfclust/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sfclust/errors.hpp"

namespace sfclust::expsum {

namespace {

double frac01(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // guard against rounding at the boundary
  return f;
}

}  // namespace

bool UnitInterval::contains_mod1(double x) const {
  // x in (lo, lo+len] mod 1  <=>  frac(x - lo) in (0, len]
  double f = frac01(x - lo);
  return f > 0.0 && f <= len;
}

double lemma1_shift(const std::vector<double>& x, const UnitInterval& I) {
  if (!(I.len > 0.0 && I.len < 1.0))
    throw InvalidInput("lemma1_shift: interval length must lie in (0,1)");
  if (x.empty()) return 0.0;
  // The count, as a function of z, only changes when an x_j enters at
  // the right endpoint: x_j in z + I iff z in [x_j - lo - len, x_j - lo).
  // Scanning the left endpoints of those windows covers every maximal
  // count region.
  std::size_t best_count = 0;
  double best_z = 0.0;
  for (double xj : x) {
    double z0 = frac01(xj - I.lo - I.len);
    // nudged copies absorb rounding at the window boundary
    for (double z : {z0, frac01(z0 - 1e-9), frac01(z0 + 1e-9)}) {
      std::size_t count = 0;
      for (double xi : x)
        if (I.contains_mod1(xi - z)) ++count;
      if (count > best_count) {
        best_count = count;
        best_z = z;
      }
    }
  }
  double need = static_cast<double>(x.size()) * I.len;
  if (static_cast<double>(best_count) < need)
    throw InternalError("lemma1_shift: averaging bound violated (count " +
                        std::to_string(best_count) + " < J*len)");
  return best_z;
}

Lemma1bResult lemma1b_check(const Lemma1Instance& inst) {
  if (inst.x.size() != inst.a.size())
    throw InvalidInput("lemma1b_check: |x| != |a|");
  if (!(inst.I.len > 0.0 && inst.I.len < 1.0))
    throw InvalidInput("lemma1b_check: interval length must lie in (0,1)");
  if (inst.L < 1) throw InvalidInput("lemma1b_check: L >= 1 required");

  const std::size_t J = inst.x.size();
  double total = 0.0, inside = 0.0;
  for (std::size_t j = 0; j < J; ++j) {
    if (inst.a[j] < 0) throw InvalidInput("lemma1b_check: weights must be non-negative");
    total += inst.a[j];
    if (inst.I.contains_mod1(inst.x[j])) inside += inst.a[j];
  }

  Lemma1bResult res;
  res.lhs = std::abs(inside - inst.I.len * total);

  // exponential sums T_m = sum_j a_j e(m x_j), via the recurrence
  // z_j^{m+1} = z_j^m * z_j
  std::vector<std::complex<double>> z(J), zp(J, {1.0, 0.0});
  for (std::size_t j = 0; j < J; ++j) {
    double th = 2.0 * M_PI * frac01(inst.x[j]);
    z[j] = {std::cos(th), std::sin(th)};
  }
  double sum_terms = 0.0;
  double coeff = 1.0 / (inst.L + 1.0) + inst.I.len;
  for (unsigned m = 1; m <= inst.L; ++m) {
    std::complex<double> T{0.0, 0.0};
    for (std::size_t j = 0; j < J; ++j) {
      zp[j] *= z[j];
      T += inst.a[j] * zp[j];
    }
    sum_terms += coeff * std::abs(T);
  }
  res.rhs = total / (inst.L + 1.0) + 2.0 * sum_terms;
  res.ok = res.lhs <= res.rhs + 1e-9 * total;
  return res;
}

// ---------------------------------------------------------------------------
// Lemma 3

namespace {

// Terms k in (K, K'] with m k = u (mod q), as first value + step
// (step 0 marks an empty progression).
struct Progression {
  std::uint64_t first = 0;
  std::uint64_t step = 0;
  std::uint64_t count = 0;
};

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid; gcd(a, m) must be 1
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
  while (newr != 0) {
    std::int64_t qq = r / newr;
    std::swap(t, newt);
    newt -= qq * t;
    std::swap(r, newr);
    newr -= qq * r;
  }
  if (r != 1) throw InternalError("inv_mod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

Progression solve_progression(std::uint64_t m, std::uint64_t q, std::uint64_t u,
                              std::uint64_t K, std::uint64_t K_prime) {
  Progression pr;
  if (K_prime <= K) return pr;
  if (q == 1) {
    pr.first = K + 1;
    pr.step = 1;
    pr.count = K_prime - K;
    return pr;
  }
  std::uint64_t mq = m % q;
  std::uint64_t g = mq == 0 ? q : gcd_u64(mq, q);
  if (u % g != 0) return pr;
  std::uint64_t q1 = q / g;
  std::uint64_t k0;
  if (q1 == 1) {
    k0 = 0;  // every k works
  } else {
    k0 = (u / g) % q1 * inv_mod(mq / g, q1) % q1;
  }
  // least k > K with k = k0 (mod q1)
  std::uint64_t base = K + 1;
  std::uint64_t rem = (base % q1 + q1 - k0 % q1) % q1;
  std::uint64_t first = base + (rem == 0 ? 0 : q1 - rem);
  if (first > K_prime) return pr;
  pr.first = first;
  pr.step = q1;
  pr.count = (K_prime - first) / q1 + 1;
  return pr;
}

// Fractional part of h * (m k)^c with certified absolute error <= tol.
// Double evaluation is used when a conservative worst-case rounding
// bound (a few ulps of the phase magnitude) fits; otherwise the
// computation runs in MPFR at a precision sized to the phase.
double certified_phase_frac(double c, std::uint64_t h, std::uint64_t mk, double tol) {
  double base = static_cast<double>(mk);
  double phase = static_cast<double>(h) * std::pow(base, c);
  double err = 8.0 * phase * 1.1e-16;  // pow + mul + frac rounding, padded
  if (err <= tol) return frac01(phase);

  int extra = 0;
  double t = tol;
  while (t < 1.0) {
    t *= 2.0;
    ++extra;
  }
  auto prec = static_cast<mpfr_prec_t>(std::max(64, static_cast<int>(std::log2(phase)) + extra + 16));
  mp::Real x = mp::Real::of_u64(mk, prec);
  mp::Real p = mp::pow(x, mp::Real::of(c, prec));
  mp::Real full = mp::mul(mp::Real::of_u64(h, prec), p);
  return mp::frac(full).to_double();
}

double lemma3_bound(double c, std::uint64_t h, std::uint64_t m, std::uint64_t K) {
  double hmc = static_cast<double>(h) * std::pow(static_cast<double>(m), c) *
               std::pow(static_cast<double>(K), c);
  return std::sqrt(hmc) + static_cast<double>(K) / std::sqrt(hmc);
}

}  // namespace

Lemma3Result lemma3_sum(double c, std::uint64_t h, std::uint64_t m, std::uint64_t K,
                        std::uint64_t K_prime, std::uint64_t q, std::uint64_t u,
                        double tol) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidInput("lemma3_sum: 0 < c < 1 required");
  if (h < 1 || m < 1 || K < 1) throw InvalidInput("lemma3_sum: h, m >= 1 and K > 1 required");

  Lemma3Result res;
  Progression pr = solve_progression(m, q, u, K, K_prime);
  res.terms = pr.count;
  if (pr.count > 0) {
    double tol_term = tol / (16.0 * static_cast<double>(pr.count));
    double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0;  // Kahan pairs
    std::uint64_t k = pr.first;
    for (std::uint64_t i = 0; i < pr.count; ++i, k += pr.step) {
      double f = certified_phase_frac(c, h, m * k, tol_term);
      double th = 2.0 * M_PI * f;
      double xr = std::cos(th), xi = std::sin(th);
      double yr = xr - cr;
      double tr = sr + yr;
      cr = (tr - sr) - yr;
      sr = tr;
      double yi = xi - ci;
      double ti = si + yi;
      ci = (ti - si) - yi;
      si = ti;
    }
    res.S = {sr, si};
  }
  res.bound = lemma3_bound(c, h, m, K);
  res.ratio = std::abs(res.S) / res.bound;
  return res;
}

Lemma3Result lemma3_reference(double c, std::uint64_t h, std::uint64_t m, std::uint64_t K,
                              std::uint64_t K_prime, std::uint64_t q, std::uint64_t u,
                              mpfr_prec_t prec) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidInput("lemma3_reference: 0 < c < 1 required");
  Lemma3Result res;
  Progression pr = solve_progression(m, q, u, K, K_prime);
  res.terms = pr.count;
  if (pr.count > 0) {
    mp::Real sum_re(prec), sum_im(prec);
    mp::Real cc = mp::Real::of(c, prec);
    mp::Real hh = mp::Real::of_u64(h, prec);
    std::uint64_t k = pr.first;
    for (std::uint64_t i = 0; i < pr.count; ++i, k += pr.step) {
      mp::Real x = mp::Real::of_u64(m * k, prec);
      mp::Real phase = mp::mul(hh, mp::pow(x, cc));
      auto [re, im] = mp::e_of(phase);
      sum_re = mp::add(sum_re, re);
      sum_im = mp::add(sum_im, im);
    }
    res.S = {sum_re.to_double(), sum_im.to_double()};
  }
  res.bound = lemma3_bound(c, h, m, K);
  res.ratio = std::abs(res.S) / res.bound;
  return res;
}

// ---------------------------------------------------------------------------
// Lemma 2

Lemma2Result lemma2_sum(const BilinearInstance& inst, std::uint64_t ops_budget) {
  const auto H = inst.H, N = inst.N, M = inst.M, Q = inst.Q;
  if (inst.X < static_cast<double>(H) * static_cast<double>(N))
    throw InvalidInput("lemma2_sum: X >> HN violated (constant 1)");
  if (inst.alpha * (inst.alpha - 1.0) * inst.beta * inst.gamma == 0.0)
    throw InvalidInput("lemma2_sum: alpha(alpha-1)beta gamma must be nonzero");

  // budget estimate: per q, H*N*(M + phi(q)*q)
  double est = 0;
  for (std::uint64_t q = 1; q <= Q; ++q)
    est += static_cast<double>(H) * N * (static_cast<double>(M) + static_cast<double>(q) * q);
  if (est > static_cast<double>(ops_budget))
    throw BudgetExceeded("lemma2_sum: size-cap exceeded");

  auto coeff_a = inst.a ? inst.a
                        : [](std::uint64_t, std::uint64_t, std::uint64_t,
                             const DirichletCharacter&) { return std::complex<double>{1.0, 0.0}; };
  auto coeff_b = inst.b ? inst.b : [](std::uint64_t) { return std::complex<double>{1.0, 0.0}; };

  double lhs = 0.0;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    auto chis = characters_mod(q);
    // class sums g[res] = sum_{m = res (q)} b(m) e(phase(h,n,m)),
    // computed once per (h, n)
    std::vector<std::vector<std::complex<double>>> cls(
        H * N, std::vector<std::complex<double>>(q, {0.0, 0.0}));
    for (std::uint64_t h = H + 1; h <= 2 * H; ++h) {
      for (std::uint64_t n = N + 1; n <= 2 * N; ++n) {
        auto& row = cls[(h - H - 1) * N + (n - N - 1)];
        double t = inst.X * std::pow(h / static_cast<double>(H), inst.beta) *
                   std::pow(n / static_cast<double>(N), inst.gamma);
        for (std::uint64_t mm = M + 1; mm <= 2 * M; ++mm) {
          double phase = t * std::pow(mm / static_cast<double>(M), inst.alpha);
          double th = 2.0 * M_PI * frac01(phase);
          row[mm % q] += coeff_b(mm) * std::complex<double>{std::cos(th), std::sin(th)};
        }
      }
    }
    for (const auto& chi : chis) {
      // chi value table per residue
      std::vector<std::complex<double>> chv(q);
      for (std::uint64_t r = 0; r < q; ++r) chv[r] = chi(r);
      std::complex<double> S0{0.0, 0.0};
      for (std::uint64_t h = H + 1; h <= 2 * H; ++h) {
        for (std::uint64_t n = N + 1; n <= 2 * N; ++n) {
          const auto& row = cls[(h - H - 1) * N + (n - N - 1)];
          std::complex<double> inner{0.0, 0.0};
          for (std::uint64_t r = 0; r < q; ++r) inner += chv[r] * row[r];
          S0 += coeff_a(h, n, q, chi) * inner;
        }
      }
      lhs += std::abs(S0);
    }
  }

  Lemma2Result res;
  res.lhs = lhs;
  double Hd = static_cast<double>(H), Nd = static_cast<double>(N), Md = static_cast<double>(M),
         Qd = static_cast<double>(Q);
  double eps_factor = std::pow(Hd * Md * Nd, inst.epsilon);
  double term1 = Qd * Qd * Hd * Nd * std::sqrt(Md);
  double term2 = std::pow(Qd, 1.5) * Hd * Nd * Md *
                 (std::pow(inst.X, 0.25) / (std::pow(Hd * Nd, 0.25) * std::sqrt(Md)) +
                  1.0 / std::pow(Hd * Nd, 0.25));
  res.rhs = eps_factor * (term1 + term2);
  res.ratio = res.lhs / res.rhs;
  return res;
}

}  // namespace sfclust::expsum
