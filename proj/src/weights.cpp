#include "sfclust/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "sfclust/arith.hpp"
#include "sfclust/errors.hpp"

namespace sfclust::weights {

namespace {

std::int64_t narrow_i64(const cpp_int& v, const char* what) {
  if (v < 0 || v > cpp_int(std::int64_t{1} << 62))
    throw InvalidInput(std::string("make_context: ") + what + " does not fit 64-bit range");
  return static_cast<std::int64_t>(v);
}

// int_N^{N+M} dt / log t by Simpson's rule
double logint(double N, double M) {
  const int steps = 2000;
  double hstep = M / steps;
  auto f = [](double t) { return 1.0 / std::log(t); };
  double acc = f(N) + f(N + M);
  for (int i = 1; i < steps; ++i) acc += f(N + i * hstep) * (i % 2 ? 4.0 : 2.0);
  return acc * hstep / 3.0;
}

}  // namespace

SieveContext make_context(std::uint64_t N, std::uint64_t M, double Y, double theta,
                          double epsilon, unsigned t,
                          const tuples::AdmissibleTuple& H,
                          const tuples::ReasonableSet& R,
                          const simplex::SimplexPolynomial& F) {
  if (!(theta > 0.0 && theta < 0.75))
    throw InvalidInput("make_context: theta must satisfy 0 < theta < 3/4");
  if (epsilon <= 0.0) throw InvalidInput("make_context: epsilon > 0 required");
  if (H.k() == 0) throw InvalidInput("make_context: empty tuple");
  if (F.k() != H.k()) throw InvalidInput("make_context: F dimension != k");

  SieveContext ctx;
  ctx.N = N;
  ctx.M = M;
  ctx.Y = Y;
  ctx.theta = theta;
  ctx.epsilon = epsilon;
  ctx.t = t;
  ctx.k = static_cast<unsigned>(H.k());
  ctx.K = tuples::k_param(H.k(), R.r());
  ctx.D0 = tuples::d0_for(static_cast<double>(N));
  ctx.F = F;
  ctx.b = R.b;

  auto nu = tuples::construct_nu0(H, R, ctx.K, ctx.D0);
  ctx.W1 = nu.W1;
  ctx.nu0 = nu.nu0;
  ctx.W1_i64 = narrow_i64(nu.W1, "W1");
  ctx.nu0_i64 = narrow_i64(nu.nu0, "nu0");
  for (const cpp_int& hm : H.h) ctx.h.push_back(narrow_i64(hm, "offset h"));

  double Nd = static_cast<double>(N);
  ctx.R_level = std::pow(Nd, theta / 2.0 - epsilon);

  double L = std::log(Nd);
  double li = logint(Nd, static_cast<double>(M));
  ctx.Y_m.assign(ctx.k, (Y / static_cast<double>(M)) * li);
  ctx.b_m.assign(ctx.k, ctx.Y_m[0] * L / Y);
  ctx.b_floor = ctx.b_m[0];

  // (1.3)-style validation with implied constant 1
  double lower = std::pow(Nd, 0.25) *
                 std::max(std::pow(Nd, theta),
                          std::pow(L, 9.0 * ctx.k) * std::sqrt(static_cast<double>(M)));
  if (Y > static_cast<double>(M))
    ctx.warnings.push_back("Y > M violates the upper half of the Y-range hypothesis");
  if (Y < lower)
    ctx.warnings.push_back("Y below N^{1/4} max(N^theta, L^{9k} M^{1/2}); asymptotic "
                           "predictions may be unreliable at this scale");
  if (static_cast<double>(M) < std::sqrt(Nd) * std::pow(L, 18.0 * ctx.k))
    ctx.warnings.push_back("M below N^{1/2} L^{18k}; outside the stated window range");
  return ctx;
}

double y_weight(const std::vector<std::int64_t>& r, const SieveContext& ctx) {
  if (r.size() != ctx.k) throw InvalidInput("y_weight: arity mismatch");
  double logR = std::log(ctx.R_level);
  double logsum = 0.0;
  cpp_int prod = 1;
  for (std::int64_t ri : r) {
    if (ri < 1) throw InvalidInput("y_weight: entries must be positive");
    if (!arith::is_squarefree_u64(static_cast<std::uint64_t>(ri))) return 0.0;
    prod *= ri;
    logsum += std::log(static_cast<double>(ri));
  }
  // mu^2(prod r_i) = 1 needs pairwise coprimality on top of each r_i
  // being squarefree
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j)
      if (std::gcd(r[i], r[j]) != 1) return 0.0;
  if (boost::multiprecision::gcd(prod, ctx.W1) != 1) return 0.0;
  if (logsum > logR) return 0.0;  // F vanishes off the simplex

  std::vector<double> x(ctx.k);
  for (std::size_t i = 0; i < r.size(); ++i)
    x[i] = std::log(static_cast<double>(r[i])) / logR;
  return ctx.F.eval_on_simplex(x);
}

namespace {

struct SupportValue {
  std::int64_t v;
  std::uint64_t phi;
  std::vector<std::int64_t> divisors;  // all divisors (v squarefree)
  std::map<std::int64_t, int> mu_of_divisor;
};

// squarefree values <= R coprime to W1, with phi and divisor lists
std::vector<SupportValue> admissible_values(const SieveContext& ctx) {
  std::vector<SupportValue> vals;
  auto R = static_cast<std::int64_t>(std::floor(ctx.R_level));
  for (std::int64_t v = 1; v <= R; ++v) {
    if (!arith::is_squarefree_u64(static_cast<std::uint64_t>(v))) continue;
    if (boost::multiprecision::gcd(cpp_int(v), ctx.W1) != 1) continue;
    SupportValue sv;
    sv.v = v;
    sv.phi = arith::euler_phi_u64(static_cast<std::uint64_t>(v));
    // divisors of a squarefree number: subsets of its prime factors
    std::vector<std::int64_t> primes;
    for (auto [p, e] : arith::factor_u64(static_cast<std::uint64_t>(v))) {
      (void)e;
      primes.push_back(static_cast<std::int64_t>(p));
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << primes.size()); ++mask) {
      std::int64_t d = 1;
      int bits = 0;
      for (std::size_t i = 0; i < primes.size(); ++i)
        if (mask >> i & 1) {
          d *= primes[i];
          ++bits;
        }
      sv.divisors.push_back(d);
      sv.mu_of_divisor[d] = (bits % 2 == 0) ? 1 : -1;
    }
    std::sort(sv.divisors.begin(), sv.divisors.end());
    vals.push_back(std::move(sv));
  }
  return vals;
}

void enumerate_tuples(const std::vector<SupportValue>& vals, const SieveContext& ctx,
                      std::size_t cap, std::size_t pos, double prod,
                      std::vector<std::size_t>& idx, std::size_t& count,
                      const std::function<void(const std::vector<std::size_t>&)>& emit) {
  if (pos == ctx.k) {
    if (++count > cap) throw BudgetExceeded("lambda_table: support-too-large");
    emit(idx);
    return;
  }
  for (std::size_t i = 0; i < vals.size(); ++i) {
    // vals is sorted ascending, so the product bound is monotone
    double next = prod * static_cast<double>(vals[i].v);
    if (next > ctx.R_level + 1e-9) break;
    // pairwise coprime against previously chosen components
    bool ok = true;
    for (std::size_t j = 0; j < pos; ++j)
      if (std::gcd(vals[i].v, vals[idx[j]].v) != 1) {
        ok = false;
        break;
      }
    if (!ok) continue;
    idx[pos] = i;
    enumerate_tuples(vals, ctx, cap, pos + 1, next, idx, count, emit);
  }
}

}  // namespace

LambdaTable lambda_table(const SieveContext& ctx, std::size_t cap) {
  auto vals = admissible_values(ctx);
  double logR = std::log(ctx.R_level);

  // T[d] = sum over r-tuples with d_i | r_i of y_r / prod phi(r_i)
  std::map<std::vector<std::int64_t>, double> T;
  LambdaTable table;

  std::vector<std::size_t> idx(ctx.k);
  std::size_t count = 0;
  std::vector<double> x(ctx.k);
  auto emit = [&](const std::vector<std::size_t>& tuple) {
    double phiprod = 1.0;
    for (std::size_t i = 0; i < ctx.k; ++i) {
      x[i] = std::log(static_cast<double>(vals[tuple[i]].v)) / logR;
      phiprod *= static_cast<double>(vals[tuple[i]].phi);
    }
    double y = ctx.F.eval_on_simplex(x);
    table.ymax = std::max(table.ymax, std::abs(y));
    if (y == 0.0) return;
    double w = y / phiprod;
    // distribute over componentwise divisors
    std::vector<std::int64_t> d(ctx.k);
    std::vector<std::size_t> di(ctx.k, 0);
    for (;;) {
      for (std::size_t i = 0; i < ctx.k; ++i) d[i] = vals[tuple[i]].divisors[di[i]];
      T[d] += w;
      std::size_t i = 0;
      while (i < ctx.k && ++di[i] == vals[tuple[i]].divisors.size()) {
        di[i] = 0;
        ++i;
      }
      if (i == ctx.k) break;
    }
  };
  enumerate_tuples(vals, ctx, cap, 0, 1.0, idx, count, emit);

  for (auto& [d, sum] : T) {
    double lam = sum;
    for (std::int64_t di : d) {
      lam *= static_cast<double>(di);
      // mu of a squarefree number: parity of its prime factors
      int omega = 0;
      for (auto [p, e] : arith::factor_u64(static_cast<std::uint64_t>(di))) {
        (void)p;
        omega += static_cast<int>(e);
      }
      if (omega % 2 == 1) lam = -lam;
    }
    table.support.push_back(d);
    table.values.push_back(lam);
    table.lmax = std::max(table.lmax, std::abs(lam));
  }
  return table;
}

std::vector<cpp_rational> lambda_table_exact(const SieveContext& ctx,
                                             const LambdaTable& table) {
  auto vals = admissible_values(ctx);
  double logR = std::log(ctx.R_level);

  std::map<std::vector<std::int64_t>, cpp_rational> T;
  std::vector<std::size_t> idx(ctx.k);
  std::size_t count = 0;
  std::vector<double> x(ctx.k);
  auto emit = [&](const std::vector<std::size_t>& tuple) {
    cpp_rational phiprod = 1;
    for (std::size_t i = 0; i < ctx.k; ++i) {
      x[i] = std::log(static_cast<double>(vals[tuple[i]].v)) / logR;
      phiprod *= cpp_rational(vals[tuple[i]].phi);
    }
    double y = ctx.F.eval_on_simplex(x);
    if (y == 0.0) return;
    cpp_rational w = cpp_rational(y) / phiprod;  // exact dyadic from the double
    std::vector<std::int64_t> d(ctx.k);
    std::vector<std::size_t> di(ctx.k, 0);
    for (;;) {
      for (std::size_t i = 0; i < ctx.k; ++i) d[i] = vals[tuple[i]].divisors[di[i]];
      T[d] += w;
      std::size_t i = 0;
      while (i < ctx.k && ++di[i] == vals[tuple[i]].divisors.size()) {
        di[i] = 0;
        ++i;
      }
      if (i == ctx.k) break;
    }
  };
  enumerate_tuples(vals, ctx, 1 << 22, 0, 1.0, idx, count, emit);

  std::vector<cpp_rational> out;
  out.reserve(table.support.size());
  for (const auto& d : table.support) {
    cpp_rational lam = T.count(d) ? T.at(d) : cpp_rational(0);
    for (std::int64_t di : d) {
      lam *= di;
      int omega = 0;
      for (auto [p, e] : arith::factor_u64(static_cast<std::uint64_t>(di))) {
        (void)p;
        omega += static_cast<int>(e);
      }
      if (omega % 2 == 1) lam = -lam;
    }
    out.push_back(lam);
  }
  return out;
}

double divisor_sum(std::uint64_t n, const LambdaTable& table,
                   const std::vector<std::int64_t>& h) {
  double s = 0.0;
  for (std::size_t t = 0; t < table.support.size(); ++t) {
    const auto& d = table.support[t];
    bool divides = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if ((n + static_cast<std::uint64_t>(h[i])) % static_cast<std::uint64_t>(d[i]) != 0) {
        divides = false;
        break;
      }
    }
    if (divides) s += table.values[t];
  }
  return s;
}

double weight_w(std::uint64_t n, const LambdaTable& table, const SieveContext& ctx) {
  std::int64_t residue = static_cast<std::int64_t>(n % static_cast<std::uint64_t>(ctx.W1_i64));
  if (residue != ctx.nu0_i64 % ctx.W1_i64) return 0.0;
  double s = divisor_sum(n, table, ctx.h);
  return s * s;
}

WeightDiagnostics empirical_sums(const sets::IndexedSet& A, const LambdaTable& table,
                                 const SieveContext& ctx) {
  WeightDiagnostics d;
  d.S2_emp.assign(ctx.k, 0.0);
  d.S2_pred.assign(ctx.k, 0.0);

  auto W1 = static_cast<std::uint64_t>(ctx.W1_i64);
  auto nu0 = static_cast<std::uint64_t>(ctx.nu0_i64);
  std::uint64_t first = ctx.N + (nu0 + W1 - ctx.N % W1) % W1;
  for (std::uint64_t n = first; n < ctx.N + ctx.M; n += W1) {
    double w = weight_w(n, table, ctx);
    ++d.class_members;
    d.second_moment += w * w;
    if (w == 0.0) continue;
    if (!A.contains(n)) continue;
    d.S1_emp += w;
    for (unsigned m = 0; m < ctx.k; ++m) {
      std::uint64_t nh = n + static_cast<std::uint64_t>(ctx.h[m]);
      if (A.contains(nh) && arith::is_prime_u64(nh)) d.S2_emp[m] += w;
    }
  }

  // predicted main terms; the W1 powers are folded in log space
  double Nd = static_cast<double>(ctx.N);
  double L = std::log(Nd);
  double logR = std::log(ctx.R_level);
  double W1d = static_cast<double>(ctx.W1_i64);
  double phiW1 = static_cast<double>(arith::euler_phi_u64(static_cast<std::uint64_t>(ctx.W1_i64)));
  double logfactor = ctx.k * std::log(phiW1) - (ctx.k + 1.0) * std::log(W1d);
  double Ik = static_cast<double>(simplex::compute_I(ctx.F));
  d.S1_pred = std::exp(logfactor) * ctx.Y * std::pow(logR, ctx.k) * Ik;
  for (unsigned m = 0; m < ctx.k; ++m) {
    double Jm = static_cast<double>(simplex::compute_J(ctx.F, m + 1));
    d.S2_pred[m] = ctx.b_m[m] * std::exp(logfactor) * ctx.Y *
                   std::pow(logR, ctx.k + 1.0) * Jm / L;
  }
  d.second_moment_scale =
      std::pow(L, 19.0 * ctx.k) * static_cast<double>(ctx.M) / W1d +
      std::pow(Nd, 2.0 * ctx.theta);

  // Omega(p) for the primes forced to zero by the construction
  for (std::int64_t p : arith::primes_below(static_cast<std::uint64_t>(ctx.D0) + 1)) {
    double total = 0.0;
    for (unsigned m = 0; m < ctx.k; ++m)
      for (unsigned ell = 0; ell < ctx.b.size(); ++ell)
        total += omega_diagnostic(p, m, ell, A, table, ctx);
    d.omega[p] = total;
  }
  return d;
}

double omega_cutoff_B(const SieveContext& ctx, bool variant_b1) {
  double Md = static_cast<double>(ctx.M);
  double Nd = static_cast<double>(ctx.N);
  double ratio = Md / ctx.Y;
  if (variant_b1) return ratio * std::pow(Nd, ctx.epsilon);
  double L = std::log(Nd);
  return ratio * ratio *
         std::max(std::pow(L, 18.0 * ctx.k), std::pow(Nd, 2.0 * ctx.theta) / Md);
}

double omega_diagnostic(std::int64_t p, unsigned m, unsigned ell,
                        const sets::IndexedSet& A, const LambdaTable& table,
                        const SieveContext& ctx) {
  if (m >= ctx.k || ell >= ctx.b.size())
    throw InvalidInput("omega_diagnostic: index out of range");
  cpp_int p2 = cpp_int(p) * p;
  cpp_int target = ctx.b[ell] - ctx.h[m];
  cpp_int g = boost::multiprecision::gcd(p2, ctx.W1);
  if (g != 1) {
    // p divides W1: the class nu0 already avoids the congruence, by
    // construction; verify and return the exact (zero) sum
    cpp_int diff = (ctx.nu0 - target) % g;
    if (diff < 0) diff += g;
    if (diff == 0)
      throw InternalError("omega_diagnostic: nu0 construction violated at p = " +
                          std::to_string(p));
    return 0.0;
  }
  auto [res, mod] = arith::crt_solve({{ctx.nu0, ctx.W1}, {target, p2}});
  auto modu = static_cast<std::uint64_t>(mod);
  auto resu = static_cast<std::uint64_t>(res % mod);
  double total = 0.0;
  std::uint64_t first = ctx.N + (resu + modu - ctx.N % modu) % modu;
  for (std::uint64_t n = first; n < ctx.N + ctx.M; n += modu)
    if (A.contains(n)) total += weight_w(n, table, ctx);
  return total;
}

}  // namespace sfclust::weights
