#include "doctest.h"

#include <cmath>
#include <map>
#include <numeric>
#include <variant>

#include "sfclust/arith.hpp"
#include "sfclust/sets.hpp"
#include "sfclust/weights.hpp"

using namespace sfclust;
using weights::cpp_rational;

namespace {

simplex::SimplexPolynomial one_minus_t() {
  simplex::SimplexPolynomial f(1);
  f.add_term({0}, 1);
  f.add_term({1}, -1);
  return f;
}

simplex::SimplexPolynomial e2_poly(unsigned k) {
  simplex::SimplexPolynomial f(k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = i + 1; j < k; ++j) {
      simplex::Exponents e(k, 0);
      e[i] = 1;
      e[j] = 1;
      f.add_term(e, 1);
    }
  return f;
}

// A k=1 context with W1 = 900 and R_level = 10, assembled directly
// (matching the worked lambda example).
weights::SieveContext tiny_context() {
  weights::SieveContext ctx;
  ctx.N = 1000;
  ctx.M = 1000;
  ctx.Y = 1000;
  ctx.theta = 0.5;
  ctx.epsilon = 0.01;
  ctx.k = 1;
  ctx.K = 5;
  ctx.D0 = 3;
  ctx.W1 = 900;
  ctx.nu0 = 227;
  ctx.W1_i64 = 900;
  ctx.nu0_i64 = 227;
  ctx.R_level = 10.0;
  ctx.F = one_minus_t();
  ctx.h = {0};
  ctx.b = {1};
  return ctx;
}

// Brute-force oracle for lambda_d: enumerate every r <= R_level
// directly from the definition.
double lambda_oracle_k1(std::int64_t d, const weights::SieveContext& ctx) {
  double sum = 0.0;
  for (std::int64_t r = 1; r <= static_cast<std::int64_t>(ctx.R_level); ++r) {
    if (r % d != 0) continue;
    sum += weights::y_weight({r}, ctx) /
           static_cast<double>(arith::euler_phi_u64(static_cast<std::uint64_t>(r)));
  }
  int mu = 1;
  for (auto [p, e] : arith::factor_u64(static_cast<std::uint64_t>(d))) {
    if (e > 1) return 0.0;
    mu = -mu;
  }
  return mu * static_cast<double>(d) * sum;
}

}  // namespace

TEST_CASE("y_weight support conditions") {
  auto ctx = tiny_context();
  CHECK(ctx.F.eval({0.0}) == 1.0);
  CHECK(weights::y_weight({1}, ctx) == 1.0);             // F(0) = 1
  CHECK(weights::y_weight({4}, ctx) == 0.0);             // not squarefree
  CHECK(weights::y_weight({3}, ctx) == 0.0);             // gcd with W1
  CHECK(weights::y_weight({11}, ctx) == 0.0);            // above R_level
  CHECK(weights::y_weight({7}, ctx) ==
        doctest::Approx(1.0 - std::log(7.0) / std::log(10.0)));
}

TEST_CASE("lambda table matches the brute-force oracle for k=1, R<=10") {
  auto ctx = tiny_context();
  auto table = weights::lambda_table(ctx);
  // admissible d: squarefree, coprime to 900, product <= 10: 1 and 7
  REQUIRE(table.size() == 2);
  std::map<std::int64_t, double> got;
  for (std::size_t i = 0; i < table.size(); ++i) got[table.support[i][0]] = table.values[i];
  REQUIRE(got.count(1));
  REQUIRE(got.count(7));
  for (auto [d, lam] : got) {
    CHECK(lam == doctest::Approx(lambda_oracle_k1(d, ctx)).epsilon(1e-12));
  }
  CHECK(got.at(1) == doctest::Approx(1.0 + (1.0 - std::log(7.0) / std::log(10.0)) / 6.0));
  CHECK(got.at(7) < 0.0);  // mu(7) = -1
}

TEST_CASE("exact-rational lambda recomputation bounds the rounding") {
  auto ctx = tiny_context();
  auto table = weights::lambda_table(ctx);
  auto exact = weights::lambda_table_exact(ctx, table);
  REQUIRE(exact.size() == table.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    CHECK(std::abs(static_cast<double>(exact[i]) - table.values[i]) < 1e-12);
  }
}

TEST_CASE("zero F gives an all-zero table") {
  auto ctx = tiny_context();
  ctx.F = simplex::SimplexPolynomial(1);  // empty polynomial
  auto table = weights::lambda_table(ctx);
  for (double v : table.values) CHECK(v == 0.0);
}

TEST_CASE("weight_w: class restriction and trivial table") {
  auto ctx = tiny_context();
  auto table = weights::lambda_table(ctx);
  // off the nu0 class the weight vanishes
  CHECK(weights::weight_w(1000, table, ctx) == 0.0);
  // on the class: w_n = (sum of dividing lambda)^2 >= 0
  std::uint64_t n = 1127;  // = 227 + 900
  REQUIRE(n % 900 == 227);
  double w = weights::weight_w(n, table, ctx);
  CHECK(w >= 0.0);

  // divisor-enumeration oracle on a few class members
  for (std::uint64_t nn : {1127ull, 2027ull, 2927ull, 227ull + 900ull * 7}) {
    double s = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if ((nn + 0) % static_cast<std::uint64_t>(table.support[i][0]) == 0)
        s += table.values[i];
    }
    CHECK(weights::weight_w(nn, table, ctx) == doctest::Approx(s * s));
  }
}

TEST_CASE("make_context wires nu0, W1 and R_level") {
  auto R = std::get<tuples::ReasonableSet>(tuples::check_reasonable({1}));
  auto [H, cert] = tuples::construct_compatible(2, R);
  auto ctx = weights::make_context(100000, 100000, 100000.0, 0.5, 0.01, 2, H, R,
                                   e2_poly(2));
  CHECK(ctx.W1 == 900);
  CHECK(ctx.nu0 == 227);
  CHECK(ctx.K == 5);
  CHECK(ctx.R_level == doctest::Approx(std::pow(1e5, 0.24)));
  CHECK(ctx.b_m[0] == doctest::Approx(1.0).epsilon(0.1));  // interval model
  CHECK_THROWS_AS(
      weights::make_context(100000, 100000, 1e5, 0.9, 0.01, 2, H, R, e2_poly(2)),
      InvalidInput);
}

TEST_CASE("empirical sums at desk scale: band, omega, second moment") {
  auto R = std::get<tuples::ReasonableSet>(tuples::check_reasonable({}));
  auto [H, cert] = tuples::construct_compatible(3, R);
  std::uint64_t N = 1000000;
  auto A = sets::build_set(sets::SetKind::interval, sets::IntervalParams{}, N, N);
  auto ctx = weights::make_context(N, N, static_cast<double>(N), 0.6, 0.005, 2, H, R,
                                   e2_poly(3));
  auto table = weights::lambda_table(ctx);
  auto d = weights::empirical_sums(A, table, ctx);

  CHECK(d.S1_emp > 0.0);
  CHECK(d.class_members > 20000);
  // S2(m) <= S1 exactly (rho is an indicator)
  for (unsigned m = 0; m < 3; ++m) CHECK(d.S2_emp[m] <= d.S1_emp + 1e-9);
  // omega forced to zero below D0
  for (auto [p, v] : d.omega) {
    CHECK(p <= ctx.D0);
    CHECK(v == 0.0);
  }
  CHECK(d.second_moment > 0.0);
  CHECK(d.second_moment_scale > 0.0);
}

TEST_CASE("omega_diagnostic: zero below D0, exact count for trivial table") {
  auto R = std::get<tuples::ReasonableSet>(tuples::check_reasonable({2}));
  auto [H, cert] = tuples::construct_compatible(2, R);
  std::uint64_t N = 200000;
  auto A = sets::build_set(sets::SetKind::interval, sets::IntervalParams{}, N, N);
  auto ctx = weights::make_context(N, N, static_cast<double>(N), 0.4, 0.01, 2, H, R,
                                   e2_poly(2));
  auto table = weights::lambda_table(ctx);

  for (std::int64_t p : {2, 3, 5, 7}) {
    if (p > ctx.K) continue;
    CHECK(weights::omega_diagnostic(p, 0, 0, A, table, ctx) == 0.0);
    CHECK(weights::omega_diagnostic(p, 1, 0, A, table, ctx) == 0.0);
  }

  // p beyond W1's primes: Omega(p) equals a direct doubly-constrained scan
  std::int64_t p = 13;
  REQUIRE(p > ctx.K);
  double got = weights::omega_diagnostic(p, 0, 0, A, table, ctx);
  double expect = 0.0;
  for (std::uint64_t n = N; n < 2 * N; ++n) {
    if ((static_cast<std::int64_t>((n + ctx.h[0] - ctx.b[0]) % (p * p))) == 0)
      expect += weights::weight_w(n, table, ctx);
  }
  CHECK(got == doctest::Approx(expect));
  CHECK(weights::omega_cutoff_B(ctx) > 0.0);
}
