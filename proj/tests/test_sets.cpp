#include "doctest.h"

#include <cmath>
#include <numeric>

#include "sfclust/sets.hpp"

using namespace sfclust;
using sets::BeattyParams;
using sets::IndexedSet;
using sets::IntervalParams;
using sets::PowerParams;
using sets::SetKind;

TEST_CASE("interval set is the whole window") {
  auto A = sets::build_set(SetKind::interval, IntervalParams{}, 100, 50);
  CHECK(A.size() == 50);
  CHECK(A.contains(100));
  CHECK(A.contains(149));
  CHECK_FALSE(A.contains(150));
  CHECK(A.Y == 50.0);
}

TEST_CASE("power set with delta >= 1 is everything") {
  PowerParams p;
  p.c = 0.95;
  p.delta_override = 1.5;
  auto A = sets::build_set(SetKind::power, p, 1000, 100);
  CHECK(A.size() == 100);
}

TEST_CASE("beatty bitmap equals floor enumeration (cross-checked in build)") {
  BeattyParams p;
  p.alpha_expr = "sqrt(2)";
  p.beta_expr = "0";
  p.cross_check = true;  // build throws if the two paths disagree
  auto A = sets::build_set(SetKind::beatty, p, 10000, 1000);
  CHECK(A.borderline == 0);
  // density ~ 1/sqrt(2)
  double dens = static_cast<double>(A.size()) / 1000.0;
  CHECK(dens == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
  // spot checks against the floor enumeration
  CHECK(A.contains(10001));
  CHECK_FALSE(A.contains(10003));
}

TEST_CASE("beatty with nonzero beta and golden alpha") {
  BeattyParams p;
  p.alpha_expr = "(1+sqrt(5))/2";
  p.beta_expr = "1/3";
  p.cross_check = true;
  auto A = sets::build_set(SetKind::beatty, p, 5000, 2000);
  CHECK(A.borderline == 0);
  double dens = static_cast<double>(A.size()) / 2000.0;
  CHECK(dens == doctest::Approx(2.0 / (1.0 + std::sqrt(5.0))).epsilon(0.05));
}

TEST_CASE("power set matches a direct double scan away from borderlines") {
  PowerParams p;
  p.c = 0.9;
  p.epsilon = 0.01;
  auto A = sets::build_set(SetKind::power, p, 100000, 10000);
  CHECK(A.borderline == 0);
  std::uint64_t mismatches = 0;
  for (std::uint64_t n = 100000; n < 110000; ++n) {
    double y = std::pow(static_cast<double>(n), 0.9);
    double f = y - std::floor(y);
    bool naive = f < A.delta;
    if (naive != A.contains(n)) ++mismatches;
  }
  // the naive scan has no certification; allow only boundary noise
  CHECK(mismatches <= 2);
  double expect = static_cast<double>(A.M) * A.delta;
  CHECK(static_cast<double>(A.size()) / expect == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("power set membership is stable under precision doubling") {
  PowerParams p;
  p.c = 0.95;
  p.epsilon = 0.01;
  sets::BuildOptions lo;
  lo.precision = 128;
  sets::BuildOptions hi;
  hi.precision = 512;
  auto A1 = sets::build_set(SetKind::power, p, 50000, 5000, lo);
  auto A2 = sets::build_set(SetKind::power, p, 50000, 5000, hi);
  REQUIRE(A1.M == A2.M);
  CHECK(A1.borderline == 0);
  CHECK(A2.borderline == 0);
  for (std::uint64_t i = 0; i < A1.M; ++i) CHECK(A1.members[i] == A2.members[i]);
}

TEST_CASE("equidist_V examples") {
  sets::BuildOptions opts;
  opts.Y_override = 10.0;
  auto A = sets::build_set(SetKind::interval, IntervalParams{}, 2, 10, opts);
  // counts mod 3 of {2..11}: residues 2,0,1,2,0,1,2,0,1,2 -> 3,3,4
  CHECK(sets::equidist_V(A, 3) == doctest::Approx(2.0 / 3.0));
  CHECK(sets::equidist_V(A, 1) == doctest::Approx(0.0));

  auto B = sets::build_set(SetKind::interval, IntervalParams{}, 1000, 360);
  for (std::uint64_t q : {2ull, 7ull, 360ull}) CHECK(sets::equidist_V(B, q) <= 1.0);
}

TEST_CASE("weighted_equidist") {
  auto A = sets::build_set(SetKind::interval, IntervalParams{}, 1000, 500);
  auto rep = sets::weighted_equidist(A, 1, 1, 2);
  // q_max = 1: lhs = tau_6(1) * V(1) = V(1) = |#A - Y| = 0
  CHECK(rep.weighted_lhs == doctest::Approx(sets::equidist_V(A, 1)));

  auto rep2 = sets::weighted_equidist(A, 6, 20, 2);
  for (const auto& [q, v] : rep2.V) {
    CHECK(std::gcd(q, 6ull) == 1);  // (q, d) > 1 contributes nothing
    (void)v;
  }
  CHECK(rep2.rhs_scale > 0.0);
}
