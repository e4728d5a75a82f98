// Acceptance suite: one pass/fail line per criterion, every tolerance
// pinned in code.  Exit status is the number of failed criteria.
//
//   acceptance --cli <path-to-sfclust-binary>   (the binary is needed
//   only for the determinism criterion; the rest run in-process)

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "../oracles.hpp"
#include "sfclust/arith.hpp"
#include "sfclust/characters.hpp"
#include "sfclust/cluster.hpp"
#include "sfclust/expsum.hpp"
#include "sfclust/sets.hpp"
#include "sfclust/simplex.hpp"
#include "sfclust/tuples.hpp"
#include "sfclust/variational.hpp"
#include "sfclust/weights.hpp"

namespace fs = std::filesystem;
using namespace sfclust;

namespace {

int g_failures = 0;
std::string g_cli;

struct Criterion {
  const char* name;
  bool ok = true;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0 = no stated runtime limit

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (detail.empty()) detail = what;
  }
};

template <class Fn>
void run_criterion(const char* name, double limit_seconds, Fn&& fn) {
  Criterion c;
  c.name = name;
  c.limit_seconds = limit_seconds;
  auto t0 = std::chrono::steady_clock::now();
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.limit_seconds > 0 && c.seconds > c.limit_seconds)
    c.fail("runtime " + std::to_string(c.seconds) + " s exceeds limit " +
           std::to_string(c.limit_seconds) + " s");
  std::printf("[%s] %-28s (%7.2f s)  %s\n", c.ok ? "PASS" : "FAIL", c.name, c.seconds,
              c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

tuples::ReasonableSet reasonable(std::vector<std::int64_t> b) {
  return std::get<tuples::ReasonableSet>(tuples::check_reasonable(std::move(b)));
}

simplex::SimplexPolynomial elementary_symmetric(unsigned k, unsigned j) {
  simplex::SimplexPolynomial F(k);
  std::vector<unsigned> idx(j, 0);
  std::vector<unsigned> stack;
  // choose j indices out of k, ascending
  std::vector<unsigned> comb(j);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned start) {
    if (pos == j) {
      simplex::Exponents e(k, 0);
      for (unsigned i : comb) e[i] = 1;
      F.add_term(e, 1);
      return;
    }
    for (unsigned i = start; i < k; ++i) {
      comb[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return F;
}

// ---------------------------------------------------------------------------

void crit_m1_exactness(Criterion& c) {
  double worst = 0.0;
  for (unsigned d = 0; d <= 5; ++d) {
    auto res = variational::mk_lower_bound(1, d);
    worst = std::max(worst, std::abs(res.mk_lower - 1.0));
  }
  if (worst > 1e-9) c.fail("max |M1 - 1| = " + fmt(worst));
  c.note("max |M1 - 1| = " + fmt(worst) + " over degrees 0..5");
}

void crit_variational_oracle(Criterion& c) {
  double worst = 0.0;
  for (unsigned k : {2u, 3u}) {
    for (unsigned d = 0; d <= 3; ++d) {
      auto res = variational::mk_lower_bound(k, d);
      double oracle = test_oracles::oracle_rayleigh_max(k, d);
      worst = std::max(worst, std::abs(res.mk_lower - oracle));
    }
  }
  if (worst > 1e-6) c.fail("max |bound - quadrature oracle| = " + fmt(worst));

  for (unsigned k = 1; k <= 8; ++k) {
    double prev = -1.0;
    for (unsigned d = 0; d <= 4; ++d) {
      auto res = variational::mk_lower_bound(k, d);
      if (res.mk_lower < prev - 1e-12)
        c.fail("k=" + std::to_string(k) + ": bound decreased at degree " +
               std::to_string(d));
      prev = res.mk_lower;
    }
  }
  c.note("oracle gap " + fmt(worst) + "; monotone in degree for k <= 8");
}

void crit_dirichlet_mc(Criterion& c) {
  std::mt19937_64 rng(987654321);
  std::uniform_int_distribution<unsigned> kdist(1, 4);
  int bad = 0;
  double worst_pull = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    unsigned k = kdist(rng);
    simplex::Exponents alpha(k, 0);
    unsigned budget = 6;
    for (unsigned i = 0; i < k; ++i) {
      std::uniform_int_distribution<unsigned> d(0, budget);
      alpha[i] = d(rng);
      budget -= alpha[i];
    }
    unsigned beta = std::uniform_int_distribution<unsigned>(0, budget)(rng);
    double exact = static_cast<double>(simplex::dirichlet_integral(alpha, beta, k));
    auto [mean, se] = test_oracles::mc_dirichlet(alpha, beta, k, 1000000, rng);
    double pull = se > 0 ? std::abs(mean - exact) / se : 0.0;
    worst_pull = std::max(worst_pull, pull);
    if (std::abs(mean - exact) > 3.0 * se + 1e-12) ++bad;
  }
  if (bad > 0) c.fail(std::to_string(bad) + "/50 instances outside 3 standard errors");
  c.note("50 instances, worst pull " + fmt(worst_pull) + " sigma");
}

void crit_lemma1b(Criterion& c) {
  std::mt19937_64 rng(20260810);
  std::uniform_int_distribution<int> Jdist(1, 200), Ldist(1, 50);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int failures = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    expsum::Lemma1Instance inst;
    int J = Jdist(rng);
    inst.L = static_cast<unsigned>(Ldist(rng));
    inst.I.lo = unif(rng);
    inst.I.len = std::min(0.999, std::max(1e-3, unif(rng)));
    for (int j = 0; j < J; ++j) {
      inst.x.push_back(10.0 * unif(rng) - 5.0);
      inst.a.push_back(unif(rng));
    }
    if (!expsum::lemma1b_check(inst).ok) ++failures;
  }
  if (failures > 0) c.fail(std::to_string(failures) + " inequality failures");
  c.note("10000 randomized instances, 0 failures required");
}

void crit_characters(Criterion& c) {
  double worst = 0.0;
  for (std::uint64_t q = 1; q <= 200; ++q) {
    auto chis = expsum::characters_mod(q);
    if (chis.size() != arith::euler_phi_u64(q)) {
      c.fail("character count wrong at q=" + std::to_string(q));
      return;
    }
    double phi = static_cast<double>(chis.size());
    for (const auto& chi : chis) {
      std::complex<double> s{0, 0};
      for (std::uint64_t n = 1; n <= q; ++n) s += chi(n);
      double target = chi.principal() ? phi : 0.0;
      worst = std::max(worst, std::abs(s - std::complex<double>{target}));
    }
    // second orthogonality on a diagonal slice plus random pairs
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
    for (int trial = 0; trial < 8; ++trial) {
      std::uint64_t n = dist(rng), m = dist(rng);
      std::complex<double> s{0, 0};
      for (const auto& chi : chis) s += chi(n) * std::conj(chi(m));
      double target =
          (n == m && std::gcd(n, q) == 1) ? phi : 0.0;
      worst = std::max(worst, std::abs(s - std::complex<double>{target}));
    }
  }
  if (worst > 1e-9) c.fail("worst orthogonality defect " + fmt(worst));
  c.note("q <= 200, worst defect " + fmt(worst));
}

void crit_lemma3_sweep(Criterion& c) {
  const std::vector<double> cs = {0.7, 0.8, 0.9};
  const std::vector<std::uint64_t> hs = {1, 4, 16};
  const std::vector<std::uint64_t> qs = {1, 4, 32};
  const std::vector<std::uint64_t> us = {0, 1};
  const std::vector<std::uint64_t> Ks = {1u << 11, 1u << 12, 1u << 13,
                                         1u << 14, 1u << 15, 1u << 16};
  double worst_ref = 0.0;
  std::map<std::uint64_t, double> max_ratio;
  for (double cc : cs)
    for (auto h : hs)
      for (auto q : qs)
        for (auto u : us)
          for (auto K : Ks) {
            auto r = expsum::lemma3_sum(cc, h, 1, K, 2 * K, q, u, 1e-10);
            if (!std::isfinite(std::abs(r.S))) {
              c.fail("non-finite S in sweep");
              return;
            }
            auto ref = expsum::lemma3_reference(cc, h, 1, K, 2 * K, q, u, 256);
            worst_ref = std::max(worst_ref, std::abs(r.S - ref.S));
            auto& mr = max_ratio[K];
            mr = std::max(mr, r.ratio);
          }
  if (worst_ref > 1e-10) c.fail("evaluator vs 256-bit reference " + fmt(worst_ref));
  for (std::size_t i = 1; i < Ks.size(); ++i) {
    double big = max_ratio[Ks[i]], half = max_ratio[Ks[i - 1]];
    if (big > 1.5 * half)
      c.fail("ratio growth " + fmt(big) + " > 1.5 x " + fmt(half) + " at K=" +
             std::to_string(Ks[i]));
  }
  c.note("ref gap " + fmt(worst_ref) + "; max ratio " + fmt(max_ratio[1u << 16]) +
         " at K=2^16");
}

std::int64_t reasonable_oracle(const std::vector<std::int64_t>& b) {
  for (std::int64_t p : arith::primes_below(51)) {
    std::int64_t p2 = p * p;
    bool any = false;
    for (std::int64_t v = 1; v < p2 && !any; ++v) {
      if (v % p == 0) continue;
      bool clash = false;
      for (std::int64_t bl : b) {
        std::int64_t res = ((bl % p2) + p2) % p2;
        if (res == v) {
          clash = true;
          break;
        }
      }
      if (!clash) any = true;
    }
    if (!any) return p;
  }
  return 0;
}

const std::vector<std::vector<std::int64_t>>& acceptance_rsets() {
  static const std::vector<std::vector<std::int64_t>> rsets = {
      {}, {2}, {1, 2}, {2, 4, 6}};
  return rsets;
}

void crit_tuples(Criterion& c) {
  // construction passes both checkers across k <= 12, r <= 3
  for (const auto& bs : acceptance_rsets()) {
    auto R = reasonable(bs);
    for (std::size_t k = 1; k <= 12; ++k) {
      auto [H, cert] = tuples::construct_compatible(k, R);
      if (!cert.compatible())
        c.fail("construction certificate failed at k=" + std::to_string(k));
      auto adm = tuples::check_admissible(H.h);
      if (!std::holds_alternative<tuples::AdmissibleTuple>(adm))
        c.fail("admissibility failed at k=" + std::to_string(k));
      if (!tuples::check_compatible(H, R).compatible())
        c.fail("compatibility recheck failed at k=" + std::to_string(k));
    }
  }

  // reasonability checker vs exhaustive oracle on 500 random sets
  std::mt19937_64 rng(20260810);
  std::uniform_int_distribution<int> size_dist(0, 8);
  std::uniform_int_distribution<std::int64_t> val_dist(-100, 100);
  int mismatches = 0;
  for (int done = 0; done < 500; ++done) {
    std::set<std::int64_t> s;
    int want = size_dist(rng);
    while (static_cast<int>(s.size()) < want) {
      std::int64_t v = val_dist(rng);
      if (v != 0) s.insert(v);
    }
    std::vector<std::int64_t> b(s.begin(), s.end());
    std::int64_t expect = reasonable_oracle(b);
    auto got = tuples::check_reasonable(b);
    bool got_ok = std::holds_alternative<tuples::ReasonableSet>(got);
    if (got_ok != (expect == 0)) ++mismatches;
    if (!got_ok && std::get<tuples::PrimeCounterexample>(got).p != expect) ++mismatches;
  }
  if (mismatches > 0)
    c.fail(std::to_string(mismatches) + " oracle mismatches in check_reasonable");
  c.note("k <= 12 x 4 reasonable sets constructed; 500 oracle comparisons");
}

void crit_nu0(Criterion& c) {
  int instances = 0;
  for (const auto& bs : acceptance_rsets()) {
    auto R = reasonable(bs);
    for (std::size_t k = 1; k <= 12; ++k) {
      auto [H, cert] = tuples::construct_compatible(k, R);
      auto nu = tuples::construct_nu0(H, R, cert.K, 3);
      if (nu.W1 > 1000000) continue;
      ++instances;
      auto W1 = static_cast<std::int64_t>(nu.W1);
      auto primes = arith::primes_below(static_cast<std::uint64_t>(cert.K) + 1);

      // exhaustive scan: validity of every residue class, directly from
      // the congruence conditions
      auto valid_at = [&](std::int64_t rho) {
        for (const auto& hm : H.h) {
          tuples::cpp_int v = rho + hm;
          if (boost::multiprecision::gcd(v, nu.W1) != 1) return false;
          for (std::int64_t p : primes)
            for (std::int64_t bl : R.b)
              if ((v - bl) % (p * p) == 0) return false;
        }
        return true;
      };
      std::int64_t valid_count = 0;
      bool nu_valid = false;
      auto nu0 = static_cast<std::int64_t>(nu.nu0);
      for (std::int64_t rho = 0; rho < W1; ++rho) {
        if (valid_at(rho)) {
          ++valid_count;
          if (rho == nu0) nu_valid = true;
        }
      }
      if (!nu_valid)
        c.fail("nu0 fails its own congruences at k=" + std::to_string(k) + ", r=" +
               std::to_string(R.r()));
      if (valid_count == 0) c.fail("empty valid class set (impossible)");
    }
  }
  c.note(std::to_string(instances) + " instances with W1 <= 1e6 exhaustively scanned");
}

void crit_weights(Criterion& c) {
  // (a) brute-force lambda/w match at k=1, R_level <= 10
  weights::SieveContext tiny;
  tiny.N = 1000;
  tiny.M = 1000;
  tiny.Y = 1000;
  tiny.k = 1;
  tiny.K = 5;
  tiny.D0 = 3;
  tiny.W1 = 900;
  tiny.nu0 = 227;
  tiny.W1_i64 = 900;
  tiny.nu0_i64 = 227;
  tiny.R_level = 10.0;
  simplex::SimplexPolynomial f1(1);
  f1.add_term({0}, 1);
  f1.add_term({1}, -1);
  tiny.F = f1;
  tiny.h = {0};
  tiny.b = {1};
  auto table = weights::lambda_table(tiny);
  double worst_lambda = 1e18;
  if (table.size() != 2) {
    c.fail("k=1 support size " + std::to_string(table.size()) + " != 2");
  } else {
    worst_lambda = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      std::int64_t d = table.support[i][0];
      double brute = 0.0;
      for (std::int64_t r = 1; r <= 10; ++r) {
        if (r % d != 0) continue;
        brute += weights::y_weight({r}, tiny) /
                 static_cast<double>(arith::euler_phi_u64(r));
      }
      int mu = (d == 1) ? 1 : -1;  // d in {1, 7}
      brute *= mu * static_cast<double>(d);
      worst_lambda = std::max(worst_lambda, std::abs(brute - table.values[i]));
    }
    if (worst_lambda > 1e-15) c.fail("lambda brute-force gap " + fmt(worst_lambda));
    for (std::uint64_t n = 1127; n < 10000; n += 900) {
      double s = 0.0;
      for (std::size_t i = 0; i < table.size(); ++i)
        if (n % static_cast<std::uint64_t>(table.support[i][0]) == 0)
          s += table.values[i];
      if (std::abs(weights::weight_w(n, table, tiny) - s * s) > 1e-15)
        c.fail("w_n mismatch at n=" + std::to_string(n));
    }
  }

  // (b) Omega(p) = 0 for p <= D0, on a context with nonempty R
  {
    auto R = reasonable({1});
    auto [H, cert] = tuples::construct_compatible(2, R);
    std::uint64_t N = 1000000;
    auto A =
        sets::build_set(sets::SetKind::interval, sets::IntervalParams{}, N, N);
    auto ctx = weights::make_context(N, N, static_cast<double>(N), 0.5, 0.01, 2, H, R,
                                     elementary_symmetric(2, 2));
    auto tab = weights::lambda_table(ctx);
    for (std::int64_t p : arith::primes_below(static_cast<std::uint64_t>(ctx.D0) + 1))
      for (unsigned m = 0; m < ctx.k; ++m)
        for (unsigned ell = 0; ell < ctx.b.size(); ++ell)
          if (weights::omega_diagnostic(p, m, ell, A, tab, ctx) != 0.0)
            c.fail("Omega(" + std::to_string(p) + ") != 0");
  }

  // (c) S1 band at N = 1e7, M = N, k = 3.  Frozen configuration:
  // R = {}, theta = 0.6, eps = 0.005, F = e_2 (second elementary
  // symmetric polynomial); the loose band absorbs the slow o(1).
  {
    auto R = reasonable({});
    auto [H, cert] = tuples::construct_compatible(3, R);
    std::uint64_t N = 10000000;
    auto A = sets::build_set(sets::SetKind::interval, sets::IntervalParams{}, N, N);
    auto ctx = weights::make_context(N, N, static_cast<double>(N), 0.6, 0.005, 2, H, R,
                                     elementary_symmetric(3, 2));
    auto tab = weights::lambda_table(ctx);
    auto diag = weights::empirical_sums(A, tab, ctx);
    double ratio = diag.S1_emp / diag.S1_pred;
    if (!(ratio >= 0.3 && ratio <= 3.0))
      c.fail("S1 ratio " + fmt(ratio) + " outside [0.3, 3]");
    c.note("lambda gap " + fmt(worst_lambda) + "; S1 ratio " + fmt(ratio));
  }
}

void crit_cluster(Criterion& c) {
  auto R = reasonable({2});
  auto [H, cert] = tuples::construct_compatible(5, R);
  std::vector<std::int64_t> h;
  for (const auto& x : H.h) h.push_back(static_cast<std::int64_t>(x));

  // derived expectation: brute-force all_n oracle on a 1e5 subrange
  std::uint64_t sub_lo = 1000000, sub_len = 100000;
  std::vector<std::uint64_t> oracle_ns;
  for (std::uint64_t n = sub_lo; n < sub_lo + sub_len; ++n) {
    unsigned good = 0;
    for (std::int64_t hm : h) {
      std::uint64_t p = n + static_cast<std::uint64_t>(hm);
      if (!arith::is_prime_u64(p)) continue;
      bool sf = true;
      for (std::int64_t bl : R.b)
        if (!arith::is_squarefree_u64(p - static_cast<std::uint64_t>(bl))) sf = false;
      if (sf) ++good;
    }
    if (good >= 2) oracle_ns.push_back(n);
  }
  auto Asub = sets::build_set(sets::SetKind::interval, sets::IntervalParams{}, sub_lo,
                              sub_len);
  cluster::SearchOptions all;
  all.mode = cluster::SearchMode::all_n;
  auto rep_sub = cluster::search_clusters(Asub, H, R, 2, all);
  std::vector<std::uint64_t> got_ns;
  for (const auto& cl : rep_sub.clusters) got_ns.push_back(cl.n);
  if (got_ns != oracle_ns)
    c.fail("all_n search disagrees with brute-force oracle on the subrange (" +
           std::to_string(got_ns.size()) + " vs " + std::to_string(oracle_ns.size()) +
           ")");

  // the stated run: interval N = M = 1e6, nu0_class, t = 2
  auto A = sets::build_set(sets::SetKind::interval, sets::IntervalParams{}, 1000000,
                           1000000);
  cluster::SearchOptions opts;
  opts.mode = cluster::SearchMode::nu0_class;
  auto rep = cluster::search_clusters(A, H, R, 2, opts);
  if (rep.clusters.empty()) c.fail("no cluster found in nu0_class mode");
  auto spread = static_cast<std::uint64_t>(H.diameter());
  for (const auto& cl : rep.clusters) {
    if (!cluster::verify_cluster(cl, R)) {
      c.fail("cluster at n=" + std::to_string(cl.n) + " failed verify_cluster");
      break;
    }
    if (cl.diameter > spread) {
      c.fail("diameter " + std::to_string(cl.diameter) + " exceeds h_5 - h_1");
      break;
    }
  }
  c.note(std::to_string(rep.clusters.size()) + " verified clusters; oracle subrange had " +
         std::to_string(oracle_ns.size()));
}

void crit_sets(Criterion& c) {
  // Beatty: certified bitmap vs direct floor enumeration on 1e5 values
  {
    sets::BeattyParams p;
    p.alpha_expr = "sqrt(2)";
    p.beta_expr = "0";
    p.cross_check = false;
    auto A = sets::build_set(sets::SetKind::beatty, p, 1000000, 100000);
    std::vector<bool> oracle(A.M, false);
    double a = std::sqrt(2.0);
    auto m_lo = static_cast<std::int64_t>(static_cast<double>(A.N) / a) - 2;
    auto m_hi = static_cast<std::int64_t>(static_cast<double>(A.N + A.M) / a) + 2;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
      // exact floor of sqrt(2)*m via integer arithmetic: largest v with
      // v^2 <= 2 m^2
      unsigned __int128 two_m2 = static_cast<unsigned __int128>(m) * m * 2;
      auto v = static_cast<std::uint64_t>(std::sqrt(2.0) * static_cast<double>(m));
      while (static_cast<unsigned __int128>(v + 1) * (v + 1) <= two_m2) ++v;
      while (static_cast<unsigned __int128>(v) * v > two_m2) --v;
      if (v >= A.N && v < A.N + A.M) oracle[v - A.N] = true;
    }
    std::uint64_t mismatches = 0;
    for (std::uint64_t i = 0; i < A.M; ++i)
      if (oracle[i] != A.members[i]) ++mismatches;
    if (mismatches > 0)
      c.fail("beatty bitmap has " + std::to_string(mismatches) + " mismatches");
    if (A.borderline > 0)
      c.fail("beatty borderline count " + std::to_string(A.borderline));
  }

  // Power set: bitmap vs direct-definition oracle on 1e5 values, and
  // density within [0.9, 1.1] of M * delta at N = 1e8
  {
    sets::PowerParams p;
    p.c = 0.9;
    p.beta_expr = "0";
    p.epsilon = 0.01;
    std::uint64_t N = 100000000, M = 100000;
    auto A = sets::build_set(sets::SetKind::power, p, N, M);
    // direct-definition oracle in 80-bit extended precision
    std::uint64_t mismatches = 0;
    for (std::uint64_t n = N; n < N + M; ++n) {
      long double y = std::pow(static_cast<long double>(n), static_cast<long double>(0.9));
      long double f = y - std::floor(y);
      bool member = f < static_cast<long double>(A.delta);
      if (member != A.contains(n)) ++mismatches;
    }
    if (mismatches > 0)
      c.fail("power bitmap has " + std::to_string(mismatches) +
             " mismatches vs long-double oracle");
    if (A.borderline > 0) c.fail("power borderline count " + std::to_string(A.borderline));

    sets::PowerParams p2 = p;
    std::uint64_t M2 = 1000000;
    auto A2 = sets::build_set(sets::SetKind::power, p2, N, M2);
    double density = static_cast<double>(A2.size()) / (static_cast<double>(M2) * A2.delta);
    if (!(density >= 0.9 && density <= 1.1))
      c.fail("power density/M*delta = " + fmt(density) + " outside [0.9, 1.1]");
    c.note("beatty+power bitmaps exact on 1e5 values; density ratio " + fmt(density));
  }
}

int run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void crit_determinism(Criterion& c) {
  if (g_cli.empty()) {
    c.fail("no --cli binary path supplied");
    return;
  }
  struct Case {
    const char* name;
    std::string args;
    std::vector<std::string> files;
  };
  fs::path base = fs::temp_directory_path() / "sfclust_acceptance_det";
  std::vector<Case> cases = {
      {"tuples", "tuples --k 3 --R 1,2 --seed 5", {"tuples.json"}},
      {"mk", "mk --kmin 2 --kmax 4 --degree 2 --seed 5", {"mk.csv"}},
      {"weights",
       "weights --N 1000000 --M 1000000 --k 2 --R 1 --theta 0.5 --eps 0.01 --F e2 --seed 5",
       {"weights.json"}},
      {"sets", "sets --kind beatty --alpha 'sqrt(2)' --N 100000 --M 20000 --qmax 20 --seed 5",
       {"sets.json", "sets.csv"}},
      {"lemmas", "lemmas --which 1 --instances 300 --seed 5", {"lemmas.csv"}},
      {"search",
       "search --set interval --N 200000 --M 200000 --k 3 --t 2 --R 2 --mode nu0_class "
       "--seed 5",
       {"search.json", "search.csv"}},
  };
  for (const auto& cs : cases) {
    fs::path o1 = base / (std::string(cs.name) + "_1");
    fs::path o2 = base / (std::string(cs.name) + "_2");
    fs::remove_all(o1);
    fs::remove_all(o2);
    if (run_cli(cs.args + " --out " + o1.string()) != 0 ||
        run_cli(cs.args + " --out " + o2.string()) != 0) {
      c.fail(std::string(cs.name) + ": CLI run failed");
      continue;
    }
    for (const auto& f : cs.files) {
      if (slurp(o1 / f) != slurp(o2 / f)) c.fail(std::string(cs.name) + "/" + f + " differs");
      if (slurp(o1 / f).empty()) c.fail(std::string(cs.name) + "/" + f + " empty");
    }
  }
  c.note("6 subcommands re-run byte-identically (manifest excluded)");
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") g_cli = argv[i + 1];

  std::printf("acceptance criteria\n-------------------\n");
  run_criterion("M1-exactness", 1.0, crit_m1_exactness);
  run_criterion("variational-oracle", 300.0, crit_variational_oracle);
  run_criterion("dirichlet-monte-carlo", 0.0, crit_dirichlet_mc);
  run_criterion("lemma1b-inequality", 60.0, crit_lemma1b);
  run_criterion("character-orthogonality", 0.0, crit_characters);
  run_criterion("lemma3-sweep", 600.0, crit_lemma3_sweep);
  run_criterion("tuples-construction", 0.0, crit_tuples);
  run_criterion("nu0-construction", 0.0, crit_nu0);
  run_criterion("weights-diagnostics", 600.0, crit_weights);
  run_criterion("cluster-search", 600.0, crit_cluster);
  run_criterion("beatty-power-sets", 0.0, crit_sets);
  run_criterion("determinism", 0.0, crit_determinism);

  if (g_failures == 0)
    std::printf("-------------------\nall criteria passed\n");
  else
    std::printf("-------------------\n%d criteria FAILED\n", g_failures);
  return g_failures;
}
