#include "sfclust/cluster.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "sfclust/arith.hpp"
#include "sfclust/errors.hpp"
#include "sfclust/variational.hpp"

namespace sfclust::cluster {

namespace {

std::int64_t narrow_i64(const tuples::cpp_int& v, const char* what) {
  if (v < 0 || v > tuples::cpp_int(std::int64_t{1} << 62))
    throw InvalidInput(std::string("search_clusters: ") + what + " exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

// residues rho mod W1 satisfying the nu0 congruences: (rho+h_m, W1)=1,
// p^2 not dividing rho+h_m-b_l for p <= K, p not dividing it for
// K < p <= D0
std::vector<bool> valid_residue_bitmap(std::int64_t W1, std::int64_t K, std::int64_t D0,
                                       const std::vector<std::int64_t>& h,
                                       const std::vector<std::int64_t>& b) {
  auto W = static_cast<std::uint64_t>(W1);
  std::vector<bool> ok(W, true);
  auto strike = [&](std::int64_t residue, std::int64_t mod) {
    std::int64_t r = residue % mod;
    if (r < 0) r += mod;
    for (std::uint64_t x = static_cast<std::uint64_t>(r); x < W;
         x += static_cast<std::uint64_t>(mod))
      ok[x] = false;
  };
  for (std::int64_t p : arith::primes_below(static_cast<std::uint64_t>(std::max(K, D0)) + 1)) {
    bool in_w1 = p <= K || p <= D0;
    if (!in_w1) continue;
    for (std::int64_t hm : h) {
      strike(-hm, p);  // coprimality of rho + h_m with W1
      for (std::int64_t bl : b) {
        if (p <= K)
          strike(bl - hm, p * p);
        else
          strike(bl - hm, p);
      }
    }
  }
  return ok;
}

}  // namespace

SearchReport search_clusters(const sets::IndexedSet& A, const tuples::AdmissibleTuple& H,
                             const tuples::ReasonableSet& R, unsigned t,
                             const SearchOptions& opts) {
  if (t > H.k()) throw InvalidInput("search_clusters: t <= k required");
  if (H.k() == 0) throw InvalidInput("search_clusters: empty tuple");

  auto t0 = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.range_lo = A.N;
  rep.range_hi = A.N + A.M;
  rep.mode = opts.mode;
  rep.t = t;

  std::vector<std::int64_t> h;
  for (const auto& hm : H.h) h.push_back(narrow_i64(hm, "offset"));
  const auto k = h.size();

  std::int64_t K = tuples::k_param(H.k(), R.r());
  std::int64_t D0 = tuples::d0_for(static_cast<double>(A.N));

  // class filter for nu0_class / weighted modes
  std::vector<bool> residue_ok;
  std::int64_t W1 = 0;
  if (opts.mode != SearchMode::all_n) {
    auto nu = tuples::construct_nu0(H, R, K, D0);
    W1 = narrow_i64(nu.W1, "W1");
    if (static_cast<std::uint64_t>(W1) > opts.residue_bitmap_cap)
      throw BudgetExceeded("search_clusters: W1 beyond residue bitmap cap");
    residue_ok = valid_residue_bitmap(W1, K, D0, h, R.b);
    rep.notes.push_back("class filter: residues mod W1=" + std::to_string(W1) +
                        " satisfying the nu0 congruences");
  }

  // sieved windows per offset: primality of n+h_m, squarefreeness of
  // n+h_m-b for every b
  std::int64_t bmax = 0, bmin = 0;
  for (std::int64_t bl : R.b) {
    bmax = std::max(bmax, bl);
    bmin = std::min(bmin, bl);
  }
  std::vector<arith::Segment> prime_seg, sf_seg;
  prime_seg.reserve(k);
  sf_seg.reserve(k);
  for (std::size_t m = 0; m < k; ++m) {
    std::uint64_t lo = A.N + static_cast<std::uint64_t>(h[m]);
    std::uint64_t hi = lo + A.M;
    prime_seg.push_back(arith::sieve_segment(lo, hi, opts.segment_budget));
    if (!R.b.empty()) {
      std::uint64_t slo = lo - static_cast<std::uint64_t>(bmax);
      std::uint64_t shi = hi - static_cast<std::uint64_t>(bmin);
      sf_seg.push_back(arith::sieve_segment(slo, shi, opts.segment_budget));
    }
  }

  // candidate list
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t n = A.N; n < A.N + A.M; ++n) {
    if (!A.members[n - A.N]) continue;
    if (opts.mode != SearchMode::all_n &&
        !residue_ok[n % static_cast<std::uint64_t>(W1)])
      continue;
    candidates.push_back(n);
  }

  // weighted mode: order candidates by the sieve weight, descending
  if (opts.mode == SearchMode::weighted && !candidates.empty()) {
    auto F = variational::mk_lower_bound(static_cast<unsigned>(k), opts.weight_degree);
    simplex::SimplexPolynomial Fpoly(static_cast<unsigned>(k));
    for (std::size_t i = 0; i < F.basis.size(); ++i)
      Fpoly = Fpoly + F.basis[i].scaled(F.coefficients[i]);
    auto ctx = weights::make_context(A.N, A.M, A.Y > 0 ? A.Y : static_cast<double>(A.M),
                                     opts.theta, opts.epsilon, t, H, R, Fpoly);
    auto table = weights::lambda_table(ctx);
    std::vector<std::pair<double, std::uint64_t>> ranked;
    ranked.reserve(candidates.size());
    for (std::uint64_t n : candidates) {
      double s = weights::divisor_sum(n, table, ctx.h);
      ranked.emplace_back(-s * s, n);
    }
    std::sort(ranked.begin(), ranked.end());
    candidates.clear();
    for (auto& [negw, n] : ranked) candidates.push_back(n);
    rep.notes.push_back("weighted mode: candidates ranked by w_n, tested in rank order");
  }

  for (std::uint64_t n : candidates) {
    ++rep.counts.candidates;
    Cluster c;
    c.n = n;
    for (std::size_t m = 0; m < k; ++m) {
      std::uint64_t p = n + static_cast<std::uint64_t>(h[m]);
      if (!prime_seg[m].is_prime(p)) continue;
      ++rep.counts.primes_found;
      bool all_sf = true;
      std::map<std::pair<std::uint64_t, std::int64_t>, bool> checks;
      for (std::int64_t bl : R.b) {
        bool sf = sf_seg[m].is_squarefree(p - static_cast<std::uint64_t>(bl));
        checks[{p, bl}] = sf;
        if (!sf) {
          all_sf = false;
          ++rep.counts.squarefree_failures;
        }
      }
      if (all_sf) {
        c.prime_offsets.push_back(h[m]);
        for (auto& [key, val] : checks) c.translate_checks[key] = val;
      }
    }
    if (c.prime_offsets.size() >= t) {
      auto ps = c.primes();
      c.diameter = *std::max_element(ps.begin(), ps.end()) -
                   *std::min_element(ps.begin(), ps.end());
      rep.clusters.push_back(std::move(c));
    }
  }

  // independent second pass: a cluster that fails re-verification is an
  // internal error, never silently dropped
  for (const auto& c : rep.clusters) {
    if (!verify_cluster(c, R))
      throw InternalError("search_clusters: cluster at n = " + std::to_string(c.n) +
                          " failed independent re-verification");
  }

  auto t1 = std::chrono::steady_clock::now();
  rep.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

bool verify_cluster(const Cluster& c, const tuples::ReasonableSet& R) {
  if (c.prime_offsets.empty()) return false;
  std::uint64_t pmin = UINT64_MAX, pmax = 0;
  for (std::int64_t h : c.prime_offsets) {
    std::uint64_t p = c.n + static_cast<std::uint64_t>(h);
    if (!arith::is_prime_u64(p)) return false;
    for (std::int64_t bl : R.b) {
      if (static_cast<std::int64_t>(p) - bl <= 0) return false;
      auto v = static_cast<std::uint64_t>(static_cast<std::int64_t>(p) - bl);
      if (!arith::is_squarefree_u64(v)) return false;
    }
    pmin = std::min(pmin, p);
    pmax = std::max(pmax, p);
  }
  return c.diameter == pmax - pmin;
}

}  // namespace sfclust::cluster
