#ifndef SFCLUST_CLUSTER_HPP
#define SFCLUST_CLUSTER_HPP

// Searches ambient sets for integers n such that at least t of the
// shifted values n + h are prime with every translate p - b squarefree,
// and re-verifies every reported cluster through an independent
// primality + trial-division path.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sfclust/sets.hpp"
#include "sfclust/tuples.hpp"
#include "sfclust/weights.hpp"

namespace sfclust::cluster {

struct Cluster {
  std::uint64_t n = 0;
  std::vector<std::int64_t> prime_offsets;  // h with n+h prime and translates squarefree
  std::uint64_t diameter = 0;               // max - min over the listed primes
  std::map<std::pair<std::uint64_t, std::int64_t>, bool> translate_checks;  // (p, b)

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    out.reserve(prime_offsets.size());
    for (auto h : prime_offsets) out.push_back(n + static_cast<std::uint64_t>(h));
    return out;
  }
};

enum class SearchMode { all_n, nu0_class, weighted };

struct SearchCounts {
  std::uint64_t candidates = 0;
  std::uint64_t primes_found = 0;
  std::uint64_t squarefree_failures = 0;
};

struct SearchReport {
  std::uint64_t range_lo = 0;
  std::uint64_t range_hi = 0;
  SearchMode mode = SearchMode::nu0_class;
  unsigned t = 0;
  std::vector<Cluster> clusters;
  SearchCounts counts;
  double timing_ms = 0.0;  // reported via the run manifest, not data files
  std::vector<std::string> notes;
};

struct SearchOptions {
  SearchMode mode = SearchMode::nu0_class;
  double theta = 0.5;          // weighted mode: sieve level parameters
  double epsilon = 0.01;
  unsigned weight_degree = 2;  // weighted mode: degree of F
  std::uint64_t residue_bitmap_cap = std::uint64_t{1} << 27;
  std::uint64_t segment_budget = std::uint64_t{1} << 28;
};

// The nu0_class/weighted modes restrict to n whose residue mod W1
// satisfies the defining congruences of nu0 (every such class carries
// the same local guarantees; see README for the W1 > M rationale).
SearchReport search_clusters(const sets::IndexedSet& A, const tuples::AdmissibleTuple& H,
                             const tuples::ReasonableSet& R, unsigned t,
                             const SearchOptions& opts = {});

// Independent oracle: deterministic Miller-Rabin primality plus
// trial-division squarefree checks on every translate.
bool verify_cluster(const Cluster& c, const tuples::ReasonableSet& R);

}  // namespace sfclust::cluster

#endif
