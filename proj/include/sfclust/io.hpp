#ifndef SFCLUST_IO_HPP
#define SFCLUST_IO_HPP

// JSON / CSV emission for the CLI.  All numeric formatting here is
// locale-independent and reproducible: the same inputs serialize to
// byte-identical text.

#include <string>
#include <vector>

#include "sfclust/cluster.hpp"
#include "sfclust/expsum.hpp"
#include "sfclust/sets.hpp"
#include "sfclust/tuples.hpp"
#include "sfclust/variational.hpp"
#include "sfclust/weights.hpp"

namespace sfclust::io {

// shortest round-trip decimal form of a double
std::string fmt_double(double v);

std::string tuples_report_json(const tuples::ReasonableSet& R,
                               const tuples::AdmissibleTuple& H,
                               const tuples::CompatibilityCertificate& cert,
                               const tuples::Nu0Result& nu);

std::string reasonable_failure_json(const std::vector<std::int64_t>& b,
                                    std::int64_t counterexample_prime);

std::string mk_csv(const std::vector<variational::VariationalResult>& rows);

std::string weights_report_json(const weights::WeightDiagnostics& d,
                                const weights::SieveContext& ctx);

std::string set_summary_json(const sets::IndexedSet& A, const sets::EquidistReport& rep);
std::string set_vq_csv(const sets::EquidistReport& rep, unsigned k);

struct Lemma1Row {
  std::uint64_t index = 0;
  double lhs = 0, rhs = 0;
  bool ok = false;
};
std::string lemma1_csv(const std::vector<Lemma1Row>& rows);
std::string lemma1_repro_json(const expsum::Lemma1Instance& inst,
                              const expsum::Lemma1bResult& res);

struct Lemma3Row {
  double c = 0;
  std::uint64_t h = 0, m = 0, q = 0, u = 0, K = 0;
  double abs_S = 0, bound = 0, ratio = 0;
  double ref_diff = -1.0;  // |S - S_ref|, negative when no reference ran
};
std::string lemma3_csv(const std::vector<Lemma3Row>& rows);

struct Lemma2Row {
  std::uint64_t H = 0, N = 0, M = 0, Q = 0;
  double X = 0, lhs = 0, rhs = 0, ratio = 0;
};
std::string lemma2_csv(const std::vector<Lemma2Row>& rows);

std::string search_report_json(const cluster::SearchReport& rep);
std::string search_csv(const cluster::SearchReport& rep);

}  // namespace sfclust::io

#endif
