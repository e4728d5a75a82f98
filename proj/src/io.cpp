#include "sfclust/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "sfclust/arith.hpp"

namespace sfclust::io {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// JSON numbers are limited to double precision; big integers travel as
// decimal strings.
std::string big(const tuples::cpp_int& v) { return v.str(); }

ordered_json json_reasonable(const tuples::ReasonableSet& R) {
  ordered_json j;
  j["b"] = R.b;
  j["r"] = R.r();
  ordered_json w = ordered_json::object();
  for (auto [p, v] : R.witnesses) w[std::to_string(p)] = v;
  j["witnesses"] = w;
  return j;
}

ordered_json json_tuple(const tuples::AdmissibleTuple& H) {
  ordered_json j;
  std::vector<std::string> hs;
  for (const auto& h : H.h) hs.push_back(big(h));
  j["h"] = hs;
  j["k"] = H.k();
  ordered_json w = ordered_json::object();
  for (auto [p, v] : H.witnesses) w[std::to_string(p)] = v;
  j["witnesses"] = w;
  return j;
}

ordered_json json_certificate(const tuples::CompatibilityCertificate& cert) {
  ordered_json j;
  j["K"] = cert.K;
  j["P"] = big(cert.P);
  j["r"] = cert.r;
  j["checks_11"] = cert.checks_11;
  j["checks_12"] = cert.checks_12;
  return j;
}

}  // namespace

std::string tuples_report_json(const tuples::ReasonableSet& R,
                               const tuples::AdmissibleTuple& H,
                               const tuples::CompatibilityCertificate& cert,
                               const tuples::Nu0Result& nu) {
  ordered_json j;
  j["reasonable_set"] = json_reasonable(R);
  j["tuple"] = json_tuple(H);
  j["certificate"] = json_certificate(cert);
  j["nu0"] = big(nu.nu0);
  j["W1"] = big(nu.W1);
  return j.dump(2) + "\n";
}

std::string reasonable_failure_json(const std::vector<std::int64_t>& b,
                                    std::int64_t counterexample_prime) {
  ordered_json j;
  j["b"] = b;
  j["reasonable"] = false;
  j["counterexample_prime"] = counterexample_prime;
  return j.dump(2) + "\n";
}

std::string mk_csv(const std::vector<variational::VariationalResult>& rows) {
  std::ostringstream out;
  out << "k,degree,mk_lower\n";
  for (const auto& r : rows)
    out << r.k << "," << r.degree << "," << fmt_double(r.mk_lower) << "\n";
  return out.str();
}

std::string weights_report_json(const weights::WeightDiagnostics& d,
                                const weights::SieveContext& ctx) {
  ordered_json j;
  ordered_json c;
  c["N"] = ctx.N;
  c["M"] = ctx.M;
  c["Y"] = ctx.Y;
  c["theta"] = ctx.theta;
  c["epsilon"] = ctx.epsilon;
  c["t"] = ctx.t;
  c["k"] = ctx.k;
  c["K"] = ctx.K;
  c["D0"] = ctx.D0;
  c["W1"] = big(ctx.W1);
  c["nu0"] = big(ctx.nu0);
  c["R_level"] = ctx.R_level;
  c["h"] = ctx.h;
  c["b"] = ctx.b;
  c["b_m"] = ctx.b_m;
  c["Y_m"] = ctx.Y_m;
  c["warnings"] = ctx.warnings;
  j["context"] = c;

  ordered_json s;
  s["S1_emp"] = d.S1_emp;
  s["S1_pred"] = d.S1_pred;
  s["S1_ratio"] = d.S1_pred != 0 ? d.S1_emp / d.S1_pred : 0.0;
  s["S2_emp"] = d.S2_emp;
  s["S2_pred"] = d.S2_pred;
  s["second_moment"] = d.second_moment;
  s["second_moment_scale"] = d.second_moment_scale;
  s["class_members"] = d.class_members;
  ordered_json om = ordered_json::object();
  for (auto [p, v] : d.omega) om[std::to_string(p)] = v;
  s["omega"] = om;
  j["diagnostics"] = s;
  return j.dump(2) + "\n";
}

std::string set_summary_json(const sets::IndexedSet& A, const sets::EquidistReport& rep) {
  ordered_json j;
  const char* kind = nullptr;
  switch (A.kind) {
    case sets::SetKind::interval: kind = "interval"; break;
    case sets::SetKind::short_interval: kind = "short_interval"; break;
    case sets::SetKind::beatty: kind = "beatty"; break;
    case sets::SetKind::power: kind = "power"; break;
  }
  j["kind"] = kind;
  j["N"] = A.N;
  j["M"] = A.M;
  j["cardinality"] = A.size();
  j["Y"] = A.Y;
  j["delta"] = A.delta;
  j["borderline"] = A.borderline;
  j["warnings"] = A.warnings;
  j["q_max"] = rep.q_max;
  j["weighted_lhs"] = rep.weighted_lhs;
  j["rhs_scale"] = rep.rhs_scale;
  return j.dump(2) + "\n";
}

std::string set_vq_csv(const sets::EquidistReport& rep, unsigned k) {
  std::ostringstream out;
  out << "q,V,weighted_term\n";
  arith::MultTables tables = arith::mult_tables(std::max<std::uint64_t>(rep.q_max, 2));
  for (const auto& [q, v] : rep.V) {
    double tau = static_cast<double>(tables.tau_k(3 * k, q));
    out << q << "," << fmt_double(v) << "," << fmt_double(tau * v) << "\n";
  }
  return out.str();
}

std::string lemma1_csv(const std::vector<Lemma1Row>& rows) {
  std::ostringstream out;
  out << "instance,lhs,rhs,ok\n";
  for (const auto& r : rows)
    out << r.index << "," << fmt_double(r.lhs) << "," << fmt_double(r.rhs) << ","
        << (r.ok ? 1 : 0) << "\n";
  return out.str();
}

std::string lemma1_repro_json(const expsum::Lemma1Instance& inst,
                              const expsum::Lemma1bResult& res) {
  ordered_json j;
  j["x"] = inst.x;
  j["a"] = inst.a;
  j["interval"] = {{"lo", inst.I.lo}, {"len", inst.I.len}};
  j["L"] = inst.L;
  j["lhs"] = res.lhs;
  j["rhs"] = res.rhs;
  return j.dump(2) + "\n";
}

std::string lemma3_csv(const std::vector<Lemma3Row>& rows) {
  std::ostringstream out;
  out << "c,h,m,q,u,K,abs_S,bound,ratio,ref_diff\n";
  for (const auto& r : rows) {
    out << fmt_double(r.c) << "," << r.h << "," << r.m << "," << r.q << "," << r.u << ","
        << r.K << "," << fmt_double(r.abs_S) << "," << fmt_double(r.bound) << ","
        << fmt_double(r.ratio) << ",";
    if (r.ref_diff >= 0)
      out << fmt_double(r.ref_diff);
    out << "\n";
  }
  return out.str();
}

std::string lemma2_csv(const std::vector<Lemma2Row>& rows) {
  std::ostringstream out;
  out << "H,N,M,Q,X,lhs,rhs,ratio\n";
  for (const auto& r : rows)
    out << r.H << "," << r.N << "," << r.M << "," << r.Q << "," << fmt_double(r.X) << ","
        << fmt_double(r.lhs) << "," << fmt_double(r.rhs) << "," << fmt_double(r.ratio)
        << "\n";
  return out.str();
}

namespace {

ordered_json json_cluster(const cluster::Cluster& c) {
  ordered_json j;
  j["n"] = c.n;
  j["prime_offsets"] = c.prime_offsets;
  j["primes"] = c.primes();
  j["diameter"] = c.diameter;
  ordered_json checks = ordered_json::array();
  for (const auto& [key, sf] : c.translate_checks) {
    checks.push_back({{"p", key.first}, {"b", key.second}, {"squarefree", sf}});
  }
  j["translate_checks"] = checks;
  return j;
}

}  // namespace

std::string search_report_json(const cluster::SearchReport& rep) {
  ordered_json j;
  j["range"] = {{"lo", rep.range_lo}, {"hi", rep.range_hi}};
  const char* mode = nullptr;
  switch (rep.mode) {
    case cluster::SearchMode::all_n: mode = "all_n"; break;
    case cluster::SearchMode::nu0_class: mode = "nu0_class"; break;
    case cluster::SearchMode::weighted: mode = "weighted"; break;
  }
  j["mode"] = mode;
  j["t"] = rep.t;
  j["counts"] = {{"candidates", rep.counts.candidates},
                 {"primes_found", rep.counts.primes_found},
                 {"squarefree_failures", rep.counts.squarefree_failures}};
  ordered_json cl = ordered_json::array();
  for (const auto& c : rep.clusters) cl.push_back(json_cluster(c));
  j["clusters"] = cl;
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

std::string search_csv(const cluster::SearchReport& rep) {
  std::ostringstream out;
  out << "n,offsets,primes,diameter\n";
  for (const auto& c : rep.clusters) {
    out << c.n << ",";
    for (std::size_t i = 0; i < c.prime_offsets.size(); ++i)
      out << (i ? ";" : "") << c.prime_offsets[i];
    out << ",";
    auto ps = c.primes();
    for (std::size_t i = 0; i < ps.size(); ++i) out << (i ? ";" : "") << ps[i];
    out << "," << c.diameter << "\n";
  }
  return out.str();
}

}  // namespace sfclust::io
