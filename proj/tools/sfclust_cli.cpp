// Experiment orchestrator.  Subcommands: tuples | mk | weights | sets |
// lemmas | search.  Every run writes a manifest (config echo, versions,
// timings) plus per-subcommand CSV/JSON data files; with a fixed seed,
// data files are byte-identical across runs.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sfclust/arith.hpp"
#include "sfclust/cluster.hpp"
#include "sfclust/errors.hpp"
#include "sfclust/expsum.hpp"
#include "sfclust/io.hpp"
#include "sfclust/sets.hpp"
#include "sfclust/tuples.hpp"
#include "sfclust/variational.hpp"
#include "sfclust/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace sfclust;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string config_path;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out_dir = "out";
  unsigned precision = 256;
};

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(std::stoll(cur));
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  return out;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file " + p.string());
  f << content;
}

tuples::ReasonableSet require_reasonable(const std::vector<std::int64_t>& b) {
  auto chk = tuples::check_reasonable(b);
  if (std::holds_alternative<tuples::PrimeCounterexample>(chk))
    throw InvalidInput("R is not reasonable; counterexample prime " +
                       std::to_string(std::get<tuples::PrimeCounterexample>(chk).p));
  return std::get<tuples::ReasonableSet>(chk);
}

simplex::SimplexPolynomial optimal_F(unsigned k, unsigned degree) {
  auto res = variational::mk_lower_bound(k, degree);
  simplex::SimplexPolynomial F(k);
  for (std::size_t i = 0; i < res.basis.size(); ++i)
    F = F + res.basis[i].scaled(res.coefficients[i]);
  return F;
}

// Injects config-file values for options the command line left unset.
// Top-level keys cover common flags; a section named after the
// subcommand covers its options.
std::vector<std::string> merge_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::ifstream f(config_path);
  if (!f) throw InvalidInput("cannot read config file " + config_path);
  json cfg = json::parse(f);

  std::string subcmd;
  for (const auto& a : args)
    if (!a.empty() && a[0] != '-') {
      subcmd = a;
      break;
    }

  auto has_flag = [&](const std::string& name) {
    std::string flag = "--" + name;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  auto value_str = [](const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };

  std::vector<std::string> merged = args;
  for (auto& [key, val] : cfg.items()) {
    if (val.is_object()) continue;  // subcommand sections handled below
    if (!has_flag(key)) {
      merged.push_back("--" + key);
      merged.push_back(value_str(val));
    }
  }
  if (!subcmd.empty() && cfg.contains(subcmd)) {
    for (auto& [key, val] : cfg[subcmd].items()) {
      if (!has_flag(key)) {
        merged.push_back("--" + key);
        merged.push_back(value_str(val));
      }
    }
  }
  return merged;
}

struct Manifest {
  ordered_json config = ordered_json::object();
  ordered_json timings = ordered_json::object();
};

void write_manifest(const Common& common, const std::string& subcmd, Manifest& m) {
  ordered_json j;
  j["subcommand"] = subcmd;
  j["version"] = kVersion;
  j["seed"] = common.seed;
  j["threads"] = common.threads;
  j["precision"] = common.precision;
  j["config"] = m.config;
  j["timings_ms"] = m.timings;
  auto now = std::chrono::system_clock::now().time_since_epoch();
  j["wallclock_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  write_file(fs::path(common.out_dir) / "manifest.json", j.dump(2) + "\n");
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------------------

struct TuplesArgs {
  unsigned k = 2;
  std::string R = "";
  std::string scaling = "p2";
  std::string check_h = "";
  std::int64_t D0 = 3;
};

int run_tuples(const Common& common, const TuplesArgs& a, Manifest& m) {
  auto t0 = std::chrono::steady_clock::now();
  auto b = parse_int_list(a.R);
  auto chk = tuples::check_reasonable(b);
  if (std::holds_alternative<tuples::PrimeCounterexample>(chk)) {
    write_file(fs::path(common.out_dir) / "tuples.json",
               io::reasonable_failure_json(
                   b, std::get<tuples::PrimeCounterexample>(chk).p));
    m.timings["tuples"] = ms_since(t0);
    return 0;
  }
  auto R = std::get<tuples::ReasonableSet>(chk);

  tuples::AdmissibleTuple H;
  tuples::CompatibilityCertificate cert;
  if (!a.check_h.empty()) {
    std::vector<tuples::cpp_int> h;
    for (auto v : parse_int_list(a.check_h)) h.emplace_back(v);
    auto hchk = tuples::check_admissible(h);
    if (std::holds_alternative<tuples::PrimeCounterexample>(hchk))
      throw InvalidInput("H not admissible; counterexample prime " +
                         std::to_string(std::get<tuples::PrimeCounterexample>(hchk).p));
    H = std::get<tuples::AdmissibleTuple>(hchk);
    cert = tuples::check_compatible(H, R);
  } else {
    auto scaling =
        a.scaling == "p" ? tuples::Scaling::P_linear : tuples::Scaling::P_squared;
    std::tie(H, cert) = tuples::construct_compatible(a.k, R, scaling);
  }
  tuples::Nu0Result nu{0, 0};
  if (cert.compatible()) nu = tuples::construct_nu0(H, R, cert.K, a.D0);
  write_file(fs::path(common.out_dir) / "tuples.json",
             io::tuples_report_json(R, H, cert, nu));
  m.timings["tuples"] = ms_since(t0);
  return 0;
}

struct MkArgs {
  unsigned kmin = 2, kmax = 6;
  unsigned degree = 3;
  bool plain = false;
};

int run_mk(const Common& common, const MkArgs& a, Manifest& m) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<variational::VariationalResult> rows;
  for (unsigned k = a.kmin; k <= a.kmax; ++k)
    rows.push_back(variational::mk_lower_bound(k, a.degree, !a.plain));
  write_file(fs::path(common.out_dir) / "mk.csv", io::mk_csv(rows));
  m.timings["mk"] = ms_since(t0);
  return 0;
}

struct WeightsArgs {
  std::uint64_t N = 10000000, M = 10000000;
  unsigned k = 3, t = 2;
  std::string R = "";
  double theta = 0.5, eps = 0.01;
  unsigned degree = 3;
  std::string F = "optimal";
  double Y = 0.0;
};

// the elementary symmetric polynomial e_j in k variables
simplex::SimplexPolynomial elementary_symmetric(unsigned k, unsigned j) {
  simplex::SimplexPolynomial F(k);
  std::vector<unsigned> idx(j);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned start) {
    if (pos == j) {
      simplex::Exponents e(k, 0);
      for (unsigned i : idx) e[i] = 1;
      F.add_term(e, 1);
      return;
    }
    for (unsigned i = start; i < k; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return F;
}

int run_weights(const Common& common, const WeightsArgs& a, Manifest& m) {
  auto t0 = std::chrono::steady_clock::now();
  auto R = require_reasonable(parse_int_list(a.R));
  auto [H, cert] = tuples::construct_compatible(a.k, R);
  simplex::SimplexPolynomial F(a.k);
  if (a.F == "optimal")
    F = optimal_F(a.k, a.degree);
  else if (a.F == "e2")
    F = elementary_symmetric(a.k, 2);
  else if (a.F == "one")
    F = elementary_symmetric(a.k, 0);
  else
    throw InvalidInput("weights: --F must be optimal, e2 or one");
  double Y = a.Y > 0 ? a.Y : static_cast<double>(a.M);
  auto ctx = weights::make_context(a.N, a.M, Y, a.theta, a.eps, a.t, H, R, F);
  auto table = weights::lambda_table(ctx);
  auto A = sets::build_set(sets::SetKind::interval, sets::IntervalParams{}, a.N, a.M);
  auto diag = weights::empirical_sums(A, table, ctx);
  write_file(fs::path(common.out_dir) / "weights.json",
             io::weights_report_json(diag, ctx));
  m.timings["weights"] = ms_since(t0);
  return 0;
}

struct SetsArgs {
  std::string kind = "interval";
  std::uint64_t N = 1000000, M = 1000000;
  double phi = 0.7;
  std::string alpha = "sqrt(2)", beta = "0";
  double c = 0.9, eps = 0.01;
  std::uint64_t d = 1, qmax = 100;
  unsigned k = 2;
};

int run_sets(const Common& common, const SetsArgs& a, Manifest& m) {
  auto t0 = std::chrono::steady_clock::now();
  sets::BuildOptions opts;
  opts.precision = static_cast<mpfr_prec_t>(common.precision);
  sets::IndexedSet A;
  if (a.kind == "interval") {
    A = sets::build_set(sets::SetKind::interval, sets::IntervalParams{}, a.N, a.M, opts);
  } else if (a.kind == "short") {
    A = sets::build_set(sets::SetKind::short_interval, sets::ShortIntervalParams{a.phi},
                        a.N, 0, opts);
  } else if (a.kind == "beatty") {
    A = sets::build_set(sets::SetKind::beatty, sets::BeattyParams{a.alpha, a.beta, true},
                        a.N, a.M, opts);
  } else if (a.kind == "power") {
    sets::PowerParams p;
    p.c = a.c;
    p.beta_expr = a.beta;
    p.epsilon = a.eps;
    A = sets::build_set(sets::SetKind::power, p, a.N, a.M, opts);
  } else {
    throw InvalidInput("sets: unknown kind '" + a.kind + "'");
  }
  auto rep = sets::weighted_equidist(A, a.d, a.qmax, a.k);
  write_file(fs::path(common.out_dir) / "sets.json", io::set_summary_json(A, rep));
  write_file(fs::path(common.out_dir) / "sets.csv", io::set_vq_csv(rep, a.k));
  m.timings["sets"] = ms_since(t0);
  return 0;
}

struct LemmasArgs {
  unsigned which = 1;
  std::uint64_t instances = 10000;
  // lemma 3 grid
  std::string c_list = "0.7,0.8,0.9";
  std::string h_list = "1,4,16";
  std::string q_list = "1,4,32";
  std::string u_list = "0,1";
  std::string K_list = "2048,4096,8192,16384,32768,65536";
  std::uint64_t m_par = 1;
  bool reference = false;
  // lemma 2 instance
  std::uint64_t H2 = 2, N2 = 8, M2 = 8, Q2 = 4;
  double X2 = 64.0, alpha2 = 0.5, beta2 = 1.0, gamma2 = 1.0;
};

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(std::stod(cur));
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  return out;
}

int run_lemmas(const Common& common, const LemmasArgs& a, Manifest& m) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(common.seed);
  if (a.which == 1) {
    std::uniform_int_distribution<int> Jdist(1, 200), Ldist(1, 50);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<io::Lemma1Row> rows;
    std::uint64_t failures = 0;
    for (std::uint64_t i = 0; i < a.instances; ++i) {
      expsum::Lemma1Instance inst;
      int J = Jdist(rng);
      inst.L = static_cast<unsigned>(Ldist(rng));
      inst.I.lo = unif(rng);
      inst.I.len = std::min(0.999, std::max(1e-3, unif(rng)));
      for (int j = 0; j < J; ++j) {
        inst.x.push_back(10.0 * unif(rng) - 5.0);
        inst.a.push_back(unif(rng));
      }
      auto r = expsum::lemma1b_check(inst);
      rows.push_back({i, r.lhs, r.rhs, r.ok});
      if (!r.ok) {
        write_file(fs::path(common.out_dir) /
                       ("lemma1_failure_" + std::to_string(i) + ".json"),
                   io::lemma1_repro_json(inst, r));
        ++failures;
      }
    }
    write_file(fs::path(common.out_dir) / "lemmas.csv", io::lemma1_csv(rows));
    m.timings["lemma1"] = ms_since(t0);
    if (failures > 0) {
      std::cerr << "lemma1: " << failures << " inequality failures (repro files written)\n";
      return 3;
    }
    return 0;
  }
  if (a.which == 3) {
    std::vector<io::Lemma3Row> rows;
    for (double c : parse_double_list(a.c_list))
      for (auto h : parse_int_list(a.h_list))
        for (auto q : parse_int_list(a.q_list))
          for (auto u : parse_int_list(a.u_list))
            for (auto K : parse_int_list(a.K_list)) {
              auto r = expsum::lemma3_sum(c, h, a.m_par, K, 2 * K, q, u);
              io::Lemma3Row row;
              row.c = c;
              row.h = static_cast<std::uint64_t>(h);
              row.m = a.m_par;
              row.q = static_cast<std::uint64_t>(q);
              row.u = static_cast<std::uint64_t>(u);
              row.K = static_cast<std::uint64_t>(K);
              row.abs_S = std::abs(r.S);
              row.bound = r.bound;
              row.ratio = r.ratio;
              if (a.reference) {
                auto ref = expsum::lemma3_reference(
                    c, h, a.m_par, K, 2 * K, q, u,
                    static_cast<mpfr_prec_t>(common.precision));
                row.ref_diff = std::abs(r.S - ref.S);
              }
              rows.push_back(row);
            }
    write_file(fs::path(common.out_dir) / "lemmas.csv", io::lemma3_csv(rows));
    m.timings["lemma3"] = ms_since(t0);
    return 0;
  }
  if (a.which == 2) {
    expsum::BilinearInstance inst;
    inst.H = a.H2;
    inst.N = a.N2;
    inst.M = a.M2;
    inst.Q = a.Q2;
    inst.X = a.X2;
    inst.alpha = a.alpha2;
    inst.beta = a.beta2;
    inst.gamma = a.gamma2;
    auto r = expsum::lemma2_sum(inst);
    write_file(fs::path(common.out_dir) / "lemmas.csv",
               io::lemma2_csv({{a.H2, a.N2, a.M2, a.Q2, a.X2, r.lhs, r.rhs, r.ratio}}));
    m.timings["lemma2"] = ms_since(t0);
    return 0;
  }
  throw InvalidInput("lemmas: --which must be 1, 2 or 3");
}

struct SearchArgs {
  std::string set_kind = "interval";
  std::uint64_t N = 1000000, M = 1000000;
  unsigned k = 5, t = 2;
  std::string R = "2";
  std::string mode = "nu0_class";
  double theta = 0.5, eps = 0.01;
  unsigned degree = 2;
  std::string alpha = "sqrt(2)", beta = "0";
  double c = 0.9;
};

int run_search(const Common& common, const SearchArgs& a, Manifest& m) {
  auto t0 = std::chrono::steady_clock::now();
  auto R = require_reasonable(parse_int_list(a.R));
  auto [H, cert] = tuples::construct_compatible(a.k, R);

  sets::BuildOptions opts;
  opts.precision = static_cast<mpfr_prec_t>(common.precision);
  sets::IndexedSet A;
  if (a.set_kind == "interval") {
    A = sets::build_set(sets::SetKind::interval, sets::IntervalParams{}, a.N, a.M, opts);
  } else if (a.set_kind == "beatty") {
    A = sets::build_set(sets::SetKind::beatty,
                        sets::BeattyParams{a.alpha, a.beta, false}, a.N, a.M, opts);
  } else if (a.set_kind == "power") {
    sets::PowerParams p;
    p.c = a.c;
    p.epsilon = a.eps;
    p.beta_expr = a.beta;
    A = sets::build_set(sets::SetKind::power, p, a.N, a.M, opts);
  } else {
    throw InvalidInput("search: unknown set kind '" + a.set_kind + "'");
  }

  cluster::SearchOptions sopts;
  sopts.theta = a.theta;
  sopts.epsilon = a.eps;
  sopts.weight_degree = a.degree;
  if (a.mode == "all_n")
    sopts.mode = cluster::SearchMode::all_n;
  else if (a.mode == "nu0_class")
    sopts.mode = cluster::SearchMode::nu0_class;
  else if (a.mode == "weighted")
    sopts.mode = cluster::SearchMode::weighted;
  else
    throw InvalidInput("search: unknown mode '" + a.mode + "'");

  auto rep = cluster::search_clusters(A, H, R, a.t, sopts);
  write_file(fs::path(common.out_dir) / "search.json", io::search_report_json(rep));
  write_file(fs::path(common.out_dir) / "search.csv", io::search_csv(rep));
  m.timings["search"] = ms_since(t0);
  m.timings["search_scan"] = rep.timing_ms;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime clusters with squarefree translates: experiment workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config_path, "JSON config file");
  app.add_option("--seed", common.seed, "RNG seed (fuzz harnesses)");
  app.add_option("--threads", common.threads, "worker thread cap")->check(CLI::PositiveNumber);
  app.add_option("--out", common.out_dir, "output directory");
  app.add_option("--precision", common.precision, "MPFR precision in bits")
      ->check(CLI::Range(64u, 8192u));

  TuplesArgs ta;
  auto* cmd_tuples = app.add_subcommand("tuples", "construct/check tuples and nu0");
  cmd_tuples->add_option("--k", ta.k);
  cmd_tuples->add_option("--R", ta.R, "comma-separated reasonable set");
  cmd_tuples->add_option("--scaling", ta.scaling)->check(CLI::IsMember({"p2", "p"}));
  cmd_tuples->add_option("--check-H", ta.check_h, "verify this tuple instead of constructing");
  cmd_tuples->add_option("--D0", ta.D0);

  MkArgs ma;
  auto* cmd_mk = app.add_subcommand("mk", "variational M_k lower-bound table");
  cmd_mk->add_option("--kmin", ma.kmin);
  cmd_mk->add_option("--kmax", ma.kmax);
  cmd_mk->add_option("--k", ma.kmin)->excludes("--kmin");
  cmd_mk->add_option("--degree", ma.degree);
  cmd_mk->add_flag("--plain", ma.plain, "plain monomial basis");

  WeightsArgs wa;
  auto* cmd_weights = app.add_subcommand("weights", "sieve weight diagnostics");
  cmd_weights->add_option("--N", wa.N);
  cmd_weights->add_option("--M", wa.M);
  cmd_weights->add_option("--k", wa.k);
  cmd_weights->add_option("--t", wa.t);
  cmd_weights->add_option("--R", wa.R);
  cmd_weights->add_option("--theta", wa.theta);
  cmd_weights->add_option("--eps", wa.eps);
  cmd_weights->add_option("--degree", wa.degree);
  cmd_weights->add_option("--F", wa.F)->check(CLI::IsMember({"optimal", "e2", "one"}));
  cmd_weights->add_option("--Y", wa.Y);

  SetsArgs sa;
  auto* cmd_sets = app.add_subcommand("sets", "ambient set construction and V(q) tables");
  cmd_sets->add_option("--kind", sa.kind)
      ->check(CLI::IsMember({"interval", "short", "beatty", "power"}));
  cmd_sets->add_option("--N", sa.N);
  cmd_sets->add_option("--M", sa.M);
  cmd_sets->add_option("--phi", sa.phi);
  cmd_sets->add_option("--alpha", sa.alpha);
  cmd_sets->add_option("--beta", sa.beta);
  cmd_sets->add_option("--c", sa.c);
  cmd_sets->add_option("--eps", sa.eps);
  cmd_sets->add_option("--d", sa.d);
  cmd_sets->add_option("--qmax", sa.qmax);
  cmd_sets->add_option("--k", sa.k, "tuple size for the tau_{3k} weight");

  LemmasArgs la;
  auto* cmd_lemmas = app.add_subcommand("lemmas", "lemma fuzz checks and sweeps");
  cmd_lemmas->add_option("--which", la.which)->check(CLI::Range(1u, 3u));
  cmd_lemmas->add_option("--instances", la.instances);
  cmd_lemmas->add_option("--c-list", la.c_list);
  cmd_lemmas->add_option("--h-list", la.h_list);
  cmd_lemmas->add_option("--q-list", la.q_list);
  cmd_lemmas->add_option("--u-list", la.u_list);
  cmd_lemmas->add_option("--K-list", la.K_list);
  cmd_lemmas->add_option("--m", la.m_par);
  cmd_lemmas->add_flag("--reference", la.reference, "also run the 256-bit reference");
  cmd_lemmas->add_option("--H", la.H2);
  cmd_lemmas->add_option("--N", la.N2);
  cmd_lemmas->add_option("--M", la.M2);
  cmd_lemmas->add_option("--Q", la.Q2);
  cmd_lemmas->add_option("--X", la.X2);
  cmd_lemmas->add_option("--alpha", la.alpha2);
  cmd_lemmas->add_option("--beta", la.beta2);
  cmd_lemmas->add_option("--gamma", la.gamma2);

  SearchArgs ea;
  auto* cmd_search = app.add_subcommand("search", "cluster search over an ambient set");
  cmd_search->add_option("--set", ea.set_kind)
      ->check(CLI::IsMember({"interval", "beatty", "power"}));
  cmd_search->add_option("--N", ea.N);
  cmd_search->add_option("--M", ea.M);
  cmd_search->add_option("--k", ea.k);
  cmd_search->add_option("--t", ea.t);
  cmd_search->add_option("--R", ea.R);
  cmd_search->add_option("--mode", ea.mode)
      ->check(CLI::IsMember({"all_n", "nu0_class", "weighted"}));
  cmd_search->add_option("--theta", ea.theta);
  cmd_search->add_option("--eps", ea.eps);
  cmd_search->add_option("--degree", ea.degree);
  cmd_search->add_option("--alpha", ea.alpha);
  cmd_search->add_option("--beta", ea.beta);
  cmd_search->add_option("--c", ea.c);

  std::vector<std::string> args;
  try {
    args = merge_config_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  std::vector<const char*> cargs;
  cargs.push_back(argv[0]);
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  // theta validation shared by the subcommands that take it
  if ((cmd_weights->parsed() && !(wa.theta > 0 && wa.theta < 0.75)) ||
      (cmd_search->parsed() && !(ea.theta > 0 && ea.theta < 0.75))) {
    std::cerr << "invalid theta: the sieve level requires 0 < theta < 3/4\n";
    return 1;
  }

  try {
    fs::create_directories(common.out_dir);
    Manifest manifest;
    // echo the effective arguments
    for (const auto& a : args) manifest.config["argv"].push_back(a);

    int rc = 0;
    std::string sub;
    if (cmd_tuples->parsed()) {
      sub = "tuples";
      rc = run_tuples(common, ta, manifest);
    } else if (cmd_mk->parsed()) {
      sub = "mk";
      if (cmd_mk->count("--k") && !cmd_mk->count("--kmax")) ma.kmax = ma.kmin;
      rc = run_mk(common, ma, manifest);
    } else if (cmd_weights->parsed()) {
      sub = "weights";
      rc = run_weights(common, wa, manifest);
    } else if (cmd_sets->parsed()) {
      sub = "sets";
      rc = run_sets(common, sa, manifest);
    } else if (cmd_lemmas->parsed()) {
      sub = "lemmas";
      rc = run_lemmas(common, la, manifest);
    } else if (cmd_search->parsed()) {
      sub = "search";
      rc = run_search(common, ea, manifest);
    }
    write_manifest(common, sub, manifest);
    return rc;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
