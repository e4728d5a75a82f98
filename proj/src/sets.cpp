#include "sfclust/sets.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "sfclust/arith.hpp"
#include "sfclust/errors.hpp"

namespace sfclust::sets {

namespace {

double frac01(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;
  return f;
}

// tri-state certified comparison helpers
enum class Tri { yes, no, unknown };

// is f in (0, len]?  f is a frac-part enclosure (f.lo >= 0).
Tri in_left_open(const mp::Interval& f, const mp::Interval& len) {
  bool gt0 = f.certainly_positive();
  if (gt0 && f.certainly_le(len)) return Tri::yes;
  if (f.certainly_gt(len)) return Tri::no;
  if (!gt0) {
    // true value may be 0 (excluded) or slightly above (likely included)
    return Tri::unknown;
  }
  return Tri::unknown;
}

struct BeattyCtx {
  mp::Interval gamma;  // 1/alpha
  mp::Interval left;   // gamma*beta - gamma (interval left endpoint)
};

BeattyCtx beatty_ctx(const std::string& alpha_expr, const std::string& beta_expr,
                     mpfr_prec_t prec) {
  mp::Interval alpha = mp::eval_expr(alpha_expr, prec);
  mp::Interval beta = mp::eval_expr(beta_expr, prec);
  mp::Interval gamma = mp::div(mp::Interval::of_u64(1, prec), alpha);
  mp::Interval left = mp::sub(mp::mul(gamma, beta), gamma);
  return BeattyCtx{gamma, left};
}

// membership of n at a given precision; unknown means borderline
Tri beatty_member(std::uint64_t n, const BeattyCtx& ctx) {
  mp::Interval x = mp::mul_u64(ctx.gamma, n);
  auto f = mp::frac(mp::sub(x, ctx.left));
  if (f.borderline) return Tri::unknown;
  return in_left_open(f.value, ctx.gamma);
}

struct PowerCtx {
  mp::Interval beta;
  mp::Interval c;
  mp::Interval delta;
};

Tri power_member(std::uint64_t n, const PowerCtx& ctx, mpfr_prec_t prec) {
  mp::Interval x = mp::pow(mp::Interval::of_u64(n, prec), ctx.c);
  auto f = mp::frac(mp::sub(x, ctx.beta));
  if (f.borderline) return Tri::unknown;
  if (f.value.certainly_lt(ctx.delta)) return Tri::yes;
  if (f.value.certainly_ge(ctx.delta)) return Tri::no;
  return Tri::unknown;
}

// per-escalation-level context cache
template <class Ctx, class Make>
const Ctx& level_ctx(std::vector<std::unique_ptr<Ctx>>& cache, int level, Make&& make) {
  if (static_cast<int>(cache.size()) <= level) cache.resize(level + 1);
  if (!cache[level]) cache[level] = std::make_unique<Ctx>(make());
  return *cache[level];
}

}  // namespace

std::uint64_t IndexedSet::size() const {
  return static_cast<std::uint64_t>(std::count(members.begin(), members.end(), true));
}

IndexedSet build_set(SetKind kind, const SetParams& params, std::uint64_t N,
                     std::uint64_t M, const BuildOptions& opts) {
  if (N < 2) throw InvalidInput("build_set: N >= 2 required");
  IndexedSet A;
  A.kind = kind;
  A.N = N;
  A.params = params;

  switch (kind) {
    case SetKind::interval: {
      if (M > N) A.warnings.push_back("interval: M > N outside theorem range");
      A.M = M;
      A.members.assign(M, true);
      A.Y = static_cast<double>(M);
      break;
    }
    case SetKind::short_interval: {
      auto p = std::get<ShortIntervalParams>(params);
      if (!(p.phi > 7.0 / 12.0 && p.phi < 1.0))
        A.warnings.push_back("short_interval: phi outside (7/12, 1)");
      double psi = p.phi - (p.phi < 0.6 ? 11.0 / 20.0 : 0.5) - 0.01;
      if (psi <= 0) A.warnings.push_back("short_interval: implied psi <= 0 at eps=0.01");
      A.M = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(N), p.phi))) + 1;
      A.members.assign(A.M, true);
      A.Y = static_cast<double>(A.M);
      break;
    }
    case SetKind::beatty: {
      auto p = std::get<BeattyParams>(params);
      A.M = M;
      A.members.assign(M, false);
      mp::Interval alpha = mp::eval_expr(p.alpha_expr, opts.precision);
      if (!alpha.certainly_gt(mp::Interval::of_u64(1, opts.precision)))
        A.warnings.push_back("beatty: alpha <= 1 outside theorem range");
      std::vector<std::unique_ptr<BeattyCtx>> ctxs;
      for (std::uint64_t n = N; n < N + M; ++n) {
        Tri t = Tri::unknown;
        mpfr_prec_t prec = opts.precision;
        for (int esc = 0; esc <= opts.max_doublings && t == Tri::unknown; ++esc) {
          const BeattyCtx& ctx = level_ctx(ctxs, esc, [&] {
            return beatty_ctx(p.alpha_expr, p.beta_expr, prec);
          });
          t = beatty_member(n, ctx);
          prec *= 2;
        }
        if (t == Tri::unknown)
          ++A.borderline;
        else
          A.members[n - N] = (t == Tri::yes);
      }
      // Y = gamma * N
      mp::Interval gamma = mp::div(mp::Interval::of_u64(1, opts.precision), alpha);
      A.Y = mp::mul_u64(gamma, N).mid_d();

      if (p.cross_check) {
        // direct floor-enumeration oracle over the same window
        std::vector<bool> oracle(M, false);
        mp::Interval beta = mp::eval_expr(p.beta_expr, opts.precision);
        // m range covering [N, N+M)
        mp::Interval mlo =
            mp::div(mp::sub(mp::Interval::of_u64(N, opts.precision), beta), alpha);
        mp::Interval mhi = mp::div(
            mp::sub(mp::Interval::of_u64(N + M, opts.precision), beta), alpha);
        auto lo_f = mp::floor_exact(mlo);
        auto hi_f = mp::floor_exact(mhi);
        if (!lo_f || !hi_f)
          throw PrecisionExhausted("build_set(beatty): cross-check m-range not certifiable");
        std::int64_t m_lo = static_cast<std::int64_t>(*lo_f) - 2;
        std::int64_t m_hi = static_cast<std::int64_t>(*hi_f) + 2;
        for (std::int64_t m = m_lo; m <= m_hi; ++m) {
          mp::Interval v = mp::add(
              mp::mul(alpha, mp::Interval::of_i64(m, opts.precision)), beta);
          auto fl = mp::floor_exact(v);
          if (!fl)
            throw PrecisionExhausted("build_set(beatty): cross-check floor not certifiable");
          if (*fl >= N && *fl < N + M) oracle[static_cast<std::uint64_t>(*fl) - N] = true;
        }
        for (std::uint64_t i = 0; i < M; ++i) {
          if (oracle[i] != A.members[i])
            throw InternalError("build_set(beatty): certified membership disagrees with "
                                "floor enumeration at n = " + std::to_string(N + i));
        }
      }
      break;
    }
    case SetKind::power: {
      auto p = std::get<PowerParams>(params);
      if (!(p.c > 8.0 / 9.0 && p.c < 1.0))
        A.warnings.push_back("power: c outside (8/9, 1)");
      A.M = M;
      A.members.assign(M, false);
      double delta = p.delta_override > 0.0
                         ? p.delta_override
                         : std::pow(static_cast<double>(N), -1.0 + p.c + p.epsilon);
      A.delta = delta;
      if (delta >= 1.0) {
        A.members.assign(M, true);
        A.Y = opts.Y_override > 0 ? opts.Y_override : static_cast<double>(M);
        break;
      }
      // beta as double for the fast path; the certified path uses the
      // full-precision value
      double beta_d = mp::eval_expr(p.beta_expr, 64).mid_d();
      std::vector<std::unique_ptr<PowerCtx>> ctxs;
      for (std::uint64_t n = N; n < N + M; ++n) {
        double y = std::pow(static_cast<double>(n), p.c);
        double margin = 128.0 * (std::abs(y) + 1.0) * 2.3e-16;
        double f = frac01(y - beta_d);
        bool decided = false;
        if (f > margin && f < delta - margin) {
          A.members[n - N] = true;
          decided = true;
        } else if (f > delta + margin && f < 1.0 - margin) {
          decided = true;
        }
        if (!decided) {
          Tri t = Tri::unknown;
          mpfr_prec_t prec = opts.precision;
          for (int esc = 0; esc <= opts.max_doublings && t == Tri::unknown; ++esc) {
            const PowerCtx& ctx = level_ctx(ctxs, esc, [&] {
              return PowerCtx{mp::eval_expr(p.beta_expr, prec),
                              mp::Interval::of(p.c, prec),
                              mp::Interval::of(delta, prec)};
            });
            t = power_member(n, ctx, prec);
            prec *= 2;
          }
          if (t == Tri::unknown)
            ++A.borderline;
          else
            A.members[n - N] = (t == Tri::yes);
        }
      }
      A.Y = std::pow(static_cast<double>(N), p.c + p.epsilon);
      break;
    }
  }
  if (opts.Y_override > 0) A.Y = opts.Y_override;
  return A;
}

double equidist_V(const IndexedSet& A, std::uint64_t q) {
  if (q < 1) throw InvalidInput("equidist_V: q >= 1 required");
  std::vector<std::uint64_t> cnt(q, 0);
  for (std::uint64_t i = 0; i < A.M; ++i)
    if (A.members[i]) ++cnt[(A.N + i) % q];
  double expect = A.Y / static_cast<double>(q);
  double best = 0.0;
  for (std::uint64_t a = 0; a < q; ++a)
    best = std::max(best, std::abs(static_cast<double>(cnt[a]) - expect));
  return best;
}

EquidistReport weighted_equidist(const IndexedSet& A, std::uint64_t d,
                                 std::uint64_t q_max, unsigned k, double eps) {
  if (d < 1) throw InvalidInput("weighted_equidist: d >= 1 required");
  EquidistReport rep;
  rep.q_max = q_max;
  auto tables = arith::mult_tables(std::max<std::uint64_t>(q_max, 2));
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    if (std::gcd(q, d) != 1) continue;
    if (tables.mu_at(q) == 0) continue;
    double tau = static_cast<double>(tables.tau_k(3 * k, q));
    double v = equidist_V(A, d * q);
    rep.V[q] = v;
    rep.weighted_lhs += tau * v;
  }
  double logN = std::log(static_cast<double>(A.N));
  rep.rhs_scale = A.Y * std::pow(logN, -(static_cast<double>(k) + eps)) /
                  static_cast<double>(d);
  return rep;
}

}  // namespace sfclust::sets
