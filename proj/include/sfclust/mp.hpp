#ifndef SFCLUST_MP_HPP
#define SFCLUST_MP_HPP

// Thin RAII layer over MPFR: a round-to-nearest scalar (Real) for
// reference computations and a directed-rounding interval (Interval)
// for certified comparisons.  Fractional-part predicates, Beatty and
// fractional-power membership, continued fractions and the 256-bit
// exponential-sum reference all sit on top of these two types.

#include <mpfr.h>

#include <cstdint>

static_assert(sizeof(unsigned long) >= 8, "mpfr *_ui entry points must take 64-bit values");
#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "sfclust/errors.hpp"

namespace sfclust::mp {

using boost::multiprecision::cpp_int;

class Real {
public:
  explicit Real(mpfr_prec_t prec = 256) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
  Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_swap(x_, o.x_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
  ~Real() { mpfr_clear(x_); }

  static Real of(double v, mpfr_prec_t prec = 256) { Real r(prec); mpfr_set_d(r.x_, v, MPFR_RNDN); return r; }
  static Real of_u64(std::uint64_t v, mpfr_prec_t prec = 256) { Real r(prec); mpfr_set_ui(r.x_, v, MPFR_RNDN); return r; }
  static Real of_i64(std::int64_t v, mpfr_prec_t prec = 256) { Real r(prec); mpfr_set_si(r.x_, v, MPFR_RNDN); return r; }
  static Real of_str(const std::string& s, mpfr_prec_t prec = 256) {
    Real r(prec);
    if (mpfr_set_str(r.x_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw InvalidInput("mp::Real: unparsable numeric literal '" + s + "'");
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(x_) != 0; }
  int sign() const { return mpfr_sgn(x_); }
  int cmp(const Real& o) const { return mpfr_cmp(x_, o.x_); }

  mpfr_ptr raw() { return x_; }
  mpfr_srcptr raw() const { return x_; }

private:
  mpfr_t x_;
};

inline Real add(const Real& a, const Real& b) { Real r(std::max(a.prec(), b.prec())); mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline Real sub(const Real& a, const Real& b) { Real r(std::max(a.prec(), b.prec())); mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline Real mul(const Real& a, const Real& b) { Real r(std::max(a.prec(), b.prec())); mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline Real div(const Real& a, const Real& b) { Real r(std::max(a.prec(), b.prec())); mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline Real neg(const Real& a) { Real r(a.prec()); mpfr_neg(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real sqrt(const Real& a) { Real r(a.prec()); mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real log(const Real& a) { Real r(a.prec()); mpfr_log(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real exp(const Real& a) { Real r(a.prec()); mpfr_exp(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real frac(const Real& a) { Real r(a.prec()); mpfr_frac(r.raw(), a.raw(), MPFR_RNDN); return r; }

// x^c for x > 0 via mpfr_pow.
inline Real pow(const Real& x, const Real& c) {
  Real r(std::max(x.prec(), c.prec()));
  mpfr_pow(r.raw(), x.raw(), c.raw(), MPFR_RNDN);
  return r;
}

// cos(2*pi*t), sin(2*pi*t); t is reduced to [0,1) first so the trig
// argument stays small regardless of the phase magnitude.
inline std::pair<Real, Real> e_of(const Real& t) {
  mpfr_prec_t p = t.prec();
  Real f = frac(t);
  if (f.sign() < 0) { Real one = Real::of_u64(1, p); f = add(f, one); }
  Real tau(p);
  mpfr_const_pi(tau.raw(), MPFR_RNDN);
  mpfr_mul_2ui(tau.raw(), tau.raw(), 1, MPFR_RNDN);
  Real arg = mul(tau, f);
  Real c(p), s(p);
  mpfr_sin_cos(s.raw(), c.raw(), arg.raw(), MPFR_RNDN);
  return {c, s};
}

// ---------------------------------------------------------------------------
// Directed-rounding interval.  Invariant: lo <= hi, both finite.

class Interval {
public:
  explicit Interval(mpfr_prec_t prec = 256) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  Interval(const Interval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval(Interval&& o) noexcept {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  Interval& operator=(const Interval& o) {
    if (this != &o) {
      mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
      mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  Interval& operator=(Interval&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static Interval point(const Real& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set(r.lo_, v.raw(), MPFR_RNDD);
    mpfr_set(r.hi_, v.raw(), MPFR_RNDU);
    return r;
  }
  static Interval of(double v, mpfr_prec_t prec = 256) {
    Interval r(prec);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static Interval of_u64(std::uint64_t v, mpfr_prec_t prec = 256) {
    Interval r(prec);
    mpfr_set_ui(r.lo_, v, MPFR_RNDD);
    mpfr_set_ui(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static Interval of_i64(std::int64_t v, mpfr_prec_t prec = 256) {
    Interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static Interval of_str(const std::string& s, mpfr_prec_t prec = 256) {
    Interval r(prec);
    if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 ||
        mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU) != 0)
      throw InvalidInput("mp::Interval: unparsable numeric literal '" + s + "'");
    return r;
  }
  static Interval of_cpp_int(const cpp_int& v, mpfr_prec_t prec = 256) {
    return of_str(v.str(), prec);
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }

  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const { return 0.5 * (lo_d() + hi_d()); }
  double width_d() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double r = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return r;
  }

  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  // this < o for every pair of points in the two intervals
  bool certainly_lt(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
  bool certainly_le(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }
  bool certainly_gt(const Interval& o) const { return mpfr_cmp(lo_, o.hi_) > 0; }
  bool certainly_ge(const Interval& o) const { return mpfr_cmp(lo_, o.hi_) >= 0; }

private:
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
Interval div(const Interval& a, const Interval& b);
Interval mul_u64(const Interval& a, std::uint64_t n);
Interval sqrt(const Interval& a);
Interval log(const Interval& a);   // requires a certainly positive
Interval exp(const Interval& a);
Interval neg(const Interval& a);

// x^c for certainly-positive x, computed as exp(c log x).
Interval pow(const Interval& x, const Interval& c);

// floor(x) if both endpoints share it, nullopt when the interval
// straddles an integer (borderline).
std::optional<cpp_int> floor_exact(const Interval& x);

struct FracResult {
  Interval value;   // meaningful only when !borderline
  bool borderline;  // interval straddles an integer boundary
};
FracResult frac(const Interval& x);

// ---------------------------------------------------------------------------
// Tiny expression evaluator for irrational constants: integers, decimals,
// 'pi', 'e', sqrt(...), + - * / and parentheses.  Used for CLI parameters
// such as alpha = (1+sqrt(5))/2.
Interval eval_expr(const std::string& expr, mpfr_prec_t prec);
Real eval_expr_real(const std::string& expr, mpfr_prec_t prec);

}  // namespace sfclust::mp

#endif
