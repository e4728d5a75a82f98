#include "sfclust/mp.hpp"

#include <algorithm>
#include <cctype>

namespace sfclust::mp {

namespace {
mpfr_prec_t pmax(const Interval& a, const Interval& b) {
  return std::max(a.prec(), b.prec());
}
}  // namespace

Interval add(const Interval& a, const Interval& b) {
  Interval r(pmax(a, b));
  mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

Interval sub(const Interval& a, const Interval& b) {
  Interval r(pmax(a, b));
  mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
  mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
  return r;
}

Interval neg(const Interval& a) {
  Interval r(a.prec());
  mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
  mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
  return r;
}

Interval mul(const Interval& a, const Interval& b) {
  // min/max over the four endpoint products, each with the rounding
  // direction of the endpoint being produced.
  Interval r(pmax(a, b));
  mpfr_t t;
  mpfr_init2(t, r.prec());

  mpfr_mul(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_mul(t, a.lo(), b.hi(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  mpfr_mul(t, a.hi(), b.lo(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  mpfr_mul(t, a.hi(), b.hi(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);

  mpfr_mul(r.hi(), a.lo(), b.lo(), MPFR_RNDU);
  mpfr_mul(t, a.lo(), b.hi(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_mul(t, a.hi(), b.lo(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_mul(t, a.hi(), b.hi(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);

  mpfr_clear(t);
  return r;
}

Interval div(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw InternalError("mp::div: divisor interval contains zero");
  Interval r(pmax(a, b));
  mpfr_t t;
  mpfr_init2(t, r.prec());

  mpfr_div(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_div(t, a.lo(), b.hi(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  mpfr_div(t, a.hi(), b.lo(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  mpfr_div(t, a.hi(), b.hi(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);

  mpfr_div(r.hi(), a.lo(), b.lo(), MPFR_RNDU);
  mpfr_div(t, a.lo(), b.hi(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_div(t, a.hi(), b.lo(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_div(t, a.hi(), b.hi(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);

  mpfr_clear(t);
  return r;
}

Interval mul_u64(const Interval& a, std::uint64_t n) {
  Interval r(a.prec());
  mpfr_mul_ui(r.lo(), a.lo(), n, MPFR_RNDD);
  mpfr_mul_ui(r.hi(), a.hi(), n, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo()) < 0) throw InternalError("mp::sqrt: negative interval endpoint");
  Interval r(a.prec());
  mpfr_sqrt(r.lo(), a.lo(), MPFR_RNDD);
  mpfr_sqrt(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (!a.certainly_positive()) throw InternalError("mp::log: interval not certainly positive");
  Interval r(a.prec());
  mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
  mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.prec());
  mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
  mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

Interval pow(const Interval& x, const Interval& c) {
  return exp(mul(c, log(x)));
}

std::optional<cpp_int> floor_exact(const Interval& x) {
  mpfr_t flo, fhi;
  mpfr_init2(flo, x.prec());
  mpfr_init2(fhi, x.prec());
  mpfr_floor(flo, x.lo());
  mpfr_floor(fhi, x.hi());
  std::optional<cpp_int> result;
  if (mpfr_cmp(flo, fhi) == 0) {
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, 0, flo, MPFR_RNDN);
    std::string digits(s);
    mpfr_free_str(s);
    // mpfr_get_str returns mantissa digits with implied decimal point
    // before them; reconstruct the integer.
    bool negative = !digits.empty() && digits[0] == '-';
    if (negative) digits.erase(digits.begin());
    std::string intpart;
    if (e <= 0) {
      intpart = "0";
    } else {
      while (static_cast<mpfr_exp_t>(digits.size()) < e) digits.push_back('0');
      intpart = digits.substr(0, static_cast<std::size_t>(e));
    }
    cpp_int v(intpart);
    if (negative) v = -v;
    result = v;
  }
  mpfr_clear(flo);
  mpfr_clear(fhi);
  return result;
}

FracResult frac(const Interval& x) {
  FracResult out{Interval(x.prec()), false};
  auto fl = floor_exact(x);
  if (!fl) {
    out.borderline = true;
    return out;
  }
  Interval f = Interval::of_cpp_int(*fl, x.prec());
  out.value = sub(x, f);
  // Clamp against outward rounding drift at the [0,1) boundary.
  if (mpfr_sgn(out.value.lo()) < 0) mpfr_set_zero(out.value.lo(), 1);
  return out;
}

// ---------------------------------------------------------------------------
// Expression evaluator.

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  mpfr_prec_t prec;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw InvalidInput("expression '" + s + "': " + msg + " at position " + std::to_string(pos));
  }

  Interval parse_expr() {
    Interval v = parse_term();
    for (;;) {
      if (eat('+'))
        v = add(v, parse_term());
      else if (eat('-'))
        v = sub(v, parse_term());
      else
        return v;
    }
  }

  Interval parse_term() {
    Interval v = parse_factor();
    for (;;) {
      if (eat('*'))
        v = mul(v, parse_factor());
      else if (eat('/'))
        v = div(v, parse_factor());
      else
        return v;
    }
  }

  Interval parse_factor() {
    skip_ws();
    if (eat('-')) return neg(parse_factor());
    if (eat('(')) {
      Interval v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "sqrt") {
        if (!eat('(')) fail("expected '(' after sqrt");
        Interval v = parse_expr();
        if (!eat(')')) fail("expected ')'");
        return sqrt(v);
      }
      if (name == "pi") {
        Interval v(prec);
        mpfr_const_pi(v.lo(), MPFR_RNDD);
        mpfr_const_pi(v.hi(), MPFR_RNDU);
        return v;
      }
      if (name == "e") {
        Interval one = Interval::of_u64(1, prec);
        return exp(one);
      }
      if (name == "phi") {
        // (1+sqrt(5))/2
        Interval five = Interval::of_u64(5, prec);
        Interval one = Interval::of_u64(1, prec);
        Interval two = Interval::of_u64(2, prec);
        return div(add(one, sqrt(five)), two);
      }
      fail("unknown constant '" + name + "'");
    }
    // number literal
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
      ++pos;
    }
    if (pos == start) fail("expected a number");
    return Interval::of_str(s.substr(start, pos - start), prec);
  }
};

}  // namespace

Interval eval_expr(const std::string& expr, mpfr_prec_t prec) {
  Parser p{expr, 0, prec};
  Interval v = p.parse_expr();
  p.skip_ws();
  if (p.pos != expr.size()) p.fail("trailing characters");
  return v;
}

Real eval_expr_real(const std::string& expr, mpfr_prec_t prec) {
  // Evaluate at extra precision and take the midpoint.
  Interval v = eval_expr(expr, prec + 32);
  Real r(prec);
  mpfr_add(r.raw(), v.lo(), v.hi(), MPFR_RNDN);
  mpfr_div_2ui(r.raw(), r.raw(), 1, MPFR_RNDN);
  return r;
}

}  // namespace sfclust::mp
