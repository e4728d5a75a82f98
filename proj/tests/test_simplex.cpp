#include "doctest.h"

#include <cmath>
#include <random>

#include "sfclust/simplex.hpp"

using namespace sfclust;
using simplex::cpp_rational;
using simplex::Exponents;
using simplex::SimplexPolynomial;

#include "oracles.hpp"

using sfclust::test_oracles::mc_dirichlet;

namespace {

SimplexPolynomial one_minus_t() {
  SimplexPolynomial f(1);
  f.add_term({0}, 1);
  f.add_term({1}, -1);
  return f;
}

}  // namespace

TEST_CASE("dirichlet_integral closed forms") {
  CHECK(simplex::dirichlet_integral({0, 0}, 0, 2) == cpp_rational(1, 2));
  CHECK(simplex::dirichlet_integral({1, 1}, 0, 2) == cpp_rational(1, 24));
  CHECK(simplex::dirichlet_integral({0}, 0, 1) == 1);
  CHECK(simplex::dirichlet_integral({2, 0, 1}, 3, 3) == cpp_rational(2 * 6, 362880));
}

TEST_CASE("dirichlet_integral matches Monte-Carlo within 3 standard errors") {
  std::mt19937_64 rng(987654321);
  std::uniform_int_distribution<unsigned> kdist(1, 4);
  int checked = 0;
  while (checked < 50) {
    unsigned k = kdist(rng);
    std::uniform_int_distribution<unsigned> edist(0, 6);
    Exponents alpha(k, 0);
    unsigned budget = 6;
    for (unsigned i = 0; i < k; ++i) {
      std::uniform_int_distribution<unsigned> d(0, budget);
      alpha[i] = d(rng);
      budget -= alpha[i];
    }
    unsigned beta = std::uniform_int_distribution<unsigned>(0, budget)(rng);
    auto exact = static_cast<double>(simplex::dirichlet_integral(alpha, beta, k));
    auto [mean, se] = mc_dirichlet(alpha, beta, k, 1000000, rng);
    CAPTURE(k);
    CAPTURE(beta);
    CHECK(std::abs(mean - exact) <= 3.0 * se + 1e-12);
    ++checked;
  }
}

TEST_CASE("compute_I examples") {
  CHECK(simplex::compute_I(one_minus_t()) == cpp_rational(1, 3));

  SimplexPolynomial one1(1);
  one1.add_term({0}, 1);
  CHECK(simplex::compute_I(one1) == 1);

  SimplexPolynomial one2(2);
  one2.add_term({0, 0}, 1);
  CHECK(simplex::compute_I(one2) == cpp_rational(1, 2));
  CHECK(simplex::compute_I(one2) == simplex::dirichlet_integral({0, 0}, 0, 2));
}

TEST_CASE("compute_J examples") {
  CHECK(simplex::compute_J(one_minus_t(), 1) == cpp_rational(1, 4));

  SimplexPolynomial one1(1);
  one1.add_term({0}, 1);
  CHECK(simplex::compute_J(one1, 1) == 1);

  SimplexPolynomial one2(2);
  one2.add_term({0, 0}, 1);
  CHECK(simplex::compute_J(one2, 1) == cpp_rational(1, 3));
  CHECK(simplex::compute_J(one2, 2) == cpp_rational(1, 3));
}

TEST_CASE("compute_I positive for nonzero F") {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    unsigned k = std::uniform_int_distribution<unsigned>(1, 3)(rng);
    SimplexPolynomial f(k);
    Exponents a(k, 0);
    bool nonzero = false;
    for (int t = 0; t < 4; ++t) {
      for (unsigned i = 0; i < k; ++i) a[i] = std::uniform_int_distribution<unsigned>(0, 2)(rng);
      int c = coeff(rng);
      if (c != 0) {
        f.add_term(a, c);
      }
    }
    nonzero = !f.zero();
    if (nonzero) CHECK(simplex::compute_I(f) > 0);
  }
}

TEST_CASE("polynomial algebra and evaluation") {
  auto f = one_minus_t();
  auto sq = f * f;
  CHECK(sq.terms().at({0}) == 1);
  CHECK(sq.terms().at({1}) == -2);
  CHECK(sq.terms().at({2}) == 1);
  CHECK(f.eval({0.25}) == doctest::Approx(0.75));
  CHECK(f.eval_on_simplex({1.25}) == 0.0);
  CHECK(f.eval_on_simplex({-0.1}) == 0.0);
}
