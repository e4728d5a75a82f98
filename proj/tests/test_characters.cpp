#include "doctest.h"

#include <complex>
#include <numeric>
#include <random>

#include "sfclust/arith.hpp"
#include "sfclust/characters.hpp"

using namespace sfclust;
using expsum::characters_mod;

TEST_CASE("q=1 has the all-ones character") {
  auto chis = characters_mod(1);
  REQUIRE(chis.size() == 1);
  for (std::uint64_t n : {0ull, 1ull, 7ull})
    CHECK(chis[0](n) == std::complex<double>{1.0, 0.0});
}

TEST_CASE("q=4 has two characters and chi(3) = -1 for the nonprincipal one") {
  auto chis = characters_mod(4);
  REQUIRE(chis.size() == 2);
  int nonprincipal = chis[0].principal() ? 1 : 0;
  CHECK(chis[1 - nonprincipal].principal());
  CHECK(chis[nonprincipal](3).real() == doctest::Approx(-1.0));
  CHECK(std::abs(chis[nonprincipal](2)) == 0.0);
}

TEST_CASE("q=5 characters take fourth-root values and sum to zero") {
  auto chis = characters_mod(5);
  REQUIRE(chis.size() == 4);
  for (const auto& chi : chis) {
    for (std::uint64_t n = 1; n <= 4; ++n) {
      auto a = chi.angle(n);
      REQUIRE(a.has_value());
      CHECK(4 % a->second == 0);  // angle denominator divides 4
    }
    if (!chi.principal()) {
      std::complex<double> s{0, 0};
      for (std::uint64_t n = 1; n <= 4; ++n) s += chi(n);
      CHECK(std::abs(s) < 1e-12);
    }
  }
}

TEST_CASE("character count, multiplicativity and orthogonality for q <= 200") {
  std::mt19937_64 rng(42);
  for (std::uint64_t q = 1; q <= 200; ++q) {
    auto chis = characters_mod(q);
    REQUIRE(chis.size() == arith::euler_phi_u64(q));

    // first orthogonality: sum over a period vanishes for nonprincipal chi
    for (const auto& chi : chis) {
      std::complex<double> s{0, 0};
      for (std::uint64_t n = 1; n <= q; ++n) s += chi(n);
      if (chi.principal())
        CHECK(std::abs(s - std::complex<double>{static_cast<double>(
                               arith::euler_phi_u64(q))}) < 1e-9);
      else
        CHECK(std::abs(s) < 1e-9);
    }

    // complete multiplicativity on random pairs
    std::uniform_int_distribution<std::uint64_t> dist(0, 3 * q);
    for (int t = 0; t < 50; ++t) {
      std::uint64_t n = dist(rng), m = dist(rng);
      for (const auto& chi : {chis.front(), chis.back()}) {
        auto lhs = chi(n * m);
        auto rhs = chi(n) * chi(m);
        CHECK(std::abs(lhs - rhs) < 1e-12);
      }
    }
  }
}

TEST_CASE("second orthogonality separates residues") {
  for (std::uint64_t q : {8ull, 12ull, 45ull, 97ull}) {
    auto chis = characters_mod(q);
    double phi = static_cast<double>(arith::euler_phi_u64(q));
    for (std::uint64_t n = 0; n < q; ++n) {
      for (std::uint64_t m = 0; m < q; ++m) {
        std::complex<double> s{0, 0};
        for (const auto& chi : chis) s += chi(n) * std::conj(chi(m));
        double expect =
            (n % q == m % q && std::gcd(n, q) == 1) ? phi : 0.0;
        CHECK(std::abs(s - std::complex<double>{expect}) < 1e-9);
      }
    }
  }
}

TEST_CASE("powers of two use the (-1, 5) decomposition") {
  auto chis = characters_mod(16);
  REQUIRE(chis.size() == 8);
  // chi(15) = chi(-1) must be +-1 for every character
  for (const auto& chi : chis) {
    auto v = chi(15);
    CHECK(std::abs(std::abs(v.real()) - 1.0) < 1e-12);
    CHECK(std::abs(v.imag()) < 1e-12);
  }
}
