#ifndef SFCLUST_TESTS_ORACLES_HPP
#define SFCLUST_TESTS_ORACLES_HPP

// Test-only oracles, kept independent of the library's computation
// paths: Gauss-Legendre quadrature over the simplex for the variational
// matrices, and a Monte-Carlo integrator for Dirichlet integrals.

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "sfclust/simplex.hpp"
#include "sfclust/variational.hpp"

namespace sfclust::test_oracles {

struct Gauss {
  std::vector<double> x, w;  // nodes/weights on [0,1]
};

inline Gauss gauss_legendre01(int n) {
  Gauss g;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 1.0, p1 = x, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    g.x.push_back(0.5 * (x + 1.0));
    g.w.push_back(1.0 / ((1.0 - x * x) * dp * dp));
  }
  return g;
}

// integral over E_k via the cube map t_i = x_i * prod_{j<i}(1-x_j)
template <class F>
double simplex_quad(unsigned k, const Gauss& g, F&& f) {
  std::vector<std::size_t> idx(k, 0);
  std::vector<double> t(k);
  double total = 0.0;
  const std::size_t n = g.x.size();
  for (;;) {
    double w = 1.0, slack = 1.0, jac = 1.0;
    for (unsigned i = 0; i < k; ++i) {
      double xi = g.x[idx[i]];
      t[i] = xi * slack;
      w *= g.w[idx[i]];
      jac *= slack;
      slack *= (1.0 - xi);
    }
    total += w * jac * f(t);
    unsigned i = 0;
    while (i < k && ++idx[i] == n) {
      idx[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  return total;
}

inline double quad_I(const simplex::SimplexPolynomial& a,
                     const simplex::SimplexPolynomial& b, const Gauss& g) {
  return simplex_quad(a.k(), g,
                      [&](const std::vector<double>& t) { return a.eval(t) * b.eval(t); });
}

inline double quad_J(const simplex::SimplexPolynomial& a,
                     const simplex::SimplexPolynomial& b, unsigned m, const Gauss& g) {
  unsigned k = a.k();
  unsigned mi = m - 1;
  if (k == 1) {
    double ia = 0, ib = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      ia += g.w[i] * a.eval({g.x[i]});
      ib += g.w[i] * b.eval({g.x[i]});
    }
    return ia * ib;
  }
  return simplex_quad(k - 1, g, [&](const std::vector<double>& rest) {
    double slack = 1.0;
    for (double v : rest) slack -= v;
    double ia = 0, ib = 0;
    std::vector<double> t(k);
    unsigned j = 0;
    for (unsigned i = 0; i < k; ++i)
      if (i != mi) t[i] = rest[j++];
    for (std::size_t q = 0; q < g.x.size(); ++q) {
      t[mi] = g.x[q] * slack;
      ia += g.w[q] * slack * a.eval(t);
      ib += g.w[q] * slack * b.eval(t);
    }
    return ia * ib;
  });
}

// independent dense-quadrature Rayleigh maximization over the same basis
inline double oracle_rayleigh_max(unsigned k, unsigned degree) {
  auto basis = variational::symmetric_basis(k, degree);
  Gauss g = gauss_legendre01(static_cast<int>(2 * degree + k + 3));
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd A(n, n), B(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      double bij = quad_I(basis[i], basis[j], g);
      double aij = 0;
      for (unsigned m = 1; m <= k; ++m) aij += quad_J(basis[i], basis[j], m, g);
      A(i, j) = A(j, i) = aij;
      B(i, j) = B(j, i) = bij;
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, B);
  return solver.eigenvalues().maxCoeff();
}

// Monte-Carlo oracle for Dirichlet integrals: (mean, standard error)
inline std::pair<double, double> mc_dirichlet(const simplex::Exponents& alpha,
                                              unsigned beta, unsigned k,
                                              std::size_t samples,
                                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double sum = 0.0, sumsq = 0.0;
  std::vector<double> x(k);
  for (std::size_t s = 0; s < samples; ++s) {
    double tot = 0;
    for (unsigned i = 0; i < k; ++i) {
      x[i] = unif(rng);
      tot += x[i];
    }
    double v = 0.0;
    if (tot <= 1.0) {
      v = 1.0;
      for (unsigned i = 0; i < k; ++i)
        for (unsigned e = 0; e < alpha[i]; ++e) v *= x[i];
      for (unsigned e = 0; e < beta; ++e) v *= (1.0 - tot);
    }
    sum += v;
    sumsq += v * v;
  }
  double n = static_cast<double>(samples);
  double mean = sum / n;
  double var = (sumsq / n - mean * mean) / n;
  return {mean, std::sqrt(std::max(var, 0.0))};
}

}  // namespace sfclust::test_oracles

#endif
