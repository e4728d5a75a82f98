#include "sfclust/variational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "sfclust/errors.hpp"

namespace sfclust::variational {

using simplex::Exponents;

namespace {

void exponents_rec(unsigned k, unsigned pos, unsigned budget, Exponents& a,
                   std::vector<Exponents>& out) {
  if (pos == k) {
    out.push_back(a);
    return;
  }
  for (unsigned e = 0; e <= budget; ++e) {
    a[pos] = e;
    exponents_rec(k, pos + 1, budget - e, a, out);
  }
  a[pos] = 0;
}

}  // namespace

std::vector<SimplexPolynomial> monomial_basis(unsigned k, unsigned degree) {
  std::vector<Exponents> exps;
  Exponents a(k, 0);
  exponents_rec(k, 0, degree, a, exps);
  std::vector<SimplexPolynomial> basis;
  basis.reserve(exps.size());
  for (const auto& e : exps) {
    SimplexPolynomial p(k);
    p.add_term(e, 1);
    basis.push_back(std::move(p));
  }
  return basis;
}

namespace {

// partitions of n into at most k parts, each part listed descending
void partitions_rec(unsigned n, unsigned maxpart, unsigned k,
                    std::vector<unsigned>& cur,
                    std::vector<std::vector<unsigned>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  if (cur.size() == k) return;
  for (unsigned p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(n - p, p, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<SimplexPolynomial> symmetric_basis(unsigned k, unsigned degree) {
  std::vector<SimplexPolynomial> basis;
  for (unsigned d = 0; d <= degree; ++d) {
    std::vector<std::vector<unsigned>> parts;
    std::vector<unsigned> cur;
    partitions_rec(d, d == 0 ? 1 : d, k, cur, parts);
    for (const auto& lambda : parts) {
      // orbit sum: all distinct placements of the parts into k slots
      Exponents a(k, 0);
      std::copy(lambda.begin(), lambda.end(), a.begin());
      std::sort(a.begin(), a.end());
      SimplexPolynomial p(k);
      do {
        p.add_term(a, 1);
      } while (std::next_permutation(a.begin(), a.end()));
      basis.push_back(std::move(p));
    }
  }
  return basis;
}

VariationalResult mk_lower_bound(unsigned k, unsigned degree, bool symmetric) {
  if (k < 1) throw InvalidInput("mk_lower_bound: k >= 1 required");
  VariationalResult res;
  res.k = k;
  res.degree = degree;
  res.basis = symmetric ? symmetric_basis(k, degree) : monomial_basis(k, degree);
  const auto& basis = res.basis;
  const auto n = static_cast<Eigen::Index>(basis.size());

  // Exact rational Gram matrices, then one rounding to double.
  // For a symmetric basis, sum_m J^(m) = k * J^(1).
  Eigen::MatrixXd A(n, n), B(n, n);
  std::vector<std::vector<cpp_rational>> Aq(n, std::vector<cpp_rational>(n));
  std::vector<std::vector<cpp_rational>> Bq(n, std::vector<cpp_rational>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      cpp_rational bij = simplex::bilinear_I(basis[i], basis[j]);
      cpp_rational aij = 0;
      if (symmetric) {
        aij = cpp_rational(k) * simplex::bilinear_J(basis[i], basis[j], 1);
      } else {
        for (unsigned m = 1; m <= k; ++m)
          aij += simplex::bilinear_J(basis[i], basis[j], m);
      }
      Aq[i][j] = Aq[j][i] = aij;
      Bq[i][j] = Bq[j][i] = bij;
      A(i, j) = A(j, i) = static_cast<double>(aij);
      B(i, j) = B(j, i) = static_cast<double>(bij);
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(B);
  if (llt.info() != Eigen::Success)
    throw InternalError("mk_lower_bound: singular-B (basis linearly dependent)");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, B);
  if (solver.info() != Eigen::Success)
    throw InternalError("mk_lower_bound: eigen solve failed");
  Eigen::Index best = 0;
  solver.eigenvalues().maxCoeff(&best);
  res.eigen_estimate = solver.eigenvalues()(best);
  Eigen::VectorXd w = solver.eigenvectors().col(best);

  // Rationalize the eigenvector (dyadic, 2^-48 resolution after
  // normalizing to max |w_i| = 1) and re-evaluate the quotient exactly.
  double wmax = w.cwiseAbs().maxCoeff();
  if (wmax == 0.0) throw InternalError("mk_lower_bound: zero eigenvector");
  w /= wmax;
  const std::int64_t denom = std::int64_t{1} << 48;
  res.coefficients.resize(basis.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    auto num = static_cast<std::int64_t>(std::llround(w(i) * static_cast<double>(denom)));
    res.coefficients[i] = cpp_rational(num, denom);
  }

  cpp_rational I = 0, Jsum = 0;
  res.J.assign(k, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      cpp_rational cc = res.coefficients[i] * res.coefficients[j];
      if (cc == 0) continue;
      I += cc * Bq[i][j];
      Jsum += cc * Aq[i][j];
    }
  }
  if (I <= 0) throw InternalError("mk_lower_bound: rationalized F has I <= 0");
  // per-m values at the returned F (for the symmetric path each m is equal)
  if (symmetric) {
    cpp_rational Jm = Jsum / k;
    for (unsigned m = 0; m < k; ++m) res.J[m] = Jm;
  } else {
    for (unsigned m = 1; m <= k; ++m) {
      cpp_rational jm = 0;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          cpp_rational cc = res.coefficients[i] * res.coefficients[j];
          if (cc != 0) jm += cc * simplex::bilinear_J(basis[i], basis[j], m);
        }
      res.J[m - 1] = jm;
    }
  }
  res.I = I;
  res.mk_lower = static_cast<double>(Jsum / I);
  return res;
}

}  // namespace sfclust::variational
