#ifndef WBSS_TESTS_HELPERS_HPP
#define WBSS_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wbss/infomax.hpp"
#include "wbss/jad.hpp"
#include "wbss/rng.hpp"
#include "wbss/types.hpp"

namespace wbss::test {

inline Matrix uniform_matrix(Index rows, Index cols, std::uint64_t seed, double lo = -1.0,
                             double hi = 1.0) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = lo + (hi - lo) * rng::uniform01(seed, static_cast<std::uint64_t>(i),
                                                static_cast<std::uint64_t>(j));
  return m;
}

inline Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = rng::gaussian(seed, static_cast<std::uint64_t>(i),
                              static_cast<std::uint64_t>(j));
  return m;
}

inline Matrix laplacian_matrix(Index rows, Index cols, std::uint64_t seed) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = rng::laplacian(seed, static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(j));
  return m;
}

inline Matrix random_symmetric(Index n, std::uint64_t seed) {
  const Matrix m = uniform_matrix(n, n, seed);
  return 0.5 * (m + m.transpose());
}

/// Random square matrix redrawn until comfortably invertible.
inline Matrix random_invertible(Index n, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Matrix a = uniform_matrix(n, n, rng::mix(seed, 77, attempt));
    if (std::abs(a.determinant()) > 0.1) return a;
  }
}

inline Matrix rotation2(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

/// True when a = b up to column permutation and per-column sign.
inline bool equal_up_to_perm_sign(const Matrix& a, const Matrix& b, double tol) {
  const Index k = a.cols();
  std::vector<Index> perm(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::sort(perm.begin(), perm.end());
  do {
    bool all_ok = true;
    for (Index j = 0; j < k && all_ok; ++j) {
      const auto& col = b.col(perm[static_cast<std::size_t>(j)]);
      all_ok = (a.col(j) - col).cwiseAbs().maxCoeff() < tol ||
               (a.col(j) + col).cwiseAbs().maxCoeff() < tol;
    }
    if (all_ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Central finite differences of the entropy cost with respect to B.
inline Matrix fd_entropy_gradient(const Matrix& b, const Matrix& data, double h = 1e-6) {
  Matrix g(b.rows(), b.cols());
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      Matrix bp = b, bm = b;
      bp(i, j) += h;
      bm(i, j) -= h;
      g(i, j) = (entropy_cost(bp, data) - entropy_cost(bm, data)) / (2.0 * h);
    }
  return g;
}

/// Brute-force minimum of the 2x2 off criterion over rotations.
inline double grid_min_off(const CovarianceSet& set, double step = 1e-4) {
  double best = std::numeric_limits<double>::infinity();
  for (double theta = 0.0; theta < std::numbers::pi / 2.0; theta += step)
    best = std::min(best, off_criterion(set, rotation2(theta)));
  return best;
}

}  // namespace wbss::test

#endif  // WBSS_TESTS_HELPERS_HPP
