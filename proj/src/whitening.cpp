#include "wbss/whitening.hpp"

#include <cmath>

namespace wbss {

std::pair<SignalMatrix, Vector> center(const SignalMatrix& x) {
  const Vector mean = x.data().rowwise().mean();
  Matrix centered = x.data().colwise() - mean;
  return {SignalMatrix(std::move(centered)), mean};
}

Matrix covariance(const SignalMatrix& x0) {
  const Index t = x0.samples();
  if (t == 0) throw DataError("covariance: no samples");
  Matrix r = (x0.data() * x0.data().transpose()) / static_cast<double>(t);
  r = 0.5 * (r + r.transpose()).eval();
  return r;
}

std::pair<Matrix, Vector> sym_eig(const Matrix& r) {
  if (r.rows() != r.cols()) throw DataError("sym_eig: matrix not square");
  if (!r.allFinite()) throw DataError("sym_eig: non-finite entries");
  const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
  const double asym = (r - r.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale) throw DataError("sym_eig: input not symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(r);
  if (solver.info() != Eigen::Success)
    throw NumericalError("whitening", "eigendecomposition did not converge");

  const Index n = r.rows();
  Matrix v(n, n);
  Vector c(n);
  // Eigen returns ascending order; flip to descending.
  for (Index i = 0; i < n; ++i) {
    c(i) = solver.eigenvalues()(n - 1 - i);
    v.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  // Sign convention: largest-magnitude entry of each column positive.
  for (Index j = 0; j < n; ++j) {
    Index argmax = 0;
    v.col(j).cwiseAbs().maxCoeff(&argmax);
    if (v(argmax, j) < 0.0) v.col(j) = -v.col(j);
  }
  return {std::move(v), std::move(c)};
}

Matrix whitening_matrix(const Matrix& v, const Vector& c, Index k) {
  const Index n = v.rows();
  if (v.cols() != n || c.size() != n) throw DataError("whitening_matrix: inconsistent V, C");
  if (k < 1 || k > n) throw DataError("whitening_matrix: k out of range");
  const double eps_eig = 1e-12 * c(0);
  Matrix w(k, n);
  for (Index i = 0; i < k; ++i) {
    if (!(c(i) > eps_eig))
      throw NumericalError("whitening",
                           "covariance is numerically rank-deficient at retained dimension " +
                               std::to_string(k));
    w.row(i) = v.col(i).transpose() / std::sqrt(c(i));
  }
  return w;
}

std::pair<SignalMatrix, WhiteningResult> whiten(const SignalMatrix& x, Index k) {
  if (k < 1 || k > x.channels()) throw DataError("whiten: k out of range");
  auto [x0, mean] = center(x);
  const Matrix r = covariance(x0);
  auto [v, c] = sym_eig(r);
  Matrix w = whitening_matrix(v, c, k);
  SignalMatrix z(w * x0.data());
  WhiteningResult result{std::move(w), std::move(v), std::move(c), std::move(mean), k};
  return {std::move(z), std::move(result)};
}

}  // namespace wbss
