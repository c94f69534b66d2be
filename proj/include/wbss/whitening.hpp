#ifndef WBSS_WHITENING_HPP
#define WBSS_WHITENING_HPP

#include <utility>

#include "wbss/types.hpp"

namespace wbss {

/// Second-order preprocessing: W = C^{-1/2} V^T from the eigendecomposition
/// R_xx = V C V^T of the observation covariance, so that cov(W(X - mean))
/// is the k x k identity.
struct WhiteningResult {
  Matrix w;            // k x n whitening matrix
  Matrix v;            // n x n orthonormal eigenvectors, columns
  Vector eigenvalues;  // descending
  Vector mean;         // removed channel means
  Index k = 0;         // retained dimension
};

/// Removes each row's sample mean; returns the centered signals and the
/// means needed to restore them.
std::pair<SignalMatrix, Vector> center(const SignalMatrix& x);

/// R = (1/T) X0 X0^T for zero-mean X0, symmetrized exactly.
Matrix covariance(const SignalMatrix& x0);

/// Eigendecomposition of a symmetric matrix: R = V diag(C) V^T with
/// eigenvalues descending and each eigenvector's largest-magnitude entry
/// positive. Rejects inputs with asymmetry beyond 1e-9 relative.
std::pair<Matrix, Vector> sym_eig(const Matrix& r);

/// W = diag(C[0..k))^{-1/2} (first k columns of V)^T. Throws NumericalError
/// when a retained eigenvalue falls below the rank guard
/// eps_eig = 1e-12 * C[0].
Matrix whitening_matrix(const Matrix& v, const Vector& c, Index k);

/// Full whitening of X at retained dimension k (k = n keeps all channels):
/// Z = W (X - mean) with cov(Z) = I_k.
std::pair<SignalMatrix, WhiteningResult> whiten(const SignalMatrix& x, Index k);

}  // namespace wbss

#endif  // WBSS_WHITENING_HPP
