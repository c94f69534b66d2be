#ifndef WBSS_JAD_HPP
#define WBSS_JAD_HPP

#include <vector>

#include "wbss/types.hpp"
#include "wbss/wavelet.hpp"

namespace wbss {

/// A set of symmetric k x k covariance matrices, one per sub-band.
struct CovarianceSet {
  std::vector<Matrix> mats;
  std::vector<int> band_ids;
};

struct JadResult {
  Matrix q;  // orthogonal joint diagonalizer
  double off_final = 0.0;
  int sweeps = 0;
  bool converged = false;
  std::vector<double> off_per_sweep;  // criterion after each sweep
};

/// Per-band covariances (1/T_i) band_i band_i^T, symmetrized. skip_first
/// drops band 1 from the set (all bands enter by default).
CovarianceSet subband_covariances(const SubbandDecomposition& d, bool skip_first = false);

/// Joint off-diagonality: sum over matrices of the squared off-diagonal
/// entries of Q^T M Q.
double off_criterion(const CovarianceSet& set, const Matrix& q);

/// Minimizes the off criterion by cyclic sweeps of closed-form Givens
/// rotations. For each index pair the optimal angle comes from the principal
/// eigenvector of G = sum_k h_k h_k^T with
/// h_k = (M_k[p,p] - M_k[q,q], 2 M_k[p,q]); a degenerate G (equal
/// eigenvalues) contributes no information and gets a zero rotation. Sweeps
/// stop when every |sin theta| in a full sweep is below tol.
JadResult joint_diagonalize(const CovarianceSet& set, double tol = 1e-8, int max_sweeps = 100);

/// B_initial = Q^T W.
SeparationMatrix initial_separation(const Matrix& q, const Matrix& w);

}  // namespace wbss

#endif  // WBSS_JAD_HPP
