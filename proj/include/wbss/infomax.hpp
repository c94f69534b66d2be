#ifndef WBSS_INFOMAX_HPP
#define WBSS_INFOMAX_HPP

#include <utility>

#include "wbss/types.hpp"
#include "wbss/wavelet.hpp"

namespace wbss {

enum class InfomaxMode { Stochastic, Batch };

struct InfomaxParams {
  double mu = 2e-5;  // natural-gradient learning rate
  int max_epochs = 200;
  double conv_tol = 1e-6;  // relative Frobenius change per epoch
  InfomaxMode mode = InfomaxMode::Stochastic;
  std::uint64_t seed = 0;  // sample shuffling in stochastic mode
};

struct InfomaxTrace {
  std::vector<double> cost;        // entropy cost after each epoch (square B only)
  std::vector<double> rel_change;  // ||dB||_F / ||B||_F per epoch
  int epochs_run = 0;
  bool converged = false;
};

/// Score function for the tanh nonlinearity: phi(u) = -2 tanh(u), applied
/// elementwise.
template <typename Derived>
typename Derived::PlainObject score(const Eigen::MatrixBase<Derived>& u) {
  return (-2.0 * u.array().tanh()).matrix();
}

/// Output-entropy cost J = log|det B| + (1/T) sum_t sum_i log g'(u_i(t))
/// with u = B * data and g = tanh. Returns -infinity when |det B| collapses
/// below 1e-300.
double entropy_cost(const Matrix& b, const Matrix& data);

/// dJ/dB = (B^T)^{-1} + (1/T) sum_t phi(u_t) z_t^T.
Matrix gradient(const Matrix& b, const Matrix& data);

/// One natural-gradient step B' = B + mu [I + <phi(u) u^T>] B with the
/// moment averaged over the batch columns. No matrix inversion involved.
Matrix natural_gradient_step(const Matrix& b, const Eigen::Ref<const Matrix>& z_batch, double mu);

/// Natural-gradient refinement over the concatenated sub-band coefficients.
/// Stochastic mode visits samples one at a time in a per-epoch shuffled
/// order; batch mode takes one full-gradient step per epoch.
std::pair<SeparationMatrix, InfomaxTrace> run_infomax(const SeparationMatrix& b_initial,
                                                      const SubbandDecomposition& d,
                                                      const InfomaxParams& params);

/// Same refinement on an explicit sample matrix (space-domain switch).
std::pair<SeparationMatrix, InfomaxTrace> run_infomax(const SeparationMatrix& b_initial,
                                                      const Matrix& data,
                                                      const InfomaxParams& params);

struct MutualInformationEstimate {
  Matrix mi;                    // symmetric, zero diagonal, nats
  std::vector<bool> degenerate;  // per-channel constant-row flag
};

/// Histogram plug-in estimate of pairwise mutual information. Requires
/// T >= 10 * bins; a constant row is flagged and its entries report 0.
MutualInformationEstimate estimate_mutual_information(const SignalMatrix& y, int bins);

}  // namespace wbss

#endif  // WBSS_INFOMAX_HPP
