#ifndef WBSS_METRICS_HPP
#define WBSS_METRICS_HPP

#include "wbss/types.hpp"

namespace wbss {

/// Combined system G = B * A of a separator against the known mixing.
class GlobalMatrix {
 public:
  explicit GlobalMatrix(Matrix g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols()) throw DataError("GlobalMatrix: must be square");
    if (!g_.allFinite()) throw DataError("GlobalMatrix: non-finite entries");
  }
  const Matrix& g() const { return g_; }
  Index size() const { return g_.rows(); }

 private:
  Matrix g_;
};

GlobalMatrix global_matrix(const SeparationMatrix& b, const MixingModel& a);

/// Paper: the one-sided row-normalized index
///   PI = 1/(k(k-1)) sum_i [ sum_j |G_ij| / max_j |G_ij| - 1 ].
/// Amari: the two-sided row+column form with normalization 1/(2k(k-1)).
/// Zero iff G is a scaled permutation; lower is better.
enum class PiVariant { Paper, Amari };

double performance_index(const GlobalMatrix& g, PiVariant variant);

/// Greedy assignment maximizing |Pearson correlation| per pair without
/// reuse (ties to the lowest index), with signs chosen so matched
/// correlations are positive.
SourceMatch match_sources(const SignalMatrix& y, const SignalMatrix& s);

/// Per-channel 10 log10(var(clean) / var(noisy - clean)); +infinity when the
/// channel carries no noise.
Vector snr_db(const SignalMatrix& clean, const SignalMatrix& noisy);

}  // namespace wbss

#endif  // WBSS_METRICS_HPP
