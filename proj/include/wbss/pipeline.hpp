#ifndef WBSS_PIPELINE_HPP
#define WBSS_PIPELINE_HPP

#include <map>
#include <optional>
#include <string>

#include "wbss/infomax.hpp"
#include "wbss/jad.hpp"
#include "wbss/metrics.hpp"
#include "wbss/types.hpp"
#include "wbss/wavelet.hpp"
#include "wbss/whitening.hpp"

namespace wbss {

/// What the higher-order refinement consumes: the wavelet packet
/// coefficients of the centered observations (default) or the centered
/// observations themselves. Both carry identical second-order statistics
/// under the orthonormal transform.
enum class Stage2Domain { Wavelet, Space };

struct PipelineOptions {
  WaveletSpec wavelet;
  InfomaxParams infomax;
  Stage2Domain stage2 = Stage2Domain::Wavelet;
  Index k = 0;  // retained dimension; 0 means keep all channels
  bool jad_skip_first_band = false;
  PiVariant pi_variant = PiVariant::Amari;
};

/// Everything a run produces, for reporting and evaluation.
struct PipelineOutcome {
  SeparationResult separation;
  WhiteningResult whitening;
  double whiteness_residual = 0.0;  // ||cov(Z) - I||_max
  JadResult jad;
  InfomaxTrace trace;
  std::map<std::string, double> wall_clock_ms;
};

/// Runs the five-stage separation on observed mixtures X: whiten, wavelet
/// packet decomposition, sub-band covariances, joint diagonalization, and
/// natural-gradient refinement; outputs Y = B_final (X - mean). When the
/// true mixing (and optionally the true sources) are supplied, performance
/// indices and source matching are evaluated.
PipelineOutcome separate_signals(const SignalMatrix& x, const PipelineOptions& options,
                                 const MixingModel* true_mixing = nullptr,
                                 const SignalMatrix* true_sources = nullptr);

}  // namespace wbss

#endif  // WBSS_PIPELINE_HPP
