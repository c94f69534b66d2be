#ifndef WBSS_WAVELET_HPP
#define WBSS_WAVELET_HPP

#include <vector>

#include "wbss/types.hpp"

namespace wbss {

enum class WaveletFamily { Haar, Daubechies4 };

/// Orthonormal wavelet packet settings. Boundary handling is periodic
/// (circular convolution), which keeps the filter bank exactly orthonormal
/// and the band lengths T / 2^L.
struct WaveletSpec {
  WaveletFamily family = WaveletFamily::Daubechies4;
  int depth = 2;  // packet levels L >= 1; requires T divisible by 2^L
};

/// Full packet tree of depth L: 2^L bands of size n x T/2^L, leaves ordered
/// by tree path (low/high recursively).
struct SubbandDecomposition {
  std::vector<Matrix> bands;
  WaveletSpec spec;
  Index original_samples = 0;

  Index band_count() const { return static_cast<Index>(bands.size()); }
};

SubbandDecomposition wavelet_packet_forward(const SignalMatrix& z, const WaveletSpec& spec);

/// Exact inverse of wavelet_packet_forward.
SignalMatrix wavelet_packet_inverse(const SubbandDecomposition& d);

/// Sub-band component i is the inverse transform with every band except i
/// zeroed; the components sum to the original signal.
std::vector<SignalMatrix> subband_components(const SubbandDecomposition& d);

/// Bands concatenated column-wise in band order (n x T).
Matrix concat_bands(const SubbandDecomposition& d);

}  // namespace wbss

#endif  // WBSS_WAVELET_HPP
