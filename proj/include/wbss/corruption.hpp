#ifndef WBSS_CORRUPTION_HPP
#define WBSS_CORRUPTION_HPP

#include "wbss/types.hpp"

namespace wbss {

enum class NoiseKind { None, Gaussian, SaltPepper, Both };

/// Where corruption is applied. Default keeps each kind in its conventional
/// domain: Gaussian on the signal rows, salt-and-pepper on mixture pixels.
enum class NoiseTarget { Default, Signal, Pixel };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double snr_db = 15.0;
  double density = 0.4;
  std::uint64_t seed = 0;
  NoiseTarget target = NoiseTarget::Default;
};

struct GaussianNoiseResult {
  SignalMatrix x;
  std::vector<bool> zero_variance;  // channels returned unchanged
};

/// Adds iid zero-mean Gaussian noise per channel with variance
/// var(row) * 10^(-snr_db/10). Channels draw from independent substreams of
/// the counter-based generator, so output is bit-identical for a fixed seed
/// regardless of evaluation order.
GaussianNoiseResult add_gaussian_noise(const SignalMatrix& x, double snr_db, std::uint64_t seed);

/// Corrupts each pixel independently with probability density; a corrupted
/// pixel becomes 0 or 255 with equal probability.
ImagePlane add_salt_pepper(const ImagePlane& img, double density, std::uint64_t seed);

}  // namespace wbss

#endif  // WBSS_CORRUPTION_HPP
