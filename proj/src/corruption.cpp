#include "wbss/corruption.hpp"

#include <cmath>

#include "wbss/rng.hpp"

namespace wbss {

GaussianNoiseResult add_gaussian_noise(const SignalMatrix& x, double snr_db, std::uint64_t seed) {
  if (!std::isfinite(snr_db)) throw DataError("add_gaussian_noise: snr_db must be finite");
  const Index n = x.channels();
  const Index t = x.samples();
  Matrix out = x.data();
  std::vector<bool> zero_variance(static_cast<std::size_t>(n), false);
  const double factor = std::pow(10.0, -snr_db / 10.0);
  for (Index i = 0; i < n; ++i) {
    const Eigen::RowVectorXd c = out.row(i).array() - out.row(i).mean();
    const double var = c.squaredNorm() / static_cast<double>(t);
    if (!(var > 0.0)) {
      zero_variance[static_cast<std::size_t>(i)] = true;
      continue;
    }
    const double sigma = std::sqrt(var * factor);
    for (Index s = 0; s < t; ++s)
      out(i, s) += sigma * rng::gaussian(seed, static_cast<std::uint64_t>(i),
                                         static_cast<std::uint64_t>(s));
  }
  return {SignalMatrix(std::move(out)), std::move(zero_variance)};
}

ImagePlane add_salt_pepper(const ImagePlane& img, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0))
    throw DataError("add_salt_pepper: density must lie in [0, 1]");
  std::vector<std::uint8_t> px = img.pixels();
  // Stream 0 decides corruption, stream 1 picks salt vs pepper.
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (rng::uniform01(seed, 0, i) < density)
      px[i] = rng::uniform01(seed, 1, i) < 0.5 ? 0 : 255;
  }
  return ImagePlane(img.width(), img.height(), std::move(px));
}

}  // namespace wbss
