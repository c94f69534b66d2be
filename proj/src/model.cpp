#include "wbss/model.hpp"

#include <cmath>

namespace wbss {

SignalMatrix images_to_signals(const std::vector<ImagePlane>& images) {
  if (images.size() < 2) throw DataError("images_to_signals: need at least 2 images");
  const int w = images[0].width();
  const int h = images[0].height();
  for (const auto& img : images) {
    if (img.width() != w || img.height() != h)
      throw DataError("images_to_signals: images differ in size");
  }
  const Index n = static_cast<Index>(images.size());
  const Index t = static_cast<Index>(w) * h;
  if (t < n) throw DataError("images_to_signals: fewer pixels than channels");
  Matrix data(n, t);
  for (Index i = 0; i < n; ++i) {
    const auto& px = images[static_cast<std::size_t>(i)].pixels();
    for (Index j = 0; j < t; ++j) data(i, j) = static_cast<double>(px[static_cast<std::size_t>(j)]);
  }
  return SignalMatrix(std::move(data));
}

double skewness(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  const double t = static_cast<double>(row.size());
  const double mean = row.mean();
  const Eigen::ArrayXd c = row.array() - mean;
  const double var = c.square().sum() / t;
  if (var <= 0.0) return 0.0;
  return (c.cube().sum() / t) / std::pow(var, 1.5);
}

std::vector<ImagePlane> signals_to_images(const SignalMatrix& y, int width, int height,
                                          bool sign_fix) {
  if (y.samples() != static_cast<Index>(width) * height)
    throw DataError("signals_to_images: sample count does not match width x height");
  std::vector<ImagePlane> images;
  images.reserve(static_cast<std::size_t>(y.channels()));
  for (Index i = 0; i < y.channels(); ++i) {
    Eigen::RowVectorXd row = y.data().row(i);
    if (sign_fix && skewness(row) < 0.0) row = -row;
    const double lo = row.minCoeff();
    const double hi = row.maxCoeff();
    std::vector<std::uint8_t> px(static_cast<std::size_t>(y.samples()));
    if (hi > lo) {
      const double scale = 255.0 / (hi - lo);
      for (Index j = 0; j < y.samples(); ++j)
        px[static_cast<std::size_t>(j)] =
            static_cast<std::uint8_t>(std::lround((row(j) - lo) * scale));
    }
    images.emplace_back(width, height, std::move(px));
  }
  return images;
}

SignalMatrix mix(const SignalMatrix& s, const MixingModel& a) {
  if (a.size() != s.channels()) throw DataError("mix: A size does not match channel count");
  return SignalMatrix(a.a() * s.data());
}

}  // namespace wbss
