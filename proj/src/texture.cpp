#include "wbss/texture.hpp"

#include <array>

#include "wbss/model.hpp"
#include "wbss/rng.hpp"

namespace wbss {

ImagePlane synthetic_texture(int width, int height, std::span<const double> kernel,
                             double sparsity, std::uint64_t seed) {
  if (width < 1 || height < 1) throw DataError("synthetic_texture: empty image");
  if (kernel.empty()) throw DataError("synthetic_texture: empty kernel");
  if (!(sparsity > 0.0 && sparsity <= 1.0))
    throw DataError("synthetic_texture: sparsity must lie in (0, 1]");
  const std::size_t t = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> e(t);
  for (std::size_t i = 0; i < t; ++i)
    e[i] = rng::uniform01(seed, 1, i) < sparsity ? rng::laplacian(seed, 0, i) : 0.0;
  Matrix row(1, static_cast<Index>(t));
  for (std::size_t i = 0; i < t; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < kernel.size(); ++k) acc += kernel[k] * e[(i + k) % t];
    row(0, static_cast<Index>(i)) = acc;
  }
  return signals_to_images(SignalMatrix(std::move(row)), width, height, false)[0];
}

namespace {

std::array<double, 8> geometric_kernel(double decay) {
  std::array<double, 8> kernel{};
  double g = 1.0;
  for (double& v : kernel) {
    v = g;
    g *= decay;
  }
  return kernel;
}

}  // namespace

std::vector<ImagePlane> demo_sources(int width, int height, std::uint64_t seed) {
  const auto k1 = geometric_kernel(0.9);
  const auto k2 = geometric_kernel(0.8);
  return {synthetic_texture(width, height, k1, 0.1, rng::splitmix64(seed ^ 0x1111)),
          synthetic_texture(width, height, k2, 0.1, rng::splitmix64(seed ^ 0x2222))};
}

}  // namespace wbss
