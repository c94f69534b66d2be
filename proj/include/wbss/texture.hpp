#ifndef WBSS_TEXTURE_HPP
#define WBSS_TEXTURE_HPP

#include <span>

#include "wbss/types.hpp"

namespace wbss {

/// Deterministic grayscale test texture: a sparse Laplacian innovation field
/// (each site nonzero with probability `sparsity`) filtered circularly
/// (row-major) by the given kernel, then rescaled to [0, 255]. The kernel
/// shapes the spectrum; the sparse heavy-tailed innovations give the texture
/// the spiky marginal statistics of natural-image detail.
ImagePlane synthetic_texture(int width, int height, std::span<const double> kernel,
                             double sparsity, std::uint64_t seed);

/// The bundled demo pair: two smooth textures with close but distinct
/// spectral decay, derived from one seed.
std::vector<ImagePlane> demo_sources(int width, int height, std::uint64_t seed);

}  // namespace wbss

#endif  // WBSS_TEXTURE_HPP
