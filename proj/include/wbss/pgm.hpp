#ifndef WBSS_PGM_HPP
#define WBSS_PGM_HPP

#include <filesystem>

#include "wbss/types.hpp"

namespace wbss {

/// Reads a binary PGM ("P5", maxval 255). Comments and arbitrary whitespace
/// in the header are accepted.
ImagePlane read_pgm(const std::filesystem::path& path);

/// Writes a binary PGM ("P5", maxval 255). Round-trips bit-exactly through
/// read_pgm.
void write_pgm(const std::filesystem::path& path, const ImagePlane& img);

}  // namespace wbss

#endif  // WBSS_PGM_HPP
