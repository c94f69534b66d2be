#ifndef WBSS_CSV_HPP
#define WBSS_CSV_HPP

#include <filesystem>

#include "wbss/types.hpp"

namespace wbss {

/// Reads a matrix from CSV: one row per line, comma-separated decimal values.
Matrix read_csv_matrix(const std::filesystem::path& path);

/// Writes a matrix as CSV with 17 significant digits, so a read-back
/// reproduces every double bit-exactly.
void write_csv_matrix(const std::filesystem::path& path, const Eigen::Ref<const Matrix>& m);

}  // namespace wbss

#endif  // WBSS_CSV_HPP
