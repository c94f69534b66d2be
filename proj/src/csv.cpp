#include "wbss/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace wbss {

Matrix read_csv_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open matrix file: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
      } catch (const std::exception&) {
        throw DataError("bad number '" + cell + "' in " + path.string());
      }
    }
    if (!rows.empty() && row.size() != rows[0].size())
      throw DataError("ragged rows in " + path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows[0].empty()) throw DataError("empty matrix file: " + path.string());
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  if (!m.allFinite()) throw DataError("non-finite values in " + path.string());
  return m;
}

void write_csv_matrix(const std::filesystem::path& path, const Eigen::Ref<const Matrix>& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write matrix file: " + path.string());
  char buf[64];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << buf << (j + 1 < m.cols() ? "," : "");
    }
    out << "\n";
  }
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace wbss
