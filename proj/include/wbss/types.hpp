#ifndef WBSS_TYPES_HPP
#define WBSS_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wbss {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad command line. Maps to exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Bad input data: missing files, dimension mismatches, violated invariants.
// Maps to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage failed numerically. Maps to exit code 3.
class NumericalError : public Error {
 public:
  NumericalError(std::string stage, const std::string& what)
      : Error("numerical failure in " + stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// n channels x T samples of real-valued signals. Rows are channels
/// (sources, mixtures or separator outputs), columns are samples.
class SignalMatrix {
 public:
  SignalMatrix() = default;
  explicit SignalMatrix(Matrix data) : data_(std::move(data)) {
    if (data_.rows() < 1 || data_.cols() < 1)
      throw DataError("SignalMatrix: need at least one channel and one sample");
    if (!data_.allFinite()) throw DataError("SignalMatrix: non-finite entries");
  }

  const Matrix& data() const { return data_; }
  Index channels() const { return data_.rows(); }
  Index samples() const { return data_.cols(); }

 private:
  Matrix data_;
};

/// Square invertible mixing matrix A with X = A * S.
class MixingModel {
 public:
  explicit MixingModel(Matrix a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw DataError("MixingModel: A must be square");
    if (!a_.allFinite()) throw DataError("MixingModel: non-finite entries");
    const double det = a_.partialPivLu().determinant();
    if (!(std::abs(det) > 1e-12)) throw DataError("MixingModel: A is singular");
  }

  const Matrix& a() const { return a_; }
  Index size() const { return a_.rows(); }

 private:
  Matrix a_;
};

/// k x n separation matrix B with Y = B * X, k <= n, full row rank.
class SeparationMatrix {
 public:
  explicit SeparationMatrix(Matrix b) : b_(std::move(b)) {
    if (b_.rows() < 1 || b_.rows() > b_.cols())
      throw DataError("SeparationMatrix: need 1 <= rows <= cols");
    if (!b_.allFinite()) throw DataError("SeparationMatrix: non-finite entries");
    Eigen::JacobiSVD<Matrix> svd(b_);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-12 * std::max(1.0, sv(0))))
      throw DataError("SeparationMatrix: not full row rank");
  }

  const Matrix& b() const { return b_; }
  Index rows() const { return b_.rows(); }
  Index cols() const { return b_.cols(); }

 private:
  Matrix b_;
};

/// Permutation/sign assignment between recovered outputs and references.
/// permutation[i] = j matches output row i to reference row j; signs[i] is
/// the factor making that pair positively correlated; correlations[i] is the
/// |Pearson correlation| after the sign fix.
struct SourceMatch {
  std::vector<int> permutation;
  std::vector<int> signs;
  std::vector<double> correlations;
};

struct SeparationResult {
  SeparationMatrix b_initial;
  SeparationMatrix b_final;
  SignalMatrix outputs;
  std::optional<double> pi_initial;
  std::optional<double> pi_final;
  std::optional<SourceMatch> matching;
};

/// 8-bit grayscale image, row-major.
class ImagePlane {
 public:
  ImagePlane() = default;
  ImagePlane(int width, int height, std::vector<std::uint8_t> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width_ < 1 || height_ < 1) throw DataError("ImagePlane: empty image");
    if (pixels_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_))
      throw DataError("ImagePlane: pixel count does not match width x height");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }
  std::uint8_t at(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

}  // namespace wbss

#endif  // WBSS_TYPES_HPP
