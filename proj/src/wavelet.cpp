#include "wbss/wavelet.hpp"

#include <array>
#include <span>

namespace wbss {

namespace {

// Orthonormal analysis pairs; the highpass is the quadrature mirror
// g[k] = (-1)^k h[N-1-k].
constexpr std::array<double, 2> kHaar = {0.70710678118654752, 0.70710678118654752};
constexpr std::array<double, 4> kDaubechies4 = {0.48296291314469025, 0.83651630373746899,
                                                0.22414386804185735, -0.12940952255092145};

std::span<const double> lowpass(WaveletFamily family) {
  return family == WaveletFamily::Haar ? std::span<const double>(kHaar)
                                       : std::span<const double>(kDaubechies4);
}

std::vector<double> highpass(std::span<const double> h) {
  std::vector<double> g(h.size());
  for (std::size_t k = 0; k < h.size(); ++k)
    g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[h.size() - 1 - k];
  return g;
}

// One analysis level on each row: out_low(i) = sum_k h[k] x[(2i+k) mod len].
void split_rows(const Matrix& in, std::span<const double> h, std::span<const double> g,
                Matrix& low, Matrix& high) {
  const Index len = in.cols();
  const Index half = len / 2;
  low.resize(in.rows(), half);
  high.resize(in.rows(), half);
  for (Index r = 0; r < in.rows(); ++r) {
    for (Index i = 0; i < half; ++i) {
      double a = 0.0, d = 0.0;
      for (std::size_t k = 0; k < h.size(); ++k) {
        const double x = in(r, (2 * i + static_cast<Index>(k)) % len);
        a += h[k] * x;
        d += g[k] * x;
      }
      low(r, i) = a;
      high(r, i) = d;
    }
  }
}

// Adjoint of split_rows; exact inverse because the periodized bank is
// orthonormal.
Matrix merge_rows(const Matrix& low, const Matrix& high, std::span<const double> h,
                  std::span<const double> g) {
  const Index half = low.cols();
  const Index len = 2 * half;
  Matrix out = Matrix::Zero(low.rows(), len);
  for (Index r = 0; r < low.rows(); ++r) {
    for (Index i = 0; i < half; ++i) {
      for (std::size_t k = 0; k < h.size(); ++k) {
        const Index j = (2 * i + static_cast<Index>(k)) % len;
        out(r, j) += h[k] * low(r, i) + g[k] * high(r, i);
      }
    }
  }
  return out;
}

void validate_spec(const WaveletSpec& spec, Index t) {
  if (spec.depth < 1) throw DataError("wavelet: depth must be >= 1");
  if (spec.depth > 30 || t % (Index(1) << spec.depth) != 0)
    throw DataError("wavelet: sample count not divisible by 2^depth");
}

}  // namespace

SubbandDecomposition wavelet_packet_forward(const SignalMatrix& z, const WaveletSpec& spec) {
  validate_spec(spec, z.samples());
  const auto h = lowpass(spec.family);
  const auto g = highpass(h);
  std::vector<Matrix> bands{z.data()};
  for (int level = 0; level < spec.depth; ++level) {
    std::vector<Matrix> next;
    next.reserve(bands.size() * 2);
    for (const Matrix& band : bands) {
      Matrix low, high;
      split_rows(band, h, g, low, high);
      next.push_back(std::move(low));
      next.push_back(std::move(high));
    }
    bands = std::move(next);
  }
  return SubbandDecomposition{std::move(bands), spec, z.samples()};
}

SignalMatrix wavelet_packet_inverse(const SubbandDecomposition& d) {
  if (d.bands.empty()) throw DataError("wavelet inverse: no bands");
  const Index m = d.band_count();
  if ((m & (m - 1)) != 0) throw DataError("wavelet inverse: band count not a power of two");
  const Index band_len = d.bands[0].cols();
  const Index rows = d.bands[0].rows();
  for (const Matrix& band : d.bands)
    if (band.cols() != band_len || band.rows() != rows)
      throw DataError("wavelet inverse: inconsistent band sizes");
  const auto h = lowpass(d.spec.family);
  const auto g = highpass(h);
  std::vector<Matrix> bands = d.bands;
  while (bands.size() > 1) {
    std::vector<Matrix> prev;
    prev.reserve(bands.size() / 2);
    for (std::size_t i = 0; i + 1 < bands.size(); i += 2)
      prev.push_back(merge_rows(bands[i], bands[i + 1], h, g));
    bands = std::move(prev);
  }
  return SignalMatrix(std::move(bands[0]));
}

std::vector<SignalMatrix> subband_components(const SubbandDecomposition& d) {
  std::vector<SignalMatrix> components;
  components.reserve(d.bands.size());
  for (std::size_t i = 0; i < d.bands.size(); ++i) {
    SubbandDecomposition solo = d;
    for (std::size_t j = 0; j < solo.bands.size(); ++j)
      if (j != i) solo.bands[j].setZero();
    components.push_back(wavelet_packet_inverse(solo));
  }
  return components;
}

Matrix concat_bands(const SubbandDecomposition& d) {
  if (d.bands.empty()) throw DataError("concat_bands: no bands");
  const Index rows = d.bands[0].rows();
  Index total = 0;
  for (const Matrix& band : d.bands) total += band.cols();
  Matrix out(rows, total);
  Index offset = 0;
  for (const Matrix& band : d.bands) {
    out.middleCols(offset, band.cols()) = band;
    offset += band.cols();
  }
  return out;
}

}  // namespace wbss
