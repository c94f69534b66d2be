#include "wbss/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wbss {

GlobalMatrix global_matrix(const SeparationMatrix& b, const MixingModel& a) {
  if (b.cols() != a.size()) throw DataError("global_matrix: dimension mismatch");
  return GlobalMatrix(b.b() * a.a());
}

namespace {

double sorted_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum;
}

// One-sided normalized spread of |G| along rows (or columns of G^T).
// Addends are summed in sorted order, which makes the index bit-identical
// under row and column permutations.
double side_sum(const Matrix& g_abs) {
  std::vector<double> row_terms(static_cast<std::size_t>(g_abs.rows()));
  std::vector<double> entries(static_cast<std::size_t>(g_abs.cols()));
  for (Index i = 0; i < g_abs.rows(); ++i) {
    const double rowmax = g_abs.row(i).maxCoeff();
    if (!(rowmax > 0.0)) throw DataError("performance_index: zero row or column");
    for (Index j = 0; j < g_abs.cols(); ++j) entries[static_cast<std::size_t>(j)] = g_abs(i, j);
    row_terms[static_cast<std::size_t>(i)] = sorted_sum(entries) / rowmax - 1.0;
  }
  return sorted_sum(row_terms);
}

}  // namespace

double performance_index(const GlobalMatrix& g, PiVariant variant) {
  const Index k = g.size();
  if (k < 2) throw DataError("performance_index: need k >= 2");
  const Matrix g_abs = g.g().cwiseAbs();
  const double denom = static_cast<double>(k) * static_cast<double>(k - 1);
  if (variant == PiVariant::Paper) return side_sum(g_abs) / denom;
  return (side_sum(g_abs) + side_sum(g_abs.transpose())) / (2.0 * denom);
}

namespace {

// Pearson correlation of two equally long rows; throws on a constant row.
double pearson(const Eigen::Ref<const Eigen::RowVectorXd>& a,
               const Eigen::Ref<const Eigen::RowVectorXd>& b) {
  const Eigen::RowVectorXd ac = a.array() - a.mean();
  const Eigen::RowVectorXd bc = b.array() - b.mean();
  const double na = ac.norm();
  const double nb = bc.norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw DataError("match_sources: constant row");
  return ac.dot(bc) / (na * nb);
}

}  // namespace

SourceMatch match_sources(const SignalMatrix& y, const SignalMatrix& s) {
  if (y.channels() != s.channels() || y.samples() != s.samples())
    throw DataError("match_sources: dimension mismatch");
  const Index k = y.channels();
  Matrix corr(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) corr(i, j) = pearson(y.data().row(i), s.data().row(j));

  SourceMatch match;
  match.permutation.assign(static_cast<std::size_t>(k), -1);
  match.signs.assign(static_cast<std::size_t>(k), 1);
  match.correlations.assign(static_cast<std::size_t>(k), 0.0);
  std::vector<bool> row_used(static_cast<std::size_t>(k), false);
  std::vector<bool> col_used(static_cast<std::size_t>(k), false);
  for (Index step = 0; step < k; ++step) {
    double best = -1.0;
    Index bi = -1, bj = -1;
    for (Index i = 0; i < k; ++i) {
      if (row_used[static_cast<std::size_t>(i)]) continue;
      for (Index j = 0; j < k; ++j) {
        if (col_used[static_cast<std::size_t>(j)]) continue;
        if (std::abs(corr(i, j)) > best) {
          best = std::abs(corr(i, j));
          bi = i;
          bj = j;
        }
      }
    }
    row_used[static_cast<std::size_t>(bi)] = true;
    col_used[static_cast<std::size_t>(bj)] = true;
    match.permutation[static_cast<std::size_t>(bi)] = static_cast<int>(bj);
    match.signs[static_cast<std::size_t>(bi)] = corr(bi, bj) >= 0.0 ? 1 : -1;
    match.correlations[static_cast<std::size_t>(bi)] = best;
  }
  return match;
}

Vector snr_db(const SignalMatrix& clean, const SignalMatrix& noisy) {
  if (clean.channels() != noisy.channels() || clean.samples() != noisy.samples())
    throw DataError("snr_db: dimension mismatch");
  const Index n = clean.channels();
  const double t = static_cast<double>(clean.samples());
  Vector out(n);
  for (Index i = 0; i < n; ++i) {
    const Eigen::RowVectorXd c = clean.data().row(i).array() - clean.data().row(i).mean();
    const Eigen::RowVectorXd e = noisy.data().row(i) - clean.data().row(i);
    const Eigen::RowVectorXd ec = e.array() - e.mean();
    const double signal_var = c.squaredNorm() / t;
    const double noise_var = ec.squaredNorm() / t;
    out(i) = noise_var > 0.0 ? 10.0 * std::log10(signal_var / noise_var)
                             : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace wbss
