#include "wbss/infomax.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "wbss/rng.hpp"

namespace wbss {

namespace {

// log g'(u) = log(1 - tanh^2 u) = 2 (log 2 - |u| - log1p(exp(-2|u|))),
// stable for large |u|.
double log_gprime(double u) {
  const double a = std::abs(u);
  return 2.0 * (std::numbers::ln2 - a - std::log1p(std::exp(-2.0 * a)));
}

double log_abs_det(const Matrix& b) {
  const Eigen::PartialPivLU<Matrix> lu(b);
  double sum = 0.0;
  for (Index i = 0; i < b.rows(); ++i) {
    const double d = std::abs(lu.matrixLU()(i, i));
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(d);
  }
  return sum;
}

}  // namespace

double entropy_cost(const Matrix& b, const Matrix& data) {
  if (b.rows() != b.cols()) throw DataError("entropy_cost: B must be square");
  if (b.cols() != data.rows()) throw DataError("entropy_cost: dimension mismatch");
  const double logdet = log_abs_det(b);
  if (logdet < std::log(1e-300)) return -std::numeric_limits<double>::infinity();
  const Matrix u = b * data;
  double acc = 0.0;
  for (Index t = 0; t < u.cols(); ++t)
    for (Index i = 0; i < u.rows(); ++i) acc += log_gprime(u(i, t));
  return logdet + acc / static_cast<double>(u.cols());
}

Matrix gradient(const Matrix& b, const Matrix& data) {
  if (b.rows() != b.cols()) throw DataError("gradient: B must be square");
  if (b.cols() != data.rows()) throw DataError("gradient: dimension mismatch");
  const Eigen::PartialPivLU<Matrix> lu(b);
  if (!(std::abs(lu.determinant()) > 0.0)) throw NumericalError("infomax", "singular B");
  const Matrix binv_t = lu.inverse().transpose();
  const Matrix u = b * data;
  return binv_t + (score(u) * data.transpose()) / static_cast<double>(data.cols());
}

Matrix natural_gradient_step(const Matrix& b, const Eigen::Ref<const Matrix>& z_batch,
                             double mu) {
  const Matrix u = b * z_batch;
  const Matrix moment = (score(u) * u.transpose()) / static_cast<double>(u.cols());
  return b + mu * (Matrix::Identity(b.rows(), b.rows()) + moment) * b;
}

std::pair<SeparationMatrix, InfomaxTrace> run_infomax(const SeparationMatrix& b_initial,
                                                      const Matrix& data,
                                                      const InfomaxParams& params) {
  if (b_initial.cols() != data.rows()) throw DataError("run_infomax: dimension mismatch");
  if (!(params.mu > 0.0) || params.conv_tol < 0.0) throw DataError("run_infomax: bad parameters");
  const bool square = b_initial.rows() == b_initial.cols();
  const Index t = data.cols();

  Matrix b = b_initial.b();
  InfomaxTrace trace;
  std::vector<Index> order(static_cast<std::size_t>(t));
  std::iota(order.begin(), order.end(), Index(0));
  rng::Shuffler shuffler(params.seed);

  for (int epoch = 0; epoch < params.max_epochs; ++epoch) {
    const Matrix b_prev = b;
    if (params.mode == InfomaxMode::Batch) {
      b = natural_gradient_step(b, data, params.mu);
    } else {
      shuffler.shuffle(order);
      for (Index idx : order) b = natural_gradient_step(b, data.col(idx), params.mu);
    }
    const double rel = (b - b_prev).norm() / b_prev.norm();
    trace.rel_change.push_back(rel);
    if (square) trace.cost.push_back(entropy_cost(b, data));
    ++trace.epochs_run;
    if (rel < params.conv_tol) {
      trace.converged = true;
      break;
    }
  }
  return {SeparationMatrix(std::move(b)), std::move(trace)};
}

std::pair<SeparationMatrix, InfomaxTrace> run_infomax(const SeparationMatrix& b_initial,
                                                      const SubbandDecomposition& d,
                                                      const InfomaxParams& params) {
  return run_infomax(b_initial, concat_bands(d), params);
}

MutualInformationEstimate estimate_mutual_information(const SignalMatrix& y, int bins) {
  if (bins < 2) throw DataError("estimate_mutual_information: need bins >= 2");
  const Index n = y.channels();
  const Index t = y.samples();
  if (t < 10 * static_cast<Index>(bins))
    throw DataError("estimate_mutual_information: need T >= 10 * bins");

  // Per-channel bin indices; a zero-range channel is degenerate.
  std::vector<std::vector<int>> idx(static_cast<std::size_t>(n));
  std::vector<bool> degenerate(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    const double lo = y.data().row(i).minCoeff();
    const double hi = y.data().row(i).maxCoeff();
    if (!(hi > lo)) {
      degenerate[static_cast<std::size_t>(i)] = true;
      continue;
    }
    auto& v = idx[static_cast<std::size_t>(i)];
    v.resize(static_cast<std::size_t>(t));
    const double scale = bins / (hi - lo);
    for (Index s = 0; s < t; ++s)
      v[static_cast<std::size_t>(s)] =
          std::min(bins - 1, static_cast<int>((y.data()(i, s) - lo) * scale));
  }

  MutualInformationEstimate out;
  out.mi = Matrix::Zero(n, n);
  out.degenerate = degenerate;
  std::vector<double> joint(static_cast<std::size_t>(bins) * bins);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (degenerate[static_cast<std::size_t>(i)] || degenerate[static_cast<std::size_t>(j)])
        continue;
      std::fill(joint.begin(), joint.end(), 0.0);
      std::vector<double> pi(static_cast<std::size_t>(bins), 0.0);
      std::vector<double> pj(static_cast<std::size_t>(bins), 0.0);
      const auto& vi = idx[static_cast<std::size_t>(i)];
      const auto& vj = idx[static_cast<std::size_t>(j)];
      const double w = 1.0 / static_cast<double>(t);
      for (Index s = 0; s < t; ++s) {
        const int a = vi[static_cast<std::size_t>(s)];
        const int b = vj[static_cast<std::size_t>(s)];
        joint[static_cast<std::size_t>(a) * bins + b] += w;
        pi[static_cast<std::size_t>(a)] += w;
        pj[static_cast<std::size_t>(b)] += w;
      }
      double mi = 0.0;
      for (int a = 0; a < bins; ++a)
        for (int b = 0; b < bins; ++b) {
          const double p = joint[static_cast<std::size_t>(a) * bins + b];
          if (p > 0.0)
            mi += p * std::log(p / (pi[static_cast<std::size_t>(a)] *
                                    pj[static_cast<std::size_t>(b)]));
        }
      out.mi(i, j) = out.mi(j, i) = std::max(0.0, mi);
    }
  }
  return out;
}

}  // namespace wbss
