#include "wbss/jad.hpp"

#include <cmath>

namespace wbss {

CovarianceSet subband_covariances(const SubbandDecomposition& d, bool skip_first) {
  CovarianceSet set;
  for (std::size_t i = skip_first ? 1 : 0; i < d.bands.size(); ++i) {
    const Matrix& band = d.bands[i];
    if (band.cols() < 1) throw DataError("subband_covariances: empty band");
    Matrix r = (band * band.transpose()) / static_cast<double>(band.cols());
    r = 0.5 * (r + r.transpose()).eval();
    set.mats.push_back(std::move(r));
    set.band_ids.push_back(static_cast<int>(i));
  }
  if (set.mats.empty()) throw DataError("subband_covariances: no bands");
  return set;
}

double off_criterion(const CovarianceSet& set, const Matrix& q) {
  double off = 0.0;
  for (const Matrix& m : set.mats) {
    const Matrix d = q.transpose() * m * q;
    off += d.squaredNorm() - d.diagonal().squaredNorm();
  }
  return off;
}

JadResult joint_diagonalize(const CovarianceSet& set, double tol, int max_sweeps) {
  if (set.mats.empty()) throw DataError("joint_diagonalize: empty set");
  const Index k = set.mats[0].rows();
  if (k < 2) throw DataError("joint_diagonalize: need k >= 2");
  for (const Matrix& m : set.mats) {
    if (m.rows() != k || m.cols() != k) throw DataError("joint_diagonalize: size mismatch");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw DataError("joint_diagonalize: matrix not symmetric");
  }

  std::vector<Matrix> mats = set.mats;
  JadResult result;
  result.q = Matrix::Identity(k, k);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_sin = 0.0;
    for (Index p = 0; p < k - 1; ++p) {
      for (Index q = p + 1; q < k; ++q) {
        // 2x2 accumulation over the set.
        double g00 = 0.0, g01 = 0.0, g11 = 0.0;
        for (const Matrix& m : mats) {
          const double hp = m(p, p) - m(q, q);
          const double hq = 2.0 * m(p, q);
          g00 += hp * hp;
          g01 += hp * hq;
          g11 += hq * hq;
        }
        const double delta = std::hypot(g00 - g11, 2.0 * g01);
        if (!(delta > 1e-14 * (std::abs(g00) + std::abs(g11) + 1e-300))) continue;
        const double lmax = 0.5 * ((g00 + g11) + delta);
        // Principal eigenvector, taking the better-conditioned expression.
        double x = lmax - g11, y = g01;
        if (std::abs(x) < std::abs(lmax - g00)) {
          x = g01;
          y = lmax - g00;
          const double n = std::hypot(x, y);
          x /= n;
          y /= n;
        } else {
          const double n = std::hypot(x, y);
          x /= n;
          y /= n;
        }
        if (x < 0.0) {
          x = -x;
          y = -y;
        }
        const double c = std::sqrt(0.5 * (1.0 + x));
        const double s = y / (2.0 * c);
        max_sin = std::max(max_sin, std::abs(s));
        if (s == 0.0) continue;
        // Rotate every matrix in the (p,q) plane: M <- R^T M R.
        for (Matrix& m : mats) {
          const Vector mp = m.col(p), mq = m.col(q);
          m.col(p) = c * mp + s * mq;
          m.col(q) = -s * mp + c * mq;
          const Eigen::RowVectorXd rp = m.row(p), rq = m.row(q);
          m.row(p) = c * rp + s * rq;
          m.row(q) = -s * rp + c * rq;
        }
        const Vector qp = result.q.col(p), qq = result.q.col(q);
        result.q.col(p) = c * qp + s * qq;
        result.q.col(q) = -s * qp + c * qq;
      }
    }
    ++result.sweeps;
    result.off_per_sweep.push_back(off_criterion(set, result.q));
    if (max_sin < tol) {
      result.converged = true;
      break;
    }
  }
  result.off_final = off_criterion(set, result.q);
  return result;
}

SeparationMatrix initial_separation(const Matrix& q, const Matrix& w) {
  if (q.rows() != q.cols() || q.rows() != w.rows())
    throw DataError("initial_separation: dimension mismatch");
  return SeparationMatrix(q.transpose() * w);
}

}  // namespace wbss
