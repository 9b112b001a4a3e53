#include "tscig/evaluation.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "tscig/error.hpp"

namespace tscig {

DeviationReport covariance_deviation(const BlockSymMatrix& sigma_hat,
                                     const BlockSymMatrix& sigma_true, Index effective_n) {
  if (!sigma_hat.same_shape(sigma_true)) {
    throw Error(ErrorKind::Structural, "covariance_deviation needs matrices of equal block shape");
  }
  if (effective_n < 1) throw Error(ErrorKind::Parameter, "effective sample count must be positive");
  DeviationReport rep;
  rep.max_abs_deviation = (sigma_hat.matrix() - sigma_true.matrix()).cwiseAbs().maxCoeff();
  rep.effective_n = effective_n;
  rep.m = sigma_hat.block_size();
  rep.p = sigma_hat.blocks();
  rep.predicted_rate =
      std::sqrt(std::log(static_cast<double>(rep.m * rep.p)) / static_cast<double>(effective_n));
  return rep;
}

Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& f, const Eigen::MatrixXd& q) {
  if (f.rows() != f.cols() || q.rows() != f.rows() || q.cols() != f.cols()) {
    throw Error(ErrorKind::Structural, "Lyapunov operands must be square and conformable");
  }
  if (f.rows() > 0 && Eigen::EigenSolver<Eigen::MatrixXd>(f, false).eigenvalues().cwiseAbs().maxCoeff() >= 1.0) {
    throw Error(ErrorKind::Numerical, "Lyapunov operator is not Schur stable");
  }
  // G = sum_j F^j Q F^jT, accumulated in doubling steps: after k steps the
  // partial sum covers j < 2^k.
  Eigen::MatrixXd g = q;
  Eigen::MatrixXd a = f;
  for (int it = 0; it < 64; ++it) {
    const Eigen::MatrixXd inc = a * g * a.transpose();
    g += inc;
    if (!g.allFinite()) break;
    if (inc.cwiseAbs().maxCoeff() <= 1e-17 * g.cwiseAbs().maxCoeff()) return (g + g.transpose()) * 0.5;
    a = a * a;
  }
  throw Error(ErrorKind::Numerical, "discrete Lyapunov doubling did not converge (unstable F?)");
}

std::vector<Eigen::MatrixXd> autocovariances(const VarModel& model, Index max_lag) {
  const Index k = model.size();
  const Index q = model.order();
  if (max_lag < 0) throw Error(ErrorKind::Parameter, "max_lag must be nonnegative");
  const Eigen::MatrixXd f = companion_matrix(model);
  Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(q * k, q * k);
  noise.topLeftCorner(k, k).setIdentity();
  // state block (a, b) is E{x(t-a) x(t-b)^T} = R(b - a)
  const Eigen::MatrixXd gamma = solve_discrete_lyapunov(f, noise);

  std::vector<Eigen::MatrixXd> r;
  r.reserve(max_lag + 1);
  for (Index tau = 0; tau <= max_lag; ++tau) {
    if (tau < q) {
      r.push_back(gamma.block(0, tau * k, k, k));
    } else {
      Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, k);
      for (Index i = 1; i <= q; ++i) next += model.coeffs[i - 1] * r[tau - i];
      r.push_back(std::move(next));
    }
  }
  return r;
}

BlockSymMatrix true_lagged_covariance(std::span<const VarModel> models, Index lag) {
  if (lag < 0) throw Error(ErrorKind::InvalidLag, "lag must be nonnegative");
  const Index m = lag + 1;
  Index p = 0;
  for (const auto& model : models) p += model.size();
  if (p == 0) throw Error(ErrorKind::Parameter, "no models given");

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m * p, m * p);
  Index offset = 0;
  for (const auto& model : models) {
    const Index k = model.size();
    const auto r = autocovariances(model, lag);
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < k; ++j) {
        for (Index a = 0; a < m; ++a) {
          for (Index b = 0; b < m; ++b) {
            // E{x_i(t-a) x_j(t-b)} = [R(b - a)]_ij, R(-tau) = R(tau)^T
            const double v = b >= a ? r[b - a](i, j) : r[a - b](j, i);
            cov((offset + i) * m + a, (offset + j) * m + b) = v;
          }
        }
      }
    }
    offset += k;
  }
  return BlockSymMatrix::symmetrized(cov, m);
}

}  // namespace tscig
