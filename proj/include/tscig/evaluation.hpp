#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tscig/block_matrix.hpp"
#include "tscig/synthdata.hpp"

namespace tscig {

struct DeviationReport {
  double max_abs_deviation = 0.0;  // max_kl |[S_hat - S_true]_kl|
  Index effective_n = 0;
  Index m = 0;
  Index p = 0;
  double predicted_rate = 0.0;  // sqrt(ln(m p) / n_eff)
};

/// Throws Error(Structural) if the two matrices differ in shape.
DeviationReport covariance_deviation(const BlockSymMatrix& sigma_hat,
                                     const BlockSymMatrix& sigma_true, Index effective_n);

/// Solves G = F G F^T + Q by the doubling iteration. F must be Schur stable.
Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& f, const Eigen::MatrixXd& q);

/// R(0), ..., R(max_lag) with R(tau) = E{x(t + tau) x(t)^T} for one stable VAR.
std::vector<Eigen::MatrixXd> autocovariances(const VarModel& model, Index max_lag);

/// Population covariance E{y(t) y(t)^T} of the lag-`lag` embedding of the
/// stacked community processes, in the same node-major layout as
/// build_lagged_embedding.
BlockSymMatrix true_lagged_covariance(std::span<const VarModel> models, Index lag);

}  // namespace tscig
