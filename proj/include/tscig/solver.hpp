#pragma once

#include <filesystem>
#include <vector>

#include "tscig/block_matrix.hpp"

namespace tscig {

/// Sparse-group lasso weights: alpha * lambda on every off-diagonal entry,
/// (1 - alpha) * lambda on the Frobenius norm of every off-diagonal block.
struct PenaltyConfig {
  double lambda = 0.0;
  double alpha = 1.0;

  void validate() const;
};

struct AdmmConfig {
  double rho = 2.0;
  int max_iter = 500;
  double eps_abs = 1e-6;
  double eps_rel = 1e-5;
  /// Doubles/halves rho when one residual exceeds the other by 10x.
  bool adaptive_rho = false;

  void validate() const;
};

struct IterationTrace {
  int iteration = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double rho = 0.0;
  double objective = 0.0;
};

struct SolveResult {
  BlockSymMatrix omega;  // positive definite iterate
  BlockSymMatrix w;      // splitting iterate; carries exact zeros
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
  double final_rho = 0.0;
  bool converged = false;
  std::vector<IterationTrace> trace;  // filled only when requested
};

/// Minimizes -ln|Omega| + tr(S Omega) + P(Omega) over Omega > 0 by ADMM on the
/// split Omega = W. Each iteration is a log-det proximal step in Omega, a
/// sparse-group proximal step in W and a scaled dual ascent step in U.
///
/// Stops when ||Omega - W||_F <= dim*eps_abs + eps_rel*max(||Omega||_F, ||W||_F)
/// and rho*||W - W_prev||_F <= dim*eps_abs + eps_rel*rho*||U||_F. Running out of
/// iterations is not an error; `converged` is false in that case.
SolveResult admm_solve(const BlockSymMatrix& sigma_hat, const PenaltyConfig& penalty,
                       const AdmmConfig& cfg, bool record_trace = false);

/// argmin_X tr(S X) - ln|X| + (rho/2)||X - a||_F^2.
///
/// With rho*a - S = V D V^T the minimizer is V diag(g(D)) V^T where
/// g(d) = (d + sqrt(d^2 + 4 rho)) / (2 rho), the positive root of
/// rho*g^2 - d*g - 1 = 0.
BlockSymMatrix prox_logdet(const BlockSymMatrix& a, const BlockSymMatrix& sigma_hat, double rho);

/// Proximal map of kappa1*||V^-||_1 + kappa2*sum_{i!=j}||V^(ij)||_F.
///
/// Diagonal entries pass through. Off-diagonal entries of diagonal blocks are
/// soft-thresholded by kappa1. Each off-diagonal block is soft-thresholded by
/// kappa1 and then scaled by max(0, 1 - kappa2/||block||_F).
BlockSymMatrix prox_sparse_group(const BlockSymMatrix& v, double kappa1, double kappa2);

double soft_threshold(double x, double kappa) noexcept;

/// alpha*lambda*||Omega^-||_1 + (1-alpha)*lambda*sum_{j!=k}||Omega^(jk)||_F.
/// Both sums run over ordered index pairs (each symmetric pair counts twice).
double sparse_group_penalty(const BlockSymMatrix& omega, const PenaltyConfig& penalty);

/// Penalized negative pseudo log-likelihood. Throws Error(Domain) unless
/// omega is positive definite.
double objective(const BlockSymMatrix& omega, const BlockSymMatrix& sigma_hat,
                 const PenaltyConfig& penalty);

/// u + (omega - w).
BlockSymMatrix dual_update(const BlockSymMatrix& u, const BlockSymMatrix& omega,
                           const BlockSymMatrix& w);

/// iteration,primal_residual,dual_residual,rho,objective
void write_trace_csv(const std::vector<IterationTrace>& trace, const std::filesystem::path& path);

}  // namespace tscig
