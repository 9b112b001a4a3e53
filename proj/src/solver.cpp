#include "tscig/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "tscig/error.hpp"

namespace tscig {

namespace {

struct LogdetStep {
  Eigen::MatrixXd omega;
  double logdet = 0.0;
};

LogdetStep logdet_prox(const Eigen::MatrixXd& a, const Eigen::MatrixXd& sigma, double rho) {
  Eigen::MatrixXd c = rho * a - sigma;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  if (eig.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigendecomposition of rho*a - S failed (dim " << c.rows()
        << ", max |entry| " << c.cwiseAbs().maxCoeff() << ", finite " << c.allFinite() << ")";
    throw Error(ErrorKind::Numerical, msg.str());
  }
  const Eigen::VectorXd& d = eig.eigenvalues();
  Eigen::VectorXd g(d.size());
  double logdet = 0.0;
  for (Index k = 0; k < d.size(); ++k) {
    const double disc = std::sqrt(d[k] * d[k] + 4.0 * rho);
    // the second form avoids cancellation for large negative d
    g[k] = d[k] >= 0.0 ? (d[k] + disc) / (2.0 * rho) : 2.0 / (disc - d[k]);
    logdet += std::log(g[k]);
  }
  const Eigen::MatrixXd& v = eig.eigenvectors();
  LogdetStep step;
  step.omega = v * g.asDiagonal() * v.transpose();
  step.omega = (step.omega + step.omega.transpose()) * 0.5;
  step.logdet = logdet;
  return step;
}

// Writes the proximal image of `v` into `out`; both symmetric (mp x mp).
void sparse_group_prox(const Eigen::MatrixXd& v, Index m, double kappa1, double kappa2,
                       Eigen::MatrixXd& out) {
  const Index dim = v.rows();
  const Index p = dim / m;
  out.resize(dim, dim);
  for (Index i = 0; i < p; ++i) {
    // diagonal block: lasso on off-diagonal entries only
    for (Index s = 0; s < m; ++s) {
      const Index col = i * m + s;
      out(col, col) = v(col, col);
      for (Index r = s + 1; r < m; ++r) {
        const Index row = i * m + r;
        const double val = soft_threshold(v(row, col), kappa1);
        out(row, col) = val;
        out(col, row) = val;
      }
    }
    for (Index j = i + 1; j < p; ++j) {
      auto dst = out.block(j * m, i * m, m, m);
      dst = v.block(j * m, i * m, m, m).unaryExpr(
          [kappa1](double x) { return soft_threshold(x, kappa1); });
      const double norm = dst.norm();
      if (norm <= kappa2) {
        dst.setZero();
      } else {
        dst *= 1.0 - kappa2 / norm;
      }
      out.block(i * m, j * m, m, m) = dst.transpose();
    }
  }
}

double penalty_value(const Eigen::MatrixXd& x, Index m, const PenaltyConfig& pen) {
  if (pen.lambda == 0.0) return 0.0;
  const Index p = x.rows() / m;
  const double l1 = x.cwiseAbs().sum() - x.diagonal().cwiseAbs().sum();
  double group = 0.0;
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) group += 2.0 * x.block(i * m, j * m, m, m).norm();
  }
  return pen.alpha * pen.lambda * l1 + (1.0 - pen.alpha) * pen.lambda * group;
}

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorKind::Parameter, "rho must be positive and finite");
  }
}

}  // namespace

void PenaltyConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::Parameter, "lambda must be a finite nonnegative number");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::Parameter, "alpha must lie in [0, 1]");
  }
}

void AdmmConfig::validate() const {
  check_rho(rho);
  if (max_iter < 1) throw Error(ErrorKind::Parameter, "max_iter must be positive");
  if (!(eps_abs > 0.0) || !(eps_rel > 0.0)) {
    throw Error(ErrorKind::Parameter, "stopping tolerances must be positive");
  }
}

double soft_threshold(double x, double kappa) noexcept {
  if (x > kappa) return x - kappa;
  if (x < -kappa) return x + kappa;
  return 0.0;
}

BlockSymMatrix prox_logdet(const BlockSymMatrix& a, const BlockSymMatrix& sigma_hat, double rho) {
  check_rho(rho);
  if (!a.same_shape(sigma_hat)) throw Error(ErrorKind::Structural, "prox_logdet shape mismatch");
  return BlockSymMatrix::symmetrized(logdet_prox(a.matrix(), sigma_hat.matrix(), rho).omega,
                                     a.block_size());
}

BlockSymMatrix prox_sparse_group(const BlockSymMatrix& v, double kappa1, double kappa2) {
  if (!(kappa1 >= 0.0) || !(kappa2 >= 0.0)) {
    throw Error(ErrorKind::Parameter, "thresholds must be nonnegative");
  }
  Eigen::MatrixXd out;
  sparse_group_prox(v.matrix(), v.block_size(), kappa1, kappa2, out);
  return BlockSymMatrix(std::move(out), v.block_size());
}

double sparse_group_penalty(const BlockSymMatrix& omega, const PenaltyConfig& penalty) {
  penalty.validate();
  return penalty_value(omega.matrix(), omega.block_size(), penalty);
}

double objective(const BlockSymMatrix& omega, const BlockSymMatrix& sigma_hat,
                 const PenaltyConfig& penalty) {
  penalty.validate();
  if (!omega.same_shape(sigma_hat)) throw Error(ErrorKind::Structural, "objective shape mismatch");
  Eigen::LLT<Eigen::MatrixXd> chol(omega.matrix());
  if (chol.info() != Eigen::Success) {
    throw Error(ErrorKind::Domain, "omega is not positive definite; log-determinant undefined");
  }
  const double logdet = 2.0 * chol.matrixLLT().diagonal().array().log().sum();
  const double trace = sigma_hat.matrix().cwiseProduct(omega.matrix()).sum();
  return -logdet + trace + penalty_value(omega.matrix(), omega.block_size(), penalty);
}

BlockSymMatrix dual_update(const BlockSymMatrix& u, const BlockSymMatrix& omega,
                           const BlockSymMatrix& w) {
  if (!u.same_shape(omega) || !u.same_shape(w)) {
    throw Error(ErrorKind::Structural, "dual_update shape mismatch");
  }
  return BlockSymMatrix(u.matrix() + (omega.matrix() - w.matrix()), u.block_size());
}

SolveResult admm_solve(const BlockSymMatrix& sigma_hat, const PenaltyConfig& penalty,
                       const AdmmConfig& cfg, bool record_trace) {
  penalty.validate();
  cfg.validate();
  const Index m = sigma_hat.block_size();
  const Index dim = sigma_hat.dim();
  const Eigen::MatrixXd& s = sigma_hat.matrix();
  const double lambda = penalty.lambda;
  const double alpha = penalty.alpha;

  Eigen::MatrixXd w = (s.diagonal().array() + 1e-8).inverse().matrix().asDiagonal();
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd w_next(dim, dim);
  LogdetStep step{w, 0.0};
  double rho = cfg.rho;
  const double sqrt_n = static_cast<double>(dim);  // sqrt of the entry count dim^2

  SolveResult result;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    step = logdet_prox(w - u, s, rho);
    sparse_group_prox(step.omega + u, m, alpha * lambda / rho, (1.0 - alpha) * lambda / rho,
                      w_next);
    u += step.omega - w_next;

    const double r = (step.omega - w_next).norm();
    const double d = rho * (w_next - w).norm();
    const double eps_pri = sqrt_n * cfg.eps_abs + cfg.eps_rel * std::max(step.omega.norm(), w_next.norm());
    const double eps_dual = sqrt_n * cfg.eps_abs + cfg.eps_rel * rho * u.norm();
    w.swap(w_next);

    result.iterations = it;
    result.primal_residual = r;
    result.dual_residual = d;
    if (record_trace) {
      const double obj = -step.logdet + s.cwiseProduct(step.omega).sum() +
                         penalty_value(step.omega, m, penalty);
      result.trace.push_back({it, r, d, rho, obj});
    }
    if (r <= eps_pri && d <= eps_dual) {
      result.converged = true;
      break;
    }
    if (cfg.adaptive_rho) {
      if (r > 10.0 * d) {
        rho *= 2.0;
        u *= 0.5;
      } else if (d > 10.0 * r) {
        rho *= 0.5;
        u *= 2.0;
      }
    }
  }

  result.final_rho = rho;
  result.omega = BlockSymMatrix::symmetrized(step.omega, m);
  result.w = BlockSymMatrix(std::move(w), m);
  result.objective = -step.logdet + s.cwiseProduct(step.omega).sum() +
                     penalty_value(step.omega, m, penalty);
  return result;
}

void write_trace_csv(const std::vector<IterationTrace>& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.precision(12);
  out << "iteration,primal_residual,dual_residual,rho,objective\n";
  for (const auto& row : trace) {
    out << row.iteration << ',' << row.primal_residual << ',' << row.dual_residual << ','
        << row.rho << ',' << row.objective << '\n';
  }
}

}  // namespace tscig
