#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the code path it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace tscig::oracle {

using Eigen::Index;

/// Largest violation of the first-order optimality conditions of
///   -ln|X| + tr(S X) + a*l*||X^-||_1 + (1-a)*l*sum_{i!=j}||X^(ij)||_F
/// at X, with gradient S - X^{-1} from an LU inverse.
inline double kkt_residual(const Eigen::MatrixXd& s, const Eigen::MatrixXd& x, Index m,
                           double lambda, double alpha) {
  const Eigen::MatrixXd g = s - x.partialPivLu().inverse();
  const double l1 = alpha * lambda;
  const double lg = (1.0 - alpha) * lambda;
  const Index p = x.rows() / m;
  double worst = 0.0;
  auto sign = [](double v) { return v > 0.0 ? 1.0 : -1.0; };
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) {
      const Eigen::MatrixXd xb = x.block(i * m, j * m, m, m);
      const Eigen::MatrixXd gb = g.block(i * m, j * m, m, m);
      if (i == j) {
        for (Index r = 0; r < m; ++r) {
          for (Index c = 0; c < m; ++c) {
            double res;
            if (r == c) res = std::abs(gb(r, c));
            else if (xb(r, c) != 0.0) res = std::abs(gb(r, c) + l1 * sign(xb(r, c)));
            else res = std::max(0.0, std::abs(gb(r, c)) - l1);
            worst = std::max(worst, res);
          }
        }
        continue;
      }
      const double norm = xb.norm();
      if (norm == 0.0) {
        // need |z| <= 1 elementwise and ||h||_F <= 1 with G + l1 z + lg h = 0
        double rem = 0.0;
        for (Index r = 0; r < m; ++r) {
          for (Index c = 0; c < m; ++c) {
            const double e = std::max(0.0, std::abs(gb(r, c)) - l1);
            rem += e * e;
          }
        }
        worst = std::max(worst, std::max(0.0, std::sqrt(rem) - lg));
        continue;
      }
      for (Index r = 0; r < m; ++r) {
        for (Index c = 0; c < m; ++c) {
          double res;
          if (xb(r, c) != 0.0) {
            res = std::abs(gb(r, c) + l1 * sign(xb(r, c)) + lg * xb(r, c) / norm);
          } else {
            res = std::max(0.0, std::abs(gb(r, c)) - l1);
          }
          worst = std::max(worst, res);
        }
      }
    }
  }
  return worst;
}

/// Solves G = F G F^T + Q through the Kronecker system (I - F (x) F) vec G = vec Q.
inline Eigen::MatrixXd lyapunov_kronecker(const Eigen::MatrixXd& f, const Eigen::MatrixXd& q) {
  const Index n = f.rows();
  Eigen::MatrixXd big = Eigen::MatrixXd::Identity(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) big.block(i * n, j * n, n, n) -= f(i, j) * f;
  }
  // vec is column-major: vec(F G F^T) = (F (x) F) vec G
  const Eigen::VectorXd vq = Eigen::Map<const Eigen::VectorXd>(q.data(), n * n);
  const Eigen::VectorXd vg = big.partialPivLu().solve(vq);
  return Eigen::Map<const Eigen::MatrixXd>(vg.data(), n, n);
}

/// Spectral radius by Gelfand's formula, lim ||F^k||^(1/k), with k = 2^squarings.
inline double gelfand_spectral_radius(Eigen::MatrixXd f, int squarings = 16) {
  double log_scale = 0.0;  // F^k = exp(log_scale) * f
  for (int s = 0; s < squarings; ++s) {
    const double norm = f.norm();
    if (norm == 0.0) return 0.0;
    f /= norm;
    log_scale = 2.0 * (log_scale + std::log(norm));
    f = f * f;
  }
  const double k = std::ldexp(1.0, squarings);
  return std::exp((log_scale + std::log(f.norm())) / k);
}

/// S^{-1}(f) by brute force: truncated sum_tau R(tau) e^{-j 2 pi f tau} over
/// |tau| <= max_lag, then a numeric inverse. r[tau] = R(tau), R(-tau) = R(tau)^T.
inline Eigen::MatrixXcd inverse_psd_from_autocov(const std::vector<Eigen::MatrixXd>& r, double f) {
  using C = std::complex<double>;
  Eigen::MatrixXcd s = r[0].cast<C>();
  for (std::size_t tau = 1; tau < r.size(); ++tau) {
    const C e = std::polar(1.0, -2.0 * std::numbers::pi * f * static_cast<double>(tau));
    s += e * r[tau].cast<C>() + std::conj(e) * r[tau].transpose().cast<C>();
  }
  return s.inverse();
}

/// Random symmetric positive definite matrix B B^T / cols + ridge * I.
inline Eigen::MatrixXd random_spd(Index dim, Index cols, double ridge, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd b(dim, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < dim; ++r) b(r, c) = z(rng);
  }
  Eigen::MatrixXd s = b * b.transpose() / static_cast<double>(cols);
  s += ridge * Eigen::MatrixXd::Identity(dim, dim);
  return (s + s.transpose()) * 0.5;
}

}  // namespace tscig::oracle
