#pragma once

#include <Eigen/Dense>

#include "tscig/block_matrix.hpp"
#include "tscig/time_series.hpp"

namespace tscig {

/// Lag-augmented samples y(t), t = d..n-1, stored column-wise.
///
/// Layout is node-major: row i*m + r of column c holds x_i(c + d - r),
/// r = 0..d, m = d + 1. All lags of one node are contiguous, which is what
/// makes BlockSymMatrix::block(i, j) the cross block between nodes i and j.
struct LaggedSampleSet {
  Eigen::MatrixXd samples;  // (m*p) x n_eff
  Index p = 0;
  Index lag = 0;

  Index block_size() const noexcept { return lag + 1; }
  Index effective_n() const noexcept { return samples.cols(); }
};

/// Throws Error(InvalidLag) if lag < 0 or lag >= n, Error(Data) if p < 2.
LaggedSampleSet build_lagged_embedding(const TimeSeries& x, Index lag);

/// (1/n_eff) * sum_t y(t) y(t)^T without mean removal.
BlockSymMatrix sample_covariance(const LaggedSampleSet& y);

}  // namespace tscig
