#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tscig/graph.hpp"
#include "tscig/synthdata.hpp"

namespace tscig {

/// Closed frequency grid start, start+step, ..., stop (cycles/sample).
struct FrequencyGrid {
  double start = 0.0;
  double stop = 0.5;
  double step = 0.01;

  std::vector<double> points() const;
};

/// Inverse PSD of the stacked community VARs at frequency f.
///
/// For a community with A(f) = I - sum_i A_i exp(-j 2 pi f i) and identity
/// noise covariance, S(f) = A(f)^{-1} A(f)^{-H}, so S^{-1}(f) = A(f)^H A(f).
/// The result is block-diagonal by community with exact zeros elsewhere.
Eigen::MatrixXcd inverse_psd(std::span<const VarModel> models, double f);

/// {i, j} is an edge iff sum_f |[S^{-1}(f)]_ij| over the grid exceeds threshold.
EdgeSet true_edge_set(std::span<const VarModel> models, const FrequencyGrid& grid = {},
                      double threshold = 1e-6);

/// Lines "f,i,j,abs_value" for every i < j with a nonzero inverse-PSD entry.
void write_inverse_psd_trace(std::span<const VarModel> models, const FrequencyGrid& grid,
                             const std::filesystem::path& path);

}  // namespace tscig
