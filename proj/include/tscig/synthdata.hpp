#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tscig/block_matrix.hpp"
#include "tscig/rng.hpp"
#include "tscig/time_series.hpp"

namespace tscig {

/// x(t) = sum_{i=1..q} A_i x(t-i) + w(t), w(t) ~ N(0, I_k).
struct VarModel {
  std::vector<Eigen::MatrixXd> coeffs;  // A_1..A_q, each k x k
  int draws = 1;                        // rejection draws spent generating this model

  Index order() const noexcept { return static_cast<Index>(coeffs.size()); }
  Index size() const noexcept { return coeffs.empty() ? 0 : coeffs.front().rows(); }
};

/// Community-structured VAR benchmark. Defaults are the 16 x 8 node,
/// VAR(3), 10% density setup with coefficients uniform on [-0.8, 0.8].
struct BenchmarkSpec {
  int num_communities = 16;
  int community_size = 8;
  int var_order = 3;
  double density = 0.1;
  double coeff_min = -0.8;
  double coeff_max = 0.8;
  double stability_bound = 0.95;
  int burn_in = 100;
  int n = 512;
  std::uint64_t seed = 1;
  int max_draws = 10000;

  Index p() const noexcept { return static_cast<Index>(num_communities) * community_size; }
  void validate() const;
  std::string describe() const;
};

/// qk x qk matrix [[A_1 ... A_q], [I 0 ... 0], ..., [0 ... I 0]].
Eigen::MatrixXd companion_matrix(const VarModel& model);

/// Largest eigenvalue modulus of the companion matrix.
double companion_spectral_radius(const VarModel& model);

/// Draws coefficient sets until the companion spectral radius is within
/// spec.stability_bound. Each entry is nonzero with probability spec.density
/// and then uniform on [coeff_min, coeff_max]. Throws Error(Generation) after
/// spec.max_draws rejected draws.
VarModel gen_var_model(const BenchmarkSpec& spec, Rng& rng);

/// One model per community, community q drawn from its own stream of
/// (spec.seed, replicate, q).
std::vector<VarModel> gen_benchmark_models(const BenchmarkSpec& spec, std::uint64_t replicate);

/// Runs each community's recursion from a zero state, discards the first
/// `burn_in` outputs and stacks communities in order. Community streams are
/// split off `rng` up front. Throws Error(Domain) for a model whose companion
/// spectral radius is >= 1.
TimeSeries simulate_var(std::span<const VarModel> models, Index n, Index burn_in, Rng& rng);

/// simulate_var on the stream (spec.seed, replicate, n).
TimeSeries simulate_benchmark(const BenchmarkSpec& spec, std::span<const VarModel> models,
                              std::uint64_t replicate, Index n);

// Model dump: lines "community,lag,row,col,value" (0-based, lag from 1), dense.
void write_models_csv(std::span<const VarModel> models, const std::filesystem::path& path);
std::vector<VarModel> read_models_csv(const std::filesystem::path& path);

}  // namespace tscig
