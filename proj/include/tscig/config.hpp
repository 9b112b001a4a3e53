#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tscig/solver.hpp"
#include "tscig/synthdata.hpp"

namespace tscig {

enum class TuningMode { OracleF1, Bic };

const char* to_string(TuningMode mode) noexcept;
TuningMode parse_tuning_mode(std::string_view text);

struct ExperimentConfig {
  BenchmarkSpec benchmark;
  std::vector<int> lags{0, 1, 3};
  std::vector<int> sample_sizes{128, 256, 512, 1024, 2048};
  std::vector<double> lambda_grid;  // defaults to logspace(1e-3, 1, 20)
  std::vector<double> alpha_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  int replicates = 100;
  TuningMode tuning_mode = TuningMode::OracleF1;
  AdmmConfig solver;
  std::filesystem::path output_dir = "results";
  int workers = 1;
  bool demean = false;
  double edge_tol = 1e-6;
  bool write_edges = false;
  bool write_traces = false;
  bool report_deviation = false;

  ExperimentConfig();
  void validate() const;
};

/// `count` points from `first` to `last`, evenly spaced in log scale.
std::vector<double> logspace(double first, double last, int count);

/// Comma-separated reals, or "logspace(first, last, count)".
std::vector<double> parse_real_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// Sets one field by its config key; throws Error(Config) for unknown keys
/// or malformed values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Reads "key = value" lines; '#' starts a comment. Keys are the field names
/// of ExperimentConfig and BenchmarkSpec (see docs/config.md).
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Round-trippable "key = value" text for every setting.
std::string to_config_text(const ExperimentConfig& cfg);

}  // namespace tscig
