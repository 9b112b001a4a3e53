#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tscig/config.hpp"
#include "tscig/evaluation.hpp"
#include "tscig/graph.hpp"
#include "tscig/solver.hpp"

namespace tscig {

/// One solved grid point.
struct GridEvaluation {
  PenaltyConfig penalty;
  double criterion = 0.0;  // F1 (oracle_f1) or BIC value (bic)
  MetricsRecord metrics;   // precision/recall/f1 filled when a truth set is given
  bool converged = false;
  int iterations = 0;
  double runtime_ms = 0.0;
};

struct TuneResult {
  PenaltyConfig chosen;
  SolveResult solve;  // solve at the chosen point
  EdgeSet edges;      // read from solve.w
  double criterion = 0.0;
  double runtime_ms = 0.0;
  std::vector<GridEvaluation> grid;  // in visiting order
};

/// n_eff * (tr(S Omega) - ln|Omega|) + ln(n_eff) * #{k < l : W_kl != 0}.
double bic_score(const BlockSymMatrix& sigma_hat, const SolveResult& solve, Index effective_n);

/// Exhaustive grid search. Points are visited by increasing lambda, then by
/// decreasing alpha, and only a strictly better criterion replaces the
/// incumbent, so ties resolve to the smaller lambda and then the larger alpha.
/// oracle_f1 maximizes F1 against `truth` (required); bic minimizes bic_score.
/// Throws Error(Config) on an empty grid or a missing truth in oracle mode.
TuneResult tune(const BlockSymMatrix& sigma_hat, Index effective_n, std::span<const double> lambdas,
                std::span<const double> alphas, const EdgeSet* truth, TuningMode mode,
                const AdmmConfig& solver, double edge_tol = 1e-6);

/// "iid" for d = 0, "lag<d>" otherwise.
std::string method_label(int lag);

struct Aggregate {
  std::string method;
  Index n = 0;
  int d = 0;
  int count = 0;
  int failures = 0;
  double mean_f1 = 0.0;
  double sd_f1 = 0.0;
  double mean_runtime_ms = 0.0;
};

struct DeviationRow {
  std::string method;
  Index n = 0;
  int d = 0;
  int replicate = 0;
  DeviationReport report;
};

struct ResultTable {
  std::vector<MetricsRecord> rows;  // sorted by (d, n, replicate)
  std::vector<DeviationRow> deviations;
  std::vector<std::string> failures;

  std::vector<Aggregate> aggregates() const;
  bool has_failures() const noexcept { return !failures.empty(); }
};

/// Full Monte Carlo run over replicates x sample sizes x lags. Each cell
/// regenerates its replicate's models and data from the seed, so any cell's
/// result is independent of which other cells run. Cell failures are recorded
/// in the table instead of propagating.
ResultTable run_experiment(const ExperimentConfig& cfg);

/// Runs the experiment and writes results.csv, summary.json and the optional
/// per-cell files into cfg.output_dir.
ResultTable run_and_persist(const ExperimentConfig& cfg);

inline constexpr const char* kResultsHeader =
    "method,n,d,lambda,alpha,replicate,precision,recall,f1,runtime_ms,converged,iterations";

void write_results_csv(const ResultTable& table, const std::filesystem::path& path);
void write_summary_json(const ResultTable& table, const ExperimentConfig& cfg,
                        const std::filesystem::path& path);
void write_grid_csv(const std::vector<GridEvaluation>& grid, const std::filesystem::path& path);

}  // namespace tscig
