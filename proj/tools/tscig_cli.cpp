// Command-line driver: simulate, truth, estimate, tune, experiment.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tscig/config.hpp"
#include "tscig/embedding.hpp"
#include "tscig/error.hpp"
#include "tscig/graph.hpp"
#include "tscig/harness.hpp"
#include "tscig/solver.hpp"
#include "tscig/spectral_oracle.hpp"
#include "tscig/synthdata.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

struct SolverFlags {
  double rho = 2.0;
  int max_iter = 500;
  double eps_abs = 1e-6;
  double eps_rel = 1e-5;
  bool adaptive_rho = false;

  void attach(CLI::App* app) {
    app->add_option("--rho", rho, "ADMM penalty parameter")->capture_default_str();
    app->add_option("--max-iter", max_iter, "ADMM iteration budget")->capture_default_str();
    app->add_option("--eps-abs", eps_abs, "absolute stopping tolerance")->capture_default_str();
    app->add_option("--eps-rel", eps_rel, "relative stopping tolerance")->capture_default_str();
    app->add_flag("--adaptive-rho", adaptive_rho, "rebalance rho from residual ratio");
  }
  tscig::AdmmConfig config() const { return {rho, max_iter, eps_abs, eps_rel, adaptive_rho}; }
};

tscig::ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& sets) {
  tscig::ExperimentConfig cfg;
  if (!path.empty()) tscig::apply_config_file(cfg, path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw tscig::Error(tscig::ErrorKind::Config, "--set expects key=value, got '" + kv + "'");
    }
    tscig::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

tscig::TimeSeries load_series(const std::string& path, bool demean) {
  tscig::TimeSeries x = tscig::read_series(path);
  return demean ? tscig::remove_mean(x) : x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-series conditional independence graph estimation"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate benchmark VAR models and a trajectory");
  std::string sim_config;
  std::vector<std::string> sim_sets;
  std::uint64_t sim_rep = 0;
  int sim_n = 0;
  std::string sim_out;
  std::string sim_models_out;
  sim->add_option("--config", sim_config, "experiment config file");
  sim->add_option("--set", sim_sets, "override a config key (key=value)");
  sim->add_option("--replicate", sim_rep, "replicate index")->capture_default_str();
  sim->add_option("--n", sim_n, "sample count (default: config n)");
  sim->add_option("--out", sim_out, "series output (.csv or .bin)")->required();
  sim->add_option("--models-out", sim_models_out, "model coefficient dump (CSV)");

  // truth
  auto* truth = app.add_subcommand("truth", "Compute the true edge set from the inverse PSD");
  std::string truth_config;
  std::vector<std::string> truth_sets;
  std::string truth_models;
  std::uint64_t truth_rep = 0;
  std::string truth_out;
  std::string truth_adj;
  std::string truth_trace;
  double truth_threshold = 1e-6;
  tscig::FrequencyGrid grid;
  truth->add_option("--config", truth_config, "experiment config file");
  truth->add_option("--set", truth_sets, "override a config key (key=value)");
  truth->add_option("--models", truth_models, "model dump to read instead of regenerating");
  truth->add_option("--replicate", truth_rep, "replicate index")->capture_default_str();
  truth->add_option("--out", truth_out, "edge list output")->required();
  truth->add_option("--adjacency", truth_adj, "0/1 adjacency matrix output");
  truth->add_option("--trace", truth_trace, "per-frequency |inverse PSD| output");
  truth->add_option("--threshold", truth_threshold, "edge threshold on summed magnitude")
      ->capture_default_str();
  truth->add_option("--grid-step", grid.step, "frequency step")->capture_default_str();

  // estimate
  auto* est = app.add_subcommand("estimate", "Single sparse-group ADMM solve on a series");
  std::string est_data;
  int est_lag = 3;
  double est_lambda = 0.1;
  double est_alpha = 0.5;
  bool est_demean = false;
  std::string est_from = "w";
  std::optional<double> est_tol;
  std::string est_out;
  std::string est_adj;
  std::string est_trace;
  std::string est_truth;
  SolverFlags est_solver;
  est->add_option("--data", est_data, "series file (.csv or .bin)")->required();
  est->add_option("--lag", est_lag, "lag order d")->capture_default_str();
  est->add_option("--lambda", est_lambda, "penalty weight")->capture_default_str();
  est->add_option("--alpha", est_alpha, "lasso share of the penalty")->capture_default_str();
  est->add_flag("--demean", est_demean, "subtract per-component means first");
  est->add_option("--from", est_from, "read edges from the w or omega iterate")
      ->check(CLI::IsMember({"w", "omega"}))
      ->capture_default_str();
  est->add_option("--tol", est_tol, "block-norm threshold for an edge");
  est->add_option("--out", est_out, "edge list output");
  est->add_option("--adjacency", est_adj, "0/1 adjacency matrix output");
  est->add_option("--trace", est_trace, "per-iteration diagnostics output");
  est->add_option("--truth", est_truth, "reference edge list to score against");
  est_solver.attach(est);

  // tune
  auto* tun = app.add_subcommand("tune", "Grid search for (lambda, alpha) on a series");
  std::string tun_data;
  int tun_lag = 3;
  bool tun_demean = false;
  std::string tun_lambdas = "logspace(1e-3, 1, 20)";
  std::string tun_alphas = "0, 0.25, 0.5, 0.75, 1";
  std::string tun_mode = "bic";
  std::string tun_truth;
  std::string tun_out;
  std::string tun_grid_out;
  double tun_tol = 1e-6;
  SolverFlags tun_solver;
  tun->add_option("--data", tun_data, "series file (.csv or .bin)")->required();
  tun->add_option("--lag", tun_lag, "lag order d")->capture_default_str();
  tun->add_flag("--demean", tun_demean, "subtract per-component means first");
  tun->add_option("--lambda-grid", tun_lambdas, "lambda values or logspace(a, b, k)")->capture_default_str();
  tun->add_option("--alpha-grid", tun_alphas, "alpha values")->capture_default_str();
  tun->add_option("--mode", tun_mode, "oracle_f1 or bic")->capture_default_str();
  tun->add_option("--truth", tun_truth, "reference edge list (required for oracle_f1)");
  tun->add_option("--out", tun_out, "edge list at the chosen point");
  tun->add_option("--grid-out", tun_grid_out, "per-grid-point CSV");
  tun->add_option("--edge-tol", tun_tol, "block-norm threshold on W")->capture_default_str();
  tun_solver.attach(tun);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Full Monte Carlo benchmark run");
  std::string exp_config;
  std::vector<std::string> exp_sets;
  std::optional<int> exp_reps;
  std::optional<int> exp_workers;
  std::optional<std::string> exp_outdir;
  std::optional<std::uint64_t> exp_seed;
  exp->add_option("--config", exp_config, "experiment config file");
  exp->add_option("--set", exp_sets, "override any config key (key=value)");
  exp->add_option("--replicates", exp_reps, "replicate count");
  exp->add_option("--workers", exp_workers, "worker threads");
  exp->add_option("--output-dir", exp_outdir, "run directory");
  exp->add_option("--seed", exp_seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim) {
      const auto cfg = load_config(sim_config, sim_sets);
      const int n = sim_n > 0 ? sim_n : cfg.benchmark.n;
      const auto models = tscig::gen_benchmark_models(cfg.benchmark, sim_rep);
      const auto x = tscig::simulate_benchmark(cfg.benchmark, models, sim_rep, n);
      tscig::write_series(x, sim_out);
      if (!sim_models_out.empty()) tscig::write_models_csv(models, sim_models_out);
      std::cout << "wrote " << x.p() << " x " << x.n() << " series to " << sim_out << '\n';
    } else if (*truth) {
      std::vector<tscig::VarModel> models;
      if (!truth_models.empty()) {
        models = tscig::read_models_csv(truth_models);
      } else {
        const auto cfg = load_config(truth_config, truth_sets);
        models = tscig::gen_benchmark_models(cfg.benchmark, truth_rep);
      }
      const auto edges = tscig::true_edge_set(models, grid, truth_threshold);
      tscig::write_edges_csv(edges, truth_out);
      if (!truth_adj.empty()) tscig::write_adjacency_csv(edges, truth_adj);
      if (!truth_trace.empty()) tscig::write_inverse_psd_trace(models, grid, truth_trace);
      std::cout << edges.size() << " true edges (density " << edges.density() << ")\n";
    } else if (*est) {
      const auto x = load_series(est_data, est_demean);
      const auto y = tscig::build_lagged_embedding(x, est_lag);
      const auto sigma_hat = tscig::sample_covariance(y);
      const auto result = tscig::admm_solve(sigma_hat, {est_lambda, est_alpha}, est_solver.config(),
                                            !est_trace.empty());
      const auto& source = est_from == "w" ? result.w : result.omega;
      const double tol = est_tol ? *est_tol
                                 : (est_from == "w" ? 1e-6 : tscig::default_omega_tolerance(result.omega));
      const auto edges = tscig::infer_edges(source, tol);
      if (!est_out.empty()) tscig::write_edges_csv(edges, est_out);
      if (!est_adj.empty()) tscig::write_adjacency_csv(edges, est_adj);
      if (!est_trace.empty()) tscig::write_trace_csv(result.trace, est_trace);
      nlohmann::json report = {{"converged", result.converged},
                               {"iterations", result.iterations},
                               {"objective", result.objective},
                               {"primal_residual", result.primal_residual},
                               {"dual_residual", result.dual_residual},
                               {"edges", edges.size()}};
      if (!est_truth.empty()) {
        const auto m = tscig::score(edges, tscig::read_edges_csv(est_truth));
        report["precision"] = m.precision;
        report["recall"] = m.recall;
        report["f1"] = m.f1;
      }
      std::cout << report.dump(2) << '\n';
    } else if (*tun) {
      const auto x = load_series(tun_data, tun_demean);
      const auto y = tscig::build_lagged_embedding(x, tun_lag);
      const auto sigma_hat = tscig::sample_covariance(y);
      const auto mode = tscig::parse_tuning_mode(tun_mode);
      std::optional<tscig::EdgeSet> reference;
      if (!tun_truth.empty()) reference = tscig::read_edges_csv(tun_truth);
      const auto lambdas = tscig::parse_real_list(tun_lambdas);
      const auto alphas = tscig::parse_real_list(tun_alphas);
      const auto result = tscig::tune(sigma_hat, y.effective_n(), lambdas, alphas,
                                      reference ? &*reference : nullptr, mode, tun_solver.config(),
                                      tun_tol);
      if (!tun_out.empty()) tscig::write_edges_csv(result.edges, tun_out);
      if (!tun_grid_out.empty()) tscig::write_grid_csv(result.grid, tun_grid_out);
      nlohmann::json report = {{"lambda", result.chosen.lambda},
                               {"alpha", result.chosen.alpha},
                               {"criterion", result.criterion},
                               {"converged", result.solve.converged},
                               {"edges", result.edges.size()}};
      std::cout << report.dump(2) << '\n';
    } else if (*exp) {
      auto cfg = load_config(exp_config, exp_sets);
      if (exp_reps) cfg.replicates = *exp_reps;
      if (exp_workers) cfg.workers = *exp_workers;
      if (exp_outdir) cfg.output_dir = *exp_outdir;
      if (exp_seed) cfg.benchmark.seed = *exp_seed;
      cfg.validate();
      const auto table = tscig::run_and_persist(cfg);
      for (const auto& a : table.aggregates()) {
        std::cout << a.method << " n=" << a.n << " mean_f1=" << a.mean_f1 << " sd_f1=" << a.sd_f1
                  << " mean_runtime_ms=" << a.mean_runtime_ms << " failures=" << a.failures << '\n';
      }
      if (table.has_failures()) {
        for (const auto& f : table.failures) std::cerr << "cell failed: " << f << '\n';
        return kExitPartial;
      }
    }
  } catch (const tscig::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
