#include "tscig/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "tscig/embedding.hpp"
#include "tscig/error.hpp"
#include "tscig/spectral_oracle.hpp"
#include "tscig/synthdata.hpp"

namespace tscig {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct CellSpec {
  int replicate = 0;
  int n = 0;
  int d = 0;
  bool first_of_replicate = false;
};

struct CellOutput {
  MetricsRecord row;
  std::optional<DeviationRow> deviation;
  std::string failure;
};

std::string cell_tag(const std::string& method, Index n, int replicate) {
  return method + "_n" + std::to_string(n) + "_r" + std::to_string(replicate);
}

CellOutput run_cell(const ExperimentConfig& cfg, const CellSpec& cell) {
  CellOutput out;
  MetricsRecord& row = out.row;
  row.method = method_label(cell.d);
  row.n = cell.n;
  row.d = cell.d;
  row.replicate = cell.replicate;
  try {
    const auto rep = static_cast<std::uint64_t>(cell.replicate);
    const auto models = gen_benchmark_models(cfg.benchmark, rep);
    const EdgeSet truth = true_edge_set(models);
    TimeSeries x = simulate_benchmark(cfg.benchmark, models, rep, cell.n);
    if (cfg.demean) x = remove_mean(x);

    const auto t0 = Clock::now();
    const LaggedSampleSet y = build_lagged_embedding(x, cell.d);
    const BlockSymMatrix sigma_hat = sample_covariance(y);
    const double prep_ms = elapsed_ms(t0);

    // with m = 1 the lasso and group terms coincide, so alpha is immaterial
    const std::vector<double> alphas =
        cell.d == 0 ? std::vector<double>{1.0} : cfg.alpha_grid;
    TuneResult tuned = tune(sigma_hat, y.effective_n(), cfg.lambda_grid, alphas,
                            cfg.tuning_mode == TuningMode::OracleF1 ? &truth : nullptr,
                            cfg.tuning_mode, cfg.solver, cfg.edge_tol);

    const MetricsRecord scored = score(tuned.edges, truth);
    row.precision = scored.precision;
    row.recall = scored.recall;
    row.f1 = scored.f1;
    row.lambda = tuned.chosen.lambda;
    row.alpha = tuned.chosen.alpha;
    row.converged = tuned.solve.converged;
    row.iterations = tuned.solve.iterations;
    row.runtime_ms = prep_ms + tuned.runtime_ms;

    const std::string tag = cell_tag(row.method, row.n, row.replicate);
    if (cfg.write_edges) {
      write_edges_csv(tuned.edges, cfg.output_dir / ("edges_" + tag + ".csv"));
      if (cell.first_of_replicate) {
        write_edges_csv(truth, cfg.output_dir / ("truth_r" + std::to_string(cell.replicate) + ".csv"));
      }
    }
    if (cfg.write_traces) {
      const SolveResult traced = admm_solve(sigma_hat, tuned.chosen, cfg.solver, true);
      write_trace_csv(traced.trace, cfg.output_dir / ("trace_" + tag + ".csv"));
    }
    if (cfg.report_deviation) {
      DeviationRow dev;
      dev.method = row.method;
      dev.n = row.n;
      dev.d = row.d;
      dev.replicate = row.replicate;
      dev.report = covariance_deviation(sigma_hat, true_lagged_covariance(models, cell.d),
                                        y.effective_n());
      out.deviation = dev;
    }
  } catch (const std::exception& e) {
    row.failed = true;
    row.converged = false;
    row.precision = row.recall = row.f1 = std::nan("");
    out.failure = cell_tag(row.method, row.n, row.replicate) + ": " + e.what();
  }
  return out;
}

std::string format_real(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

double bic_score(const BlockSymMatrix& sigma_hat, const SolveResult& solve, Index effective_n) {
  Eigen::LLT<Eigen::MatrixXd> chol(solve.omega.matrix());
  if (chol.info() != Eigen::Success) {
    throw Error(ErrorKind::Domain, "omega is not positive definite");
  }
  const double logdet = 2.0 * chol.matrixLLT().diagonal().array().log().sum();
  const double fit = sigma_hat.matrix().cwiseProduct(solve.omega.matrix()).sum() - logdet;
  const Eigen::MatrixXd& w = solve.w.matrix();
  Index nonzeros = 0;
  for (Index c = 0; c < w.cols(); ++c) {
    for (Index r = 0; r < c; ++r) nonzeros += w(r, c) != 0.0 ? 1 : 0;
  }
  const double n = static_cast<double>(effective_n);
  return n * fit + std::log(n) * static_cast<double>(nonzeros);
}

TuneResult tune(const BlockSymMatrix& sigma_hat, Index effective_n, std::span<const double> lambdas,
                std::span<const double> alphas, const EdgeSet* truth, TuningMode mode,
                const AdmmConfig& solver, double edge_tol) {
  if (lambdas.empty() || alphas.empty()) throw Error(ErrorKind::Config, "tuning grid is empty");
  if (mode == TuningMode::OracleF1 && truth == nullptr) {
    throw Error(ErrorKind::Config, "oracle_f1 tuning needs a true edge set");
  }
  std::vector<double> lam(lambdas.begin(), lambdas.end());
  std::vector<double> alp(alphas.begin(), alphas.end());
  std::sort(lam.begin(), lam.end());
  lam.erase(std::unique(lam.begin(), lam.end()), lam.end());
  std::sort(alp.begin(), alp.end(), std::greater<>());
  alp.erase(std::unique(alp.begin(), alp.end()), alp.end());

  TuneResult best;
  bool have_best = false;
  for (double lambda : lam) {
    for (double alpha : alp) {
      GridEvaluation eval;
      eval.penalty = {lambda, alpha};
      const auto t0 = Clock::now();
      SolveResult solve = admm_solve(sigma_hat, eval.penalty, solver);
      eval.runtime_ms = elapsed_ms(t0);
      eval.converged = solve.converged;
      eval.iterations = solve.iterations;
      EdgeSet edges = infer_edges(solve.w, edge_tol);
      if (truth != nullptr) {
        const MetricsRecord m = score(edges, *truth);
        eval.metrics.precision = m.precision;
        eval.metrics.recall = m.recall;
        eval.metrics.f1 = m.f1;
      }
      eval.criterion = mode == TuningMode::OracleF1 ? eval.metrics.f1
                                                    : bic_score(sigma_hat, solve, effective_n);
      const bool better = !have_best || (mode == TuningMode::OracleF1
                                             ? eval.criterion > best.criterion
                                             : eval.criterion < best.criterion);
      if (better) {
        have_best = true;
        best.chosen = eval.penalty;
        best.solve = std::move(solve);
        best.edges = std::move(edges);
        best.criterion = eval.criterion;
        best.runtime_ms = eval.runtime_ms;
      }
      best.grid.push_back(eval);
    }
  }
  return best;
}

std::string method_label(int lag) { return lag == 0 ? "iid" : "lag" + std::to_string(lag); }

std::vector<Aggregate> ResultTable::aggregates() const {
  std::vector<Aggregate> out;
  for (const auto& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Aggregate& a) {
      return a.method == row.method && a.n == row.n;
    });
    if (it == out.end()) {
      out.push_back({row.method, row.n, static_cast<int>(row.d)});
      it = std::prev(out.end());
    }
    if (row.failed) {
      ++it->failures;
      continue;
    }
    ++it->count;
    it->mean_f1 += row.f1;
    it->mean_runtime_ms += row.runtime_ms;
  }
  for (auto& a : out) {
    if (a.count > 0) {
      a.mean_f1 /= a.count;
      a.mean_runtime_ms /= a.count;
    }
    double ss = 0.0;
    for (const auto& row : rows) {
      if (!row.failed && row.method == a.method && row.n == a.n) ss += (row.f1 - a.mean_f1) * (row.f1 - a.mean_f1);
    }
    a.sd_f1 = a.count > 1 ? std::sqrt(ss / (a.count - 1)) : 0.0;
  }
  std::sort(out.begin(), out.end(), [](const Aggregate& x, const Aggregate& y) {
    return std::tie(x.d, x.n) < std::tie(y.d, y.n);
  });
  return out;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.write_edges || cfg.write_traces) std::filesystem::create_directories(cfg.output_dir);

  std::vector<CellSpec> cells;
  for (int r = 0; r < cfg.replicates; ++r) {
    bool first = true;
    for (int n : cfg.sample_sizes) {
      for (int d : cfg.lags) {
        cells.push_back({r, n, d, first});
        first = false;
      }
    }
  }

  std::vector<CellOutput> outputs(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) outputs[i] = run_cell(cfg, cells[i]);
  };
  {
    std::vector<std::jthread> pool;
    const int extra = std::min<int>(cfg.workers, static_cast<int>(cells.size())) - 1;
    for (int w = 0; w < extra; ++w) pool.emplace_back(work);
    work();
  }

  ResultTable table;
  for (auto& out : outputs) {
    table.rows.push_back(out.row);
    if (out.deviation) table.deviations.push_back(*out.deviation);
    if (!out.failure.empty()) table.failures.push_back(out.failure);
  }
  auto key = [](const MetricsRecord& r) { return std::tie(r.d, r.n, r.replicate); };
  std::sort(table.rows.begin(), table.rows.end(),
            [&](const MetricsRecord& a, const MetricsRecord& b) { return key(a) < key(b); });
  std::sort(table.deviations.begin(), table.deviations.end(), [](const DeviationRow& a, const DeviationRow& b) {
    return std::tie(a.d, a.n, a.replicate) < std::tie(b.d, b.n, b.replicate);
  });
  std::sort(table.failures.begin(), table.failures.end());
  return table;
}

ResultTable run_and_persist(const ExperimentConfig& cfg) {
  ResultTable table = run_experiment(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  write_results_csv(table, cfg.output_dir / "results.csv");
  write_summary_json(table, cfg, cfg.output_dir / "summary.json");
  if (cfg.report_deviation) {
    std::ofstream out(cfg.output_dir / "deviation.csv");
    out << "method,n,d,replicate,effective_n,max_abs_deviation,predicted_rate\n";
    for (const auto& dev : table.deviations) {
      out << dev.method << ',' << dev.n << ',' << dev.d << ',' << dev.replicate << ','
          << dev.report.effective_n << ',' << format_real("%.10g", dev.report.max_abs_deviation)
          << ',' << format_real("%.10g", dev.report.predicted_rate) << '\n';
    }
  }
  return table;
}

void write_results_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << kResultsHeader << '\n';
  for (const auto& r : table.rows) {
    out << r.method << ',' << r.n << ',' << r.d << ',' << format_real("%.10g", r.lambda) << ','
        << format_real("%.10g", r.alpha) << ',' << r.replicate << ','
        << format_real("%.10f", r.precision) << ',' << format_real("%.10f", r.recall) << ','
        << format_real("%.10f", r.f1) << ',' << format_real("%.3f", r.runtime_ms) << ','
        << (r.failed ? "failed" : (r.converged ? "true" : "false")) << ',' << r.iterations << '\n';
  }
}

void write_summary_json(const ResultTable& table, const ExperimentConfig& cfg,
                        const std::filesystem::path& path) {
  nlohmann::json j;
  const auto& b = cfg.benchmark;
  j["seed"] = b.seed;
  j["config"] = {
      {"num_communities", b.num_communities}, {"community_size", b.community_size},
      {"var_order", b.var_order},             {"density", b.density},
      {"coeff_min", b.coeff_min},             {"coeff_max", b.coeff_max},
      {"stability_bound", b.stability_bound}, {"burn_in", b.burn_in},
      {"max_draws", b.max_draws},             {"lags", cfg.lags},
      {"sample_sizes", cfg.sample_sizes},     {"lambda_grid", cfg.lambda_grid},
      {"alpha_grid", cfg.alpha_grid},         {"replicates", cfg.replicates},
      {"tuning_mode", to_string(cfg.tuning_mode)},
      {"rho", cfg.solver.rho},                {"max_iter", cfg.solver.max_iter},
      {"eps_abs", cfg.solver.eps_abs},        {"eps_rel", cfg.solver.eps_rel},
      {"adaptive_rho", cfg.solver.adaptive_rho},
      {"demean", cfg.demean},                 {"edge_tol", cfg.edge_tol},
  };
  nlohmann::json aggs = nlohmann::json::array();
  for (const auto& a : table.aggregates()) {
    aggs.push_back({{"method", a.method},
                    {"n", a.n},
                    {"d", a.d},
                    {"count", a.count},
                    {"failures", a.failures},
                    {"mean_f1", a.mean_f1},
                    {"sd_f1", a.sd_f1},
                    {"mean_runtime_ms", a.mean_runtime_ms}});
  }
  j["aggregates"] = aggs;
  j["rows"] = table.rows.size();
  j["failures"] = table.failures;
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_grid_csv(const std::vector<GridEvaluation>& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << "lambda,alpha,criterion,precision,recall,f1,converged,iterations,runtime_ms\n";
  for (const auto& g : grid) {
    out << format_real("%.10g", g.penalty.lambda) << ',' << format_real("%.10g", g.penalty.alpha)
        << ',' << format_real("%.10g", g.criterion) << ','
        << format_real("%.10f", g.metrics.precision) << ',' << format_real("%.10f", g.metrics.recall)
        << ',' << format_real("%.10f", g.metrics.f1) << ',' << (g.converged ? "true" : "false")
        << ',' << g.iterations << ',' << format_real("%.3f", g.runtime_ms) << '\n';
  }
}

}  // namespace tscig
