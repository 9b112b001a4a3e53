#include "tscig/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tscig/error.hpp"

namespace tscig {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view text) {
  text = trim(text);
  std::string buf(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(buf, &used);
    if (used == buf.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Config, "expected a number, got '" + buf + "'");
}

long long parse_integer(std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Config, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text) { return static_cast<int>(parse_integer(text)); }

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw Error(ErrorKind::Config, "expected a boolean, got '" + std::string(text) + "'");
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream s;
  s.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) s << (i ? ", " : "") << values[i];
  return s.str();
}

}  // namespace

const char* to_string(TuningMode mode) noexcept {
  return mode == TuningMode::OracleF1 ? "oracle_f1" : "bic";
}

TuningMode parse_tuning_mode(std::string_view text) {
  text = trim(text);
  if (text == "oracle_f1") return TuningMode::OracleF1;
  if (text == "bic") return TuningMode::Bic;
  throw Error(ErrorKind::Config, "tuning_mode must be oracle_f1 or bic, got '" + std::string(text) + "'");
}

ExperimentConfig::ExperimentConfig() : lambda_grid(logspace(1e-3, 1.0, 20)) {}

void ExperimentConfig::validate() const {
  benchmark.validate();
  solver.validate();
  if (lags.empty() || sample_sizes.empty() || lambda_grid.empty() || alpha_grid.empty()) {
    throw Error(ErrorKind::Config, "lags, sample_sizes and both grids must be nonempty");
  }
  for (int d : lags) {
    if (d < 0) throw Error(ErrorKind::Config, "lags must be nonnegative");
  }
  for (int n : sample_sizes) {
    if (n < 1) throw Error(ErrorKind::Config, "sample sizes must be positive");
  }
  for (double l : lambda_grid) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw Error(ErrorKind::Config, "lambda values must be >= 0");
  }
  for (double a : alpha_grid) {
    if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorKind::Config, "alpha values must lie in [0, 1]");
  }
  if (replicates < 1) throw Error(ErrorKind::Config, "replicates must be >= 1");
  if (workers < 1) throw Error(ErrorKind::Config, "workers must be >= 1");
  if (!(edge_tol >= 0.0)) throw Error(ErrorKind::Config, "edge_tol must be >= 0");
}

std::vector<double> logspace(double first, double last, int count) {
  if (!(first > 0.0) || !(last > 0.0) || count < 1) {
    throw Error(ErrorKind::Config, "logspace needs positive endpoints and count >= 1");
  }
  if (count == 1) return {first};
  std::vector<double> v(count);
  const double lo = std::log10(first);
  const double hi = std::log10(last);
  for (int k = 0; k < count; ++k) v[k] = std::pow(10.0, lo + (hi - lo) * k / (count - 1));
  v.front() = first;
  v.back() = last;
  return v;
}

std::vector<double> parse_real_list(std::string_view text) {
  text = trim(text);
  if (text.rfind("logspace(", 0) == 0 && text.back() == ')') {
    const auto args = split(text.substr(9, text.size() - 10), ',');
    if (args.size() != 3) throw Error(ErrorKind::Config, "logspace takes (first, last, count)");
    return logspace(parse_real(args[0]), parse_real(args[1]), parse_int(args[2]));
  }
  std::vector<double> values;
  for (auto part : split(text, ',')) {
    if (!part.empty()) values.push_back(parse_real(part));
  }
  return values;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> values;
  for (auto part : split(trim(text), ',')) {
    if (!part.empty()) values.push_back(parse_int(part));
  }
  return values;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  auto& b = cfg.benchmark;
  if (key == "num_communities") b.num_communities = parse_int(value);
  else if (key == "community_size") b.community_size = parse_int(value);
  else if (key == "var_order") b.var_order = parse_int(value);
  else if (key == "density") b.density = parse_real(value);
  else if (key == "coeff_min") b.coeff_min = parse_real(value);
  else if (key == "coeff_max") b.coeff_max = parse_real(value);
  else if (key == "stability_bound") b.stability_bound = parse_real(value);
  else if (key == "burn_in") b.burn_in = parse_int(value);
  else if (key == "seed") b.seed = static_cast<std::uint64_t>(parse_integer(value));
  else if (key == "max_draws") b.max_draws = parse_int(value);
  else if (key == "lags") cfg.lags = parse_int_list(value);
  else if (key == "sample_sizes") cfg.sample_sizes = parse_int_list(value);
  else if (key == "lambda_grid") cfg.lambda_grid = parse_real_list(value);
  else if (key == "alpha_grid") cfg.alpha_grid = parse_real_list(value);
  else if (key == "replicates") cfg.replicates = parse_int(value);
  else if (key == "tuning_mode") cfg.tuning_mode = parse_tuning_mode(value);
  else if (key == "rho") cfg.solver.rho = parse_real(value);
  else if (key == "max_iter") cfg.solver.max_iter = parse_int(value);
  else if (key == "eps_abs") cfg.solver.eps_abs = parse_real(value);
  else if (key == "eps_rel") cfg.solver.eps_rel = parse_real(value);
  else if (key == "adaptive_rho") cfg.solver.adaptive_rho = parse_bool(value);
  else if (key == "output_dir") cfg.output_dir = std::string(trim(value));
  else if (key == "workers") cfg.workers = parse_int(value);
  else if (key == "demean") cfg.demean = parse_bool(value);
  else if (key == "edge_tol") cfg.edge_tol = parse_real(value);
  else if (key == "write_edges") cfg.write_edges = parse_bool(value);
  else if (key == "write_traces") cfg.write_traces = parse_bool(value);
  else if (key == "report_deviation") cfg.report_deviation = parse_bool(value);
  else throw Error(ErrorKind::Config, "unknown config key '" + std::string(key) + "'");
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Config, path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply_setting(cfg, view.substr(0, eq), view.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  ExperimentConfig cfg;
  apply_config_file(cfg, path);
  cfg.validate();
  return cfg;
}

std::string to_config_text(const ExperimentConfig& cfg) {
  const auto& b = cfg.benchmark;
  std::ostringstream s;
  s.precision(17);
  s << "num_communities = " << b.num_communities << '\n'
    << "community_size = " << b.community_size << '\n'
    << "var_order = " << b.var_order << '\n'
    << "density = " << b.density << '\n'
    << "coeff_min = " << b.coeff_min << '\n'
    << "coeff_max = " << b.coeff_max << '\n'
    << "stability_bound = " << b.stability_bound << '\n'
    << "burn_in = " << b.burn_in << '\n'
    << "seed = " << b.seed << '\n'
    << "max_draws = " << b.max_draws << '\n'
    << "lags = " << join(cfg.lags) << '\n'
    << "sample_sizes = " << join(cfg.sample_sizes) << '\n'
    << "lambda_grid = " << join(cfg.lambda_grid) << '\n'
    << "alpha_grid = " << join(cfg.alpha_grid) << '\n'
    << "replicates = " << cfg.replicates << '\n'
    << "tuning_mode = " << to_string(cfg.tuning_mode) << '\n'
    << "rho = " << cfg.solver.rho << '\n'
    << "max_iter = " << cfg.solver.max_iter << '\n'
    << "eps_abs = " << cfg.solver.eps_abs << '\n'
    << "eps_rel = " << cfg.solver.eps_rel << '\n'
    << "adaptive_rho = " << (cfg.solver.adaptive_rho ? "true" : "false") << '\n'
    << "output_dir = " << cfg.output_dir.string() << '\n'
    << "workers = " << cfg.workers << '\n'
    << "demean = " << (cfg.demean ? "true" : "false") << '\n'
    << "edge_tol = " << cfg.edge_tol << '\n'
    << "write_edges = " << (cfg.write_edges ? "true" : "false") << '\n'
    << "write_traces = " << (cfg.write_traces ? "true" : "false") << '\n'
    << "report_deviation = " << (cfg.report_deviation ? "true" : "false") << '\n';
  return s.str();
}

}  // namespace tscig
