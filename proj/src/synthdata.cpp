#include "tscig/synthdata.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "tscig/error.hpp"

namespace tscig {

void BenchmarkSpec::validate() const {
  if (num_communities < 1 || community_size < 1) {
    throw Error(ErrorKind::Config, "community counts must be positive");
  }
  if (var_order < 1) throw Error(ErrorKind::Config, "var_order must be positive");
  if (!(density >= 0.0 && density <= 1.0)) throw Error(ErrorKind::Config, "density must lie in [0, 1]");
  if (!(coeff_min <= coeff_max)) throw Error(ErrorKind::Config, "coeff_min exceeds coeff_max");
  if (!(stability_bound > 0.0 && stability_bound < 1.0)) {
    throw Error(ErrorKind::Config, "stability_bound must lie in (0, 1)");
  }
  if (burn_in < 0) throw Error(ErrorKind::Config, "burn_in must be nonnegative");
  if (n < 1) throw Error(ErrorKind::Config, "n must be positive");
  if (max_draws < 1) throw Error(ErrorKind::Config, "max_draws must be positive");
}

std::string BenchmarkSpec::describe() const {
  std::ostringstream s;
  s << "BenchmarkSpec{communities=" << num_communities << ", size=" << community_size
    << ", order=" << var_order << ", density=" << density << ", range=[" << coeff_min << ", "
    << coeff_max << "], bound=" << stability_bound << ", burn_in=" << burn_in << ", n=" << n
    << ", seed=" << seed << "}";
  return s.str();
}

Eigen::MatrixXd companion_matrix(const VarModel& model) {
  const Index k = model.size();
  const Index q = model.order();
  if (q < 1) throw Error(ErrorKind::Parameter, "VAR model has no coefficient matrices");
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(q * k, q * k);
  for (Index i = 0; i < q; ++i) f.block(0, i * k, k, k) = model.coeffs[i];
  if (q > 1) f.block(k, 0, (q - 1) * k, (q - 1) * k).setIdentity();
  return f;
}

double companion_spectral_radius(const VarModel& model) {
  const Eigen::MatrixXd f = companion_matrix(model);
  Eigen::EigenSolver<Eigen::MatrixXd> eig(f, false);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "companion eigenvalue computation failed");
  }
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

VarModel gen_var_model(const BenchmarkSpec& spec, Rng& rng) {
  spec.validate();
  const Index k = spec.community_size;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> value(spec.coeff_min, spec.coeff_max);

  VarModel model;
  model.coeffs.assign(spec.var_order, Eigen::MatrixXd::Zero(k, k));
  for (int draw = 1; draw <= spec.max_draws; ++draw) {
    for (auto& a : model.coeffs) {
      for (Index c = 0; c < k; ++c) {
        for (Index r = 0; r < k; ++r) {
          const bool active = unit(rng) < spec.density;
          a(r, c) = active ? value(rng) : 0.0;
        }
      }
    }
    if (companion_spectral_radius(model) <= spec.stability_bound) {
      model.draws = draw;
      return model;
    }
  }
  throw Error(ErrorKind::Generation, "no stable model within " + std::to_string(spec.max_draws) +
                                         " draws for " + spec.describe());
}

std::vector<VarModel> gen_benchmark_models(const BenchmarkSpec& spec, std::uint64_t replicate) {
  spec.validate();
  std::vector<VarModel> models;
  models.reserve(spec.num_communities);
  for (int q = 0; q < spec.num_communities; ++q) {
    Rng rng = make_stream(spec.seed, StreamTag::Model, {replicate, static_cast<std::uint64_t>(q)});
    models.push_back(gen_var_model(spec, rng));
  }
  return models;
}

TimeSeries simulate_var(std::span<const VarModel> models, Index n, Index burn_in, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::Parameter, "sample count must be positive");
  if (burn_in < 0) throw Error(ErrorKind::Parameter, "burn-in must be nonnegative");
  if (models.empty()) throw Error(ErrorKind::Parameter, "no models to simulate");
  Index p = 0;
  for (const auto& model : models) {
    if (companion_spectral_radius(model) >= 1.0) {
      throw Error(ErrorKind::Domain, "refusing to simulate an unstable VAR model");
    }
    p += model.size();
  }

  std::vector<std::uint64_t> seeds(models.size());
  for (auto& s : seeds) s = rng();

  const Index total = burn_in + n;
  Eigen::MatrixXd out(p, n);
  Index row = 0;
  for (std::size_t c = 0; c < models.size(); ++c) {
    const VarModel& model = models[c];
    const Index k = model.size();
    const Index q = model.order();
    Rng stream(seeds[c]);
    std::normal_distribution<double> noise(0.0, 1.0);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(k, total);
    for (Index t = 0; t < total; ++t) {
      for (Index r = 0; r < k; ++r) x(r, t) = noise(stream);
      for (Index i = 1; i <= q && i <= t; ++i) x.col(t) += model.coeffs[i - 1] * x.col(t - i);
    }
    out.block(row, 0, k, n) = x.rightCols(n);
    row += k;
  }
  return TimeSeries(std::move(out));
}

TimeSeries simulate_benchmark(const BenchmarkSpec& spec, std::span<const VarModel> models,
                              std::uint64_t replicate, Index n) {
  Rng rng = make_stream(spec.seed, StreamTag::Simulation, {replicate, static_cast<std::uint64_t>(n)});
  return simulate_var(models, n, spec.burn_in, rng);
}

void write_models_csv(std::span<const VarModel> models, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.precision(17);
  out << "community,lag,row,col,value\n";
  for (std::size_t c = 0; c < models.size(); ++c) {
    for (Index lag = 0; lag < models[c].order(); ++lag) {
      const auto& a = models[c].coeffs[lag];
      for (Index r = 0; r < a.rows(); ++r) {
        for (Index col = 0; col < a.cols(); ++col) {
          out << c << ',' << lag + 1 << ',' << r << ',' << col << ',' << a(r, col) << '\n';
        }
      }
    }
  }
}

std::vector<VarModel> read_models_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::map<std::tuple<Index, Index, Index, Index>, double> entries;
  std::map<Index, std::pair<Index, Index>> shape;  // community -> (order, size)
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Index c = 0, lag = 0, r = 0, col = 0;
    double v = 0.0;
    char sep[4];
    if (!(ss >> c >> sep[0] >> lag >> sep[1] >> r >> sep[2] >> col >> sep[3] >> v) || lag < 1 ||
        c < 0 || r < 0 || col < 0) {
      throw Error(ErrorKind::Data, "bad model line '" + line + "' in " + path.string());
    }
    entries[{c, lag, r, col}] = v;
    auto& [order, size] = shape[c];
    order = std::max(order, lag);
    size = std::max({size, r + 1, col + 1});
  }
  if (entries.empty()) throw Error(ErrorKind::Data, "no model entries in " + path.string());
  if (shape.rbegin()->first + 1 != static_cast<Index>(shape.size())) {
    throw Error(ErrorKind::Data, "community indices are not contiguous in " + path.string());
  }
  std::vector<VarModel> models(shape.size());
  for (const auto& [c, dims] : shape) {
    models[c].coeffs.assign(dims.first, Eigen::MatrixXd::Zero(dims.second, dims.second));
  }
  for (const auto& [key, v] : entries) {
    const auto& [c, lag, r, col] = key;
    models[c].coeffs[lag - 1](r, col) = v;
  }
  return models;
}

}  // namespace tscig
