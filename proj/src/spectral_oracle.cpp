#include "tscig/spectral_oracle.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>

#include "tscig/error.hpp"

namespace tscig {

std::vector<double> FrequencyGrid::points() const {
  if (!(step > 0.0) || !(stop >= start)) {
    throw Error(ErrorKind::Parameter, "frequency grid needs step > 0 and stop >= start");
  }
  const auto count = static_cast<Index>(std::llround((stop - start) / step)) + 1;
  std::vector<double> f(count);
  for (Index k = 0; k < count; ++k) f[k] = start + static_cast<double>(k) * step;
  return f;
}

Eigen::MatrixXcd inverse_psd(std::span<const VarModel> models, double f) {
  Index p = 0;
  for (const auto& m : models) p += m.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(p, p);
  Index offset = 0;
  for (const auto& model : models) {
    const Index k = model.size();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(k, k);
    for (Index i = 1; i <= model.order(); ++i) {
      const std::complex<double> phase = std::polar(1.0, -2.0 * std::numbers::pi * f * static_cast<double>(i));
      a -= phase * model.coeffs[i - 1].cast<std::complex<double>>();
    }
    out.block(offset, offset, k, k) = a.adjoint() * a;
    offset += k;
  }
  return out;
}

EdgeSet true_edge_set(std::span<const VarModel> models, const FrequencyGrid& grid, double threshold) {
  if (!(threshold > 0.0)) throw Error(ErrorKind::Parameter, "edge threshold must be positive");
  Index p = 0;
  for (const auto& m : models) p += m.size();
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(p, p);
  for (double f : grid.points()) mass += inverse_psd(models, f).cwiseAbs();
  EdgeSet edges(p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      if (mass(i, j) > threshold) edges.insert(i, j);
    }
  }
  return edges;
}

void write_inverse_psd_trace(std::span<const VarModel> models, const FrequencyGrid& grid,
                             const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.precision(12);
  out << "f,i,j,abs_value\n";
  for (double f : grid.points()) {
    const Eigen::MatrixXd mag = inverse_psd(models, f).cwiseAbs();
    for (Index i = 0; i < mag.rows(); ++i) {
      for (Index j = i + 1; j < mag.cols(); ++j) {
        if (mag(i, j) != 0.0) out << f << ',' << i << ',' << j << ',' << mag(i, j) << '\n';
      }
    }
  }
}

}  // namespace tscig
