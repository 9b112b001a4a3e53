#include "tscig/embedding.hpp"

#include <string>

#include "tscig/error.hpp"

namespace tscig {

LaggedSampleSet build_lagged_embedding(const TimeSeries& x, Index lag) {
  if (x.p() < 2) {
    throw Error(ErrorKind::Data, "embedding needs at least two component series");
  }
  if (lag < 0 || lag >= x.n()) {
    throw Error(ErrorKind::InvalidLag, "lag " + std::to_string(lag) + " must lie in [0, " +
                                           std::to_string(x.n()) + ")");
  }
  const Index m = lag + 1;
  const Index n_eff = x.n() - lag;
  const auto& v = x.values();

  LaggedSampleSet y;
  y.p = x.p();
  y.lag = lag;
  y.samples.resize(m * x.p(), n_eff);
  for (Index i = 0; i < x.p(); ++i) {
    for (Index r = 0; r < m; ++r) {
      // column c is time t = c + lag; entry is x_i(t - r)
      y.samples.row(i * m + r) = v.row(i).segment(lag - r, n_eff);
    }
  }
  return y;
}

BlockSymMatrix sample_covariance(const LaggedSampleSet& y) {
  if (y.effective_n() < 1) {
    throw Error(ErrorKind::Data, "sample covariance needs at least one sample");
  }
  const Index dim = y.samples.rows();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(y.samples, 1.0 / static_cast<double>(y.effective_n()));
  cov.triangularView<Eigen::StrictlyUpper>() = cov.transpose();
  return BlockSymMatrix(std::move(cov), y.block_size());
}

}  // namespace tscig
