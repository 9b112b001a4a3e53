#pragma once

#include <filesystem>

#include <Eigen/Dense>

#include "tscig/block_matrix.hpp"

namespace tscig {

/// p x n observation matrix; row i is the component series x_i(t), t = 0..n-1.
class TimeSeries {
 public:
  TimeSeries() = default;

  /// Throws Error(Data) on an empty matrix or non-finite entries.
  explicit TimeSeries(Eigen::MatrixXd values);

  Index p() const noexcept { return values_.rows(); }
  Index n() const noexcept { return values_.cols(); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

 private:
  Eigen::MatrixXd values_;
};

/// Subtracts each row's empirical mean.
TimeSeries remove_mean(const TimeSeries& x);

// CSV layout: one line per component, comma-separated samples in time order.
TimeSeries read_series_csv(const std::filesystem::path& path);
void write_series_csv(const TimeSeries& x, const std::filesystem::path& path);

// Binary layout (little-endian):
//   bytes 0..3   magic "TSCG"
//   bytes 4..7   uint32 p
//   bytes 8..15  uint64 n
//   then p*n float64 values, row-major (all of x_0, then all of x_1, ...).
inline constexpr char kSeriesMagic[4] = {'T', 'S', 'C', 'G'};
TimeSeries read_series_binary(const std::filesystem::path& path);
void write_series_binary(const TimeSeries& x, const std::filesystem::path& path);

/// Dispatches on extension: ".bin" is binary, anything else CSV.
TimeSeries read_series(const std::filesystem::path& path);
void write_series(const TimeSeries& x, const std::filesystem::path& path);

}  // namespace tscig
