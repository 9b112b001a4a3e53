#include "tscig/time_series.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tscig/error.hpp"

namespace tscig {

static_assert(std::endian::native == std::endian::little,
              "binary series I/O assumes a little-endian host");

TimeSeries::TimeSeries(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw Error(ErrorKind::Data, "time series must have at least one component and one sample");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorKind::Data, "time series contains non-finite values");
  }
}

TimeSeries remove_mean(const TimeSeries& x) {
  Eigen::MatrixXd centered = x.values().colwise() - x.values().rowwise().mean();
  return TimeSeries(std::move(centered));
}

TimeSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Data, "unparseable value '" + cell + "' in " + path.string());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::Data, "ragged rows in " + path.string());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::Data, "no data in " + path.string());
  Eigen::MatrixXd values(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < values.rows(); ++i) {
    for (Index t = 0; t < values.cols(); ++t) values(i, t) = rows[i][t];
  }
  return TimeSeries(std::move(values));
}

void write_series_csv(const TimeSeries& x, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.precision(17);
  for (Index i = 0; i < x.p(); ++i) {
    for (Index t = 0; t < x.n(); ++t) {
      if (t) out << ',';
      out << x.values()(i, t);
    }
    out << '\n';
  }
}

TimeSeries read_series_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  char magic[4];
  std::uint32_t p = 0;
  std::uint64_t n = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&p), sizeof p);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in || std::memcmp(magic, kSeriesMagic, 4) != 0) {
    throw Error(ErrorKind::Data, "bad series header in " + path.string());
  }
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> values(p, n);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(sizeof(double) * p * n));
  if (!in) throw Error(ErrorKind::Data, "truncated series payload in " + path.string());
  return TimeSeries(Eigen::MatrixXd(values));
}

void write_series_binary(const TimeSeries& x, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  const auto p = static_cast<std::uint32_t>(x.p());
  const auto n = static_cast<std::uint64_t>(x.n());
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> values = x.values();
  out.write(kSeriesMagic, 4);
  out.write(reinterpret_cast<const char*>(&p), sizeof p);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(sizeof(double) * p * n));
}

TimeSeries read_series(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? read_series_binary(path) : read_series_csv(path);
}

void write_series(const TimeSeries& x, const std::filesystem::path& path) {
  if (path.extension() == ".bin") {
    write_series_binary(x, path);
  } else {
    write_series_csv(x, path);
  }
}

}  // namespace tscig
