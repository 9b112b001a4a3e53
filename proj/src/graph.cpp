#include "tscig/graph.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include "tscig/error.hpp"

namespace tscig {

EdgeSet::EdgeSet(Index p) : p_(p) {
  if (p < 0) throw Error(ErrorKind::Structural, "node count must be nonnegative");
}

void EdgeSet::insert(Index i, Index j) {
  if (i == j) throw Error(ErrorKind::Structural, "self-loop on node " + std::to_string(i));
  if (i < 0 || j < 0 || i >= p_ || j >= p_) {
    throw Error(ErrorKind::Structural, "edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                           ") outside [0, " + std::to_string(p_) + ")");
  }
  edges_.emplace(std::min(i, j), std::max(i, j));
}

bool EdgeSet::contains(Index i, Index j) const {
  return edges_.count({std::min(i, j), std::max(i, j)}) > 0;
}

double EdgeSet::density() const noexcept {
  if (p_ < 2) return 0.0;
  return static_cast<double>(edges_.size()) / (0.5 * static_cast<double>(p_ * (p_ - 1)));
}

EdgeSet infer_edges(const BlockSymMatrix& omega, double tol) {
  EdgeSet edges(omega.blocks());
  for (Index i = 0; i < omega.blocks(); ++i) {
    for (Index j = i + 1; j < omega.blocks(); ++j) {
      if (omega.block_norm(i, j) > tol) edges.insert(i, j);
    }
  }
  return edges;
}

double default_omega_tolerance(const BlockSymMatrix& omega) {
  double largest = 0.0;
  for (Index i = 0; i < omega.blocks(); ++i) {
    for (Index j = i + 1; j < omega.blocks(); ++j) largest = std::max(largest, omega.block_norm(i, j));
  }
  return 1e-3 * largest;
}

MetricsRecord score(const EdgeSet& est, const EdgeSet& truth) {
  if (est.p() != truth.p()) {
    throw Error(ErrorKind::Structural, "edge sets over different node counts (" +
                                           std::to_string(est.p()) + " vs " +
                                           std::to_string(truth.p()) + ")");
  }
  std::vector<EdgeSet::Edge> common;
  std::set_intersection(est.edges().begin(), est.edges().end(), truth.edges().begin(),
                        truth.edges().end(), std::back_inserter(common));
  const double hits = static_cast<double>(common.size());

  MetricsRecord rec;
  rec.precision = est.empty() ? (truth.empty() ? 1.0 : 0.0) : hits / static_cast<double>(est.size());
  rec.recall = truth.empty() ? (est.empty() ? 1.0 : 0.0) : hits / static_cast<double>(truth.size());
  const double denom = rec.precision + rec.recall;
  rec.f1 = denom > 0.0 ? 2.0 * rec.precision * rec.recall / denom : 0.0;
  return rec;
}

void write_edges_csv(const EdgeSet& edges, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << "# p=" << edges.p() << '\n';
  for (const auto& [i, j] : edges.edges()) out << i << ',' << j << '\n';
}

EdgeSet read_edges_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# p=", 0) != 0) {
    throw Error(ErrorKind::Data, "edge file " + path.string() + " lacks '# p=' header");
  }
  EdgeSet edges(std::stol(line.substr(4)));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Index i = 0;
    Index j = 0;
    char comma = 0;
    if (!(ss >> i >> comma >> j) || comma != ',') {
      throw Error(ErrorKind::Data, "bad edge line '" + line + "' in " + path.string());
    }
    edges.insert(i, j);
  }
  return edges;
}

void write_adjacency_csv(const EdgeSet& edges, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  for (Index i = 0; i < edges.p(); ++i) {
    for (Index j = 0; j < edges.p(); ++j) {
      if (j) out << ',';
      out << (i != j && edges.contains(i, j) ? 1 : 0);
    }
    out << '\n';
  }
}

}  // namespace tscig
