#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <utility>

#include "tscig/block_matrix.hpp"

namespace tscig {

/// Undirected simple graph on nodes 0..p-1; pairs are stored as (i, j), i < j.
class EdgeSet {
 public:
  using Edge = std::pair<Index, Index>;

  EdgeSet() = default;
  explicit EdgeSet(Index p);

  /// Order of i, j is irrelevant. Throws Error(Structural) on self-loops or
  /// out-of-range nodes.
  void insert(Index i, Index j);
  bool contains(Index i, Index j) const;

  Index p() const noexcept { return p_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  const std::set<Edge>& edges() const noexcept { return edges_; }

  /// Fraction of the p(p-1)/2 node pairs that are connected.
  double density() const noexcept;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  Index p_ = 0;
  std::set<Edge> edges_;
};

struct MetricsRecord {
  std::string method;
  Index n = 0;
  Index d = 0;
  double lambda = 0.0;
  double alpha = 0.0;
  int replicate = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double runtime_ms = 0.0;
  bool converged = false;
  int iterations = 0;
  bool failed = false;
};

/// Edge {i, j} iff ||block(i, j)||_F > tol.
EdgeSet infer_edges(const BlockSymMatrix& omega, double tol = 1e-6);

/// Threshold used when reading edges off the dense Omega iterate:
/// 1e-3 times the largest off-diagonal block norm.
double default_omega_tolerance(const BlockSymMatrix& omega);

/// Precision, recall and F1 of `est` against `truth`. An empty estimate has
/// precision 1 only when the truth is empty too, symmetrically for recall, and
/// F1 is 0 whenever precision + recall is 0.
MetricsRecord score(const EdgeSet& est, const EdgeSet& truth);

// One "i,j" line per edge, sorted, 0-based node indices, preceded by "# p=<p>".
void write_edges_csv(const EdgeSet& edges, const std::filesystem::path& path);
EdgeSet read_edges_csv(const std::filesystem::path& path);

/// p x p 0/1 matrix, comma-separated.
void write_adjacency_csv(const EdgeSet& edges, const std::filesystem::path& path);

}  // namespace tscig
