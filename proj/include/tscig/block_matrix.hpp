#pragma once

#include <Eigen/Dense>

namespace tscig {

using Index = Eigen::Index;

/// Symmetric (mp x mp) matrix viewed as a p x p grid of m x m blocks.
///
/// Node i (0-based) owns rows/columns [i*m, (i+1)*m), so block(i, j) is the
/// m x m cross block between nodes i and j. Symmetry is exact: the checked
/// constructor rejects any matrix whose transpose differs bitwise, and
/// `symmetrized` averages a near-symmetric matrix into an exactly symmetric one.
class BlockSymMatrix {
 public:
  BlockSymMatrix() = default;

  /// Throws Error(Structural) unless `data` is square, exactly symmetric,
  /// finite, and its size is a positive multiple of `block_size`.
  BlockSymMatrix(Eigen::MatrixXd data, Index block_size);

  static BlockSymMatrix symmetrized(const Eigen::MatrixXd& data, Index block_size);
  static BlockSymMatrix zeros(Index blocks, Index block_size);
  static BlockSymMatrix identity(Index blocks, Index block_size);

  Index blocks() const noexcept { return blocks_; }
  Index block_size() const noexcept { return block_size_; }
  Index dim() const noexcept { return data_.rows(); }

  const Eigen::MatrixXd& matrix() const noexcept { return data_; }
  double operator()(Index row, Index col) const { return data_(row, col); }

  auto block(Index i, Index j) const {
    return data_.block(i * block_size_, j * block_size_, block_size_, block_size_);
  }

  /// Frobenius norm of block(i, j).
  double block_norm(Index i, Index j) const { return block(i, j).norm(); }

  bool same_shape(const BlockSymMatrix& other) const noexcept {
    return blocks_ == other.blocks_ && block_size_ == other.block_size_;
  }

 private:
  struct Trusted {};
  BlockSymMatrix(Trusted, Eigen::MatrixXd data, Index block_size);

  Eigen::MatrixXd data_;
  Index blocks_ = 0;
  Index block_size_ = 1;
};

}  // namespace tscig
