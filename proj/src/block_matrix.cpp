#include "tscig/block_matrix.hpp"

#include <string>

#include "tscig/error.hpp"

namespace tscig {

namespace {

void check_shape(const Eigen::MatrixXd& data, Index block_size) {
  if (block_size < 1) {
    throw Error(ErrorKind::Structural, "block size must be positive");
  }
  if (data.rows() != data.cols()) {
    throw Error(ErrorKind::Structural, "matrix is not square (" + std::to_string(data.rows()) +
                                           " x " + std::to_string(data.cols()) + ")");
  }
  if (data.rows() == 0 || data.rows() % block_size != 0) {
    throw Error(ErrorKind::Structural, "dimension " + std::to_string(data.rows()) +
                                           " is not a positive multiple of block size " +
                                           std::to_string(block_size));
  }
  if (!data.allFinite()) {
    throw Error(ErrorKind::Structural, "matrix has non-finite entries");
  }
}

}  // namespace

BlockSymMatrix::BlockSymMatrix(Eigen::MatrixXd data, Index block_size) {
  check_shape(data, block_size);
  for (Index c = 0; c < data.cols(); ++c) {
    for (Index r = c + 1; r < data.rows(); ++r) {
      if (data(r, c) != data(c, r)) {
        throw Error(ErrorKind::Structural, "matrix is not symmetric at (" + std::to_string(r) +
                                               ", " + std::to_string(c) + ")");
      }
    }
  }
  blocks_ = data.rows() / block_size;
  block_size_ = block_size;
  data_ = std::move(data);
}

BlockSymMatrix::BlockSymMatrix(Trusted, Eigen::MatrixXd data, Index block_size)
    : data_(std::move(data)), blocks_(data_.rows() / block_size), block_size_(block_size) {}

BlockSymMatrix BlockSymMatrix::symmetrized(const Eigen::MatrixXd& data, Index block_size) {
  check_shape(data, block_size);
  // (a + b) * 0.5 is commutative in IEEE arithmetic, so the result is bitwise symmetric.
  Eigen::MatrixXd sym = (data + data.transpose()) * 0.5;
  return BlockSymMatrix(Trusted{}, std::move(sym), block_size);
}

BlockSymMatrix BlockSymMatrix::zeros(Index blocks, Index block_size) {
  if (blocks < 1 || block_size < 1) {
    throw Error(ErrorKind::Structural, "block counts must be positive");
  }
  const Index dim = blocks * block_size;
  return BlockSymMatrix(Trusted{}, Eigen::MatrixXd::Zero(dim, dim), block_size);
}

BlockSymMatrix BlockSymMatrix::identity(Index blocks, Index block_size) {
  if (blocks < 1 || block_size < 1) {
    throw Error(ErrorKind::Structural, "block counts must be positive");
  }
  const Index dim = blocks * block_size;
  return BlockSymMatrix(Trusted{}, Eigen::MatrixXd::Identity(dim, dim), block_size);
}

}  // namespace tscig
