#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tscig/error.hpp"
#include "tscig/solver.hpp"

using namespace tscig;

namespace {

BlockSymMatrix random_covariance(Index blocks, Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return BlockSymMatrix::symmetrized(oracle::random_spd(blocks * m, 3 * blocks * m, 0.05, rng), m);
}

AdmmConfig tight() {
  AdmmConfig cfg;
  cfg.eps_abs = 1e-10;
  cfg.eps_rel = 1e-9;
  cfg.max_iter = 20000;
  return cfg;
}

}  // namespace

TEST_CASE("soft threshold") {
  CHECK(soft_threshold(1.5, 0.5) == 1.0);
  CHECK(soft_threshold(-0.3, 0.5) == 0.0);
  CHECK(soft_threshold(-2.0, 0.5) == -1.5);
  CHECK(soft_threshold(0.5, 0.5) == 0.0);
}

TEST_CASE("sparse-group prox hand values") {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
  v.block(0, 0, 2, 2) << 5.0, 1.5, 1.5, 3.0;
  v.block(2, 2, 2, 2) << 4.0, -0.3, -0.3, 2.0;
  v.block(0, 2, 2, 2) << 2.0, 0.0, 0.0, 2.0;
  v.block(2, 0, 2, 2) = v.block(0, 2, 2, 2).transpose();
  const auto out = prox_sparse_group(BlockSymMatrix(v, 2), 1.0, std::sqrt(2.0) / 2.0);

  // diagonal pass-through
  CHECK(out(0, 0) == 5.0);
  CHECK(out(1, 1) == 3.0);
  CHECK(out(2, 2) == 4.0);
  // within-block off-diagonals: lasso only
  CHECK(out(0, 1) == 0.5);
  CHECK(out(2, 3) == 0.0);
  // off-diagonal block: soft by 1 -> identity (norm sqrt 2) -> scaled by 1/2
  CHECK(std::abs(out(0, 2) - 0.5) < 1e-12);
  CHECK(std::abs(out(1, 3) - 0.5) < 1e-12);
  CHECK(out(0, 3) == 0.0);
  CHECK(out.matrix() == out.matrix().transpose());
}

TEST_CASE("sparse-group prox zeroes weak blocks and degenerates at alpha limits") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd raw(9, 9);
    for (Index i = 0; i < raw.size(); ++i) raw.data()[i] = z(rng);
    const auto v = BlockSymMatrix::symmetrized(raw, 3);

    // kappa2 = 0: pure elementwise soft-thresholding off the diagonal
    const auto lasso = prox_sparse_group(v, 0.4, 0.0);
    for (Index r = 0; r < 9; ++r) {
      for (Index c = 0; c < 9; ++c) {
        const double expected = r == c ? v(r, c) : soft_threshold(v(r, c), 0.4);
        CHECK(lasso(r, c) == doctest::Approx(expected).epsilon(1e-14));
      }
    }
    // kappa1 = 0: pure block shrinkage, diagonal blocks untouched
    const auto group = prox_sparse_group(v, 0.0, 0.8);
    for (Index i = 0; i < 3; ++i) {
      CHECK(group.block(i, i) == v.block(i, i));
      for (Index j = i + 1; j < 3; ++j) {
        const double norm = v.block_norm(i, j);
        const double scale = norm <= 0.8 ? 0.0 : 1.0 - 0.8 / norm;
        CHECK((group.block(i, j) - scale * v.block(i, j)).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
  CHECK_THROWS_AS(prox_sparse_group(BlockSymMatrix::identity(2, 2), -1.0, 0.0), Error);
}

TEST_CASE("log-det prox") {
  SUBCASE("identity fixed point") {
    const auto id = BlockSymMatrix::identity(2, 1);
    CHECK((prox_logdet(id, id, 1.0).matrix() - id.matrix()).norm() < 1e-14);
  }
  SUBCASE("scalar closed form") {
    Eigen::MatrixXd s(1, 1);
    s << 2.0;
    const auto out = prox_logdet(BlockSymMatrix::zeros(1, 1), BlockSymMatrix(s, 1), 1.0);
    CHECK(std::abs(out(0, 0) - (std::sqrt(2.0) - 1.0)) < 1e-14);
    CHECK(std::abs(out(0, 0) - 0.414214) < 1e-6);
  }
  SUBCASE("stationarity on random inputs") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> z(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::MatrixXd raw(6, 6);
      for (Index i = 0; i < raw.size(); ++i) raw.data()[i] = 3.0 * z(rng);
      const auto a = BlockSymMatrix::symmetrized(raw, 2);
      const auto s = BlockSymMatrix::symmetrized(oracle::random_spd(6, 12, 0.1, rng), 2);
      const auto omega = prox_logdet(a, s, 2.0);
      const Eigen::MatrixXd resid = s.matrix() - omega.matrix().inverse() +
                                    2.0 * (omega.matrix() - a.matrix());
      CHECK(resid.norm() < 1e-8);
      CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(omega.matrix()).eigenvalues().minCoeff() > 0.0);
    }
  }
  CHECK_THROWS_AS(prox_logdet(BlockSymMatrix::identity(2, 1), BlockSymMatrix::identity(2, 1), 0.0),
                  Error);
}

TEST_CASE("objective values") {
  const auto id = BlockSymMatrix::identity(3, 2);
  CHECK(objective(id, id, {0.0, 1.0}) == doctest::Approx(6.0));
  CHECK(objective(id, id, {0.7, 0.3}) == doctest::Approx(6.0));

  Eigen::MatrixXd two = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  CHECK(std::abs(objective(BlockSymMatrix(two, 1), BlockSymMatrix::identity(2, 1), {0.0, 1.0}) -
                 (4.0 - 2.0 * std::log(2.0))) < 1e-12);

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  try {
    objective(BlockSymMatrix(indefinite, 1), BlockSymMatrix::identity(2, 1), {0.0, 1.0});
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("penalty counts ordered pairs") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(4, 4);
  x(0, 1) = x(1, 0) = 0.5;  // within node 0's block
  x(0, 2) = x(2, 0) = 3.0;  // cross block
  x(1, 3) = x(3, 1) = 4.0;
  const BlockSymMatrix omega(x, 2);
  // l1 off-diagonal: 2*(0.5 + 3 + 4) = 15; group: 2 * 5 = 10
  CHECK(sparse_group_penalty(omega, {1.0, 1.0}) == doctest::Approx(15.0));
  CHECK(sparse_group_penalty(omega, {1.0, 0.0}) == doctest::Approx(10.0));
  CHECK(sparse_group_penalty(omega, {2.0, 0.5}) == doctest::Approx(15.0 + 10.0));
}

TEST_CASE("dual update") {
  const auto zero = BlockSymMatrix::zeros(2, 2);
  const auto id = BlockSymMatrix::identity(2, 2);
  CHECK(dual_update(zero, id, id).matrix().isZero(0.0));
  CHECK(dual_update(zero, id, zero).matrix() == id.matrix());
  auto u = zero;
  for (int k = 0; k < 3; ++k) u = dual_update(u, id, zero);
  CHECK(u.matrix() == 3.0 * id.matrix());
  CHECK_THROWS_AS(dual_update(zero, BlockSymMatrix::zeros(1, 2), zero), Error);
}

TEST_CASE("block matrix rejects asymmetric input") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  a(0, 1) = 1e-300;
  try {
    BlockSymMatrix(a, 1);
    FAIL("expected structural error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Structural);
  }
  CHECK_THROWS_AS(BlockSymMatrix(Eigen::MatrixXd::Identity(3, 3), 2), Error);
  const auto sym = BlockSymMatrix::symmetrized(a, 1);
  CHECK(sym.matrix() == sym.matrix().transpose());
}

TEST_CASE("admm: unpenalized solve recovers the inverse") {
  const auto s = random_covariance(5, 2, 21);
  const auto res = admm_solve(s, {0.0, 1.0}, {});
  REQUIRE(res.converged);
  const Eigen::MatrixXd inv = s.matrix().inverse();
  CHECK((res.omega.matrix() - inv).norm() / inv.norm() < 1e-4);
}

TEST_CASE("admm: identity covariance is a fixed point") {
  const auto id = BlockSymMatrix::identity(4, 2);
  for (double lambda : {0.0, 0.1, 1.0, 10.0}) {
    const auto res = admm_solve(id, {lambda, 1.0}, {});
    CHECK(res.converged);
    CHECK((res.omega.matrix() - id.matrix()).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((res.w.matrix() - id.matrix()).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("admm: KKT certificate on random instances") {
  for (std::uint64_t seed = 100; seed < 106; ++seed) {
    const auto s = random_covariance(5, 2, seed);
    for (double alpha : {0.0, 0.5, 1.0}) {
      const PenaltyConfig pen{0.1, alpha};
      const auto res = admm_solve(s, pen, tight());
      REQUIRE(res.converged);
      CHECK(oracle::kkt_residual(s.matrix(), res.w.matrix(), 2, pen.lambda, pen.alpha) < 1e-5);
    }
  }
}

TEST_CASE("admm: iterate invariants") {
  const auto s = random_covariance(4, 3, 77);
  const auto res = admm_solve(s, {0.3, 0.5}, {}, true);
  CHECK(res.omega.matrix() == res.omega.matrix().transpose());
  CHECK(res.w.matrix() == res.w.matrix().transpose());
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(res.omega.matrix()).eigenvalues().minCoeff() > 0.0);
  CHECK(static_cast<int>(res.trace.size()) == res.iterations);
  CHECK(res.objective == doctest::Approx(objective(res.omega, s, {0.3, 0.5})).epsilon(1e-10));
  if (res.converged) {
    const double dim = static_cast<double>(s.dim());
    CHECK(res.primal_residual <= dim * 1e-6 + 1e-5 * std::max(res.omega.matrix().norm(), res.w.matrix().norm()));
  }
}

TEST_CASE("admm: W carries exact zeros, Omega does not") {
  const auto s = random_covariance(6, 2, 31);
  const auto res = admm_solve(s, {0.5, 0.5}, {});
  int zero_blocks = 0;
  for (Index i = 0; i < 6; ++i) {
    for (Index j = i + 1; j < 6; ++j) {
      if (res.w.block_norm(i, j) == 0.0) {
        ++zero_blocks;
        CHECK(res.omega.block_norm(i, j) < 1e-3);
      }
    }
  }
  CHECK(zero_blocks > 0);
}

TEST_CASE("admm: large lambda empties every cross block") {
  const auto s = random_covariance(5, 2, 8);
  const auto res = admm_solve(s, {100.0, 0.5}, {});
  for (Index i = 0; i < 5; ++i) {
    for (Index j = i + 1; j < 5; ++j) CHECK(res.w.block_norm(i, j) == 0.0);
  }
}

TEST_CASE("admm: budget exhaustion is reported, not thrown") {
  const auto s = random_covariance(5, 2, 3);
  AdmmConfig cfg;
  cfg.max_iter = 2;
  const auto res = admm_solve(s, {0.1, 0.5}, cfg);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations == 2);
}

TEST_CASE("admm: adaptive rho reaches the same optimum") {
  const auto s = random_covariance(5, 2, 44);
  AdmmConfig adaptive = tight();
  adaptive.adaptive_rho = true;
  adaptive.rho = 0.05;
  const auto a = admm_solve(s, {0.1, 0.5}, adaptive);
  const auto b = admm_solve(s, {0.1, 0.5}, tight());
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK((a.omega.matrix() - b.omega.matrix()).norm() < 1e-6);
}

TEST_CASE("admm: parameter validation") {
  const auto s = BlockSymMatrix::identity(2, 2);
  CHECK_THROWS_AS(admm_solve(s, {-1.0, 0.5}, {}), Error);
  CHECK_THROWS_AS(admm_solve(s, {0.1, 1.5}, {}), Error);
  AdmmConfig bad;
  bad.rho = 0.0;
  CHECK_THROWS_AS(admm_solve(s, {0.1, 0.5}, bad), Error);
}
