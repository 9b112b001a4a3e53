#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tscig/embedding.hpp"
#include "tscig/error.hpp"
#include "tscig/evaluation.hpp"

using namespace tscig;

TEST_CASE("covariance deviation") {
  const auto s = BlockSymMatrix::identity(3, 2);
  const auto same = covariance_deviation(s, s, 100);
  CHECK(same.max_abs_deviation == 0.0);
  CHECK(same.m == 2);
  CHECK(same.p == 3);
  CHECK(same.predicted_rate == doctest::Approx(std::sqrt(std::log(6.0) / 100.0)));

  Eigen::MatrixXd bumped = s.matrix();
  bumped(0, 0) += 0.1;
  CHECK(covariance_deviation(BlockSymMatrix(bumped, 2), s, 10).max_abs_deviation ==
        doctest::Approx(0.1));
  CHECK_THROWS_AS(covariance_deviation(s, BlockSymMatrix::identity(2, 2), 10), Error);
}

TEST_CASE("covariance deviation is scale covariant and permutation equivariant") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd a = oracle::random_spd(6, 10, 0.1, rng);
    const Eigen::MatrixXd b = oracle::random_spd(6, 10, 0.1, rng);
    const double base = covariance_deviation(BlockSymMatrix::symmetrized(a, 2),
                                             BlockSymMatrix::symmetrized(b, 2), 50)
                            .max_abs_deviation;
    const double scaled = covariance_deviation(BlockSymMatrix::symmetrized(-3.0 * a, 2),
                                               BlockSymMatrix::symmetrized(-3.0 * b, 2), 50)
                              .max_abs_deviation;
    CHECK(scaled == doctest::Approx(3.0 * base));
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(6);
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + 6, rng);
    const Eigen::MatrixXd pa = perm * a * perm.transpose();
    const Eigen::MatrixXd pb = perm * b * perm.transpose();
    CHECK(covariance_deviation(BlockSymMatrix::symmetrized(pa, 2), BlockSymMatrix::symmetrized(pb, 2), 50)
              .max_abs_deviation == doctest::Approx(base));
  }
}

TEST_CASE("Lyapunov doubling matches the Kronecker solve") {
  BenchmarkSpec spec;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const auto m = gen_var_model(spec, rng);
    const Eigen::MatrixXd f = companion_matrix(m);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(f.rows(), f.rows());
    q.topLeftCorner(8, 8).setIdentity();
    const Eigen::MatrixXd g = solve_discrete_lyapunov(f, q);
    const Eigen::MatrixXd ref = oracle::lyapunov_kronecker(f, q);
    CHECK((g - ref).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
  }
  Eigen::MatrixXd unstable = Eigen::MatrixXd::Identity(2, 2) * 1.1;
  CHECK_THROWS_AS(solve_discrete_lyapunov(unstable, Eigen::MatrixXd::Identity(2, 2)), Error);
}

TEST_CASE("true lagged covariance closed forms") {
  SUBCASE("white noise") {
    const std::vector<VarModel> models{VarModel{{Eigen::MatrixXd::Zero(3, 3)}}};
    CHECK(true_lagged_covariance(models, 1).matrix() == Eigen::MatrixXd::Identity(6, 6));
  }
  SUBCASE("scalar AR(1)") {
    const std::vector<VarModel> models{VarModel{{Eigen::MatrixXd::Constant(1, 1, 0.5)}}};
    const auto c = true_lagged_covariance(models, 1);
    Eigen::Matrix2d expected;
    expected << 4.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0;
    CHECK((c.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("true lagged covariance is positive definite and matches a long simulation") {
  BenchmarkSpec spec;
  spec.num_communities = 1;
  const auto models = gen_benchmark_models(spec, 0);
  const auto truth = true_lagged_covariance(models, 3);
  CHECK(truth.dim() == 32);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(truth.matrix()).eigenvalues().minCoeff() > 0.0);

  Rng rng(99);
  const auto x = simulate_var(models, 4000000, 1000, rng);
  const auto sample = sample_covariance(build_lagged_embedding(x, 3));
  CHECK((sample.matrix() - truth.matrix()).cwiseAbs().maxCoeff() < 1e-2);
}
