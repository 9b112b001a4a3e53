#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "tscig/evaluation.hpp"
#include "tscig/spectral_oracle.hpp"

using namespace tscig;

TEST_CASE("frequency grid is closed with 51 points") {
  const auto f = FrequencyGrid{}.points();
  REQUIRE(f.size() == 51);
  CHECK(f.front() == 0.0);
  CHECK(f.back() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("inverse PSD examples") {
  SUBCASE("white noise") {
    const std::vector<VarModel> models{VarModel{{Eigen::MatrixXd::Zero(3, 3)}}};
    for (double f : {0.0, 0.13, 0.5}) {
      CHECK((inverse_psd(models, f) - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
    }
  }
  SUBCASE("scalar AR(1) at f = 0") {
    const std::vector<VarModel> models{VarModel{{Eigen::MatrixXd::Constant(1, 1, 0.5)}}};
    CHECK(std::abs(inverse_psd(models, 0.0)(0, 0) - 0.25) < 1e-15);
    // |1 - 0.5 e^{-j 2 pi f}|^2 = 1.25 - cos(2 pi f)
    CHECK(std::abs(inverse_psd(models, 0.2)(0, 0).real() - (1.25 - std::cos(2 * M_PI * 0.2))) < 1e-14);
  }
  SUBCASE("coupled 2-dim AR(1)") {
    Eigen::MatrixXd a(2, 2);
    a << 0.5, 0.2, 0.0, 0.5;
    const std::vector<VarModel> models{VarModel{{a}}};
    // A(f) = [[1 - 0.5e, -0.2e], [0, 1 - 0.5e]], e = exp(-j 2 pi f);
    // [A^H A]_12 = conj(1 - 0.5e) * (-0.2e) = -0.2e + 0.1
    const double f = 0.1;
    const std::complex<double> e = std::polar(1.0, -2 * M_PI * f);
    const std::complex<double> expected = -0.2 * e + 0.1;
    CHECK(std::abs(inverse_psd(models, f)(0, 1) - expected) < 1e-14);
    CHECK(std::abs(expected) > 0.05);
    CHECK(true_edge_set(models).contains(0, 1));
  }
}

TEST_CASE("inverse PSD is Hermitian and block diagonal") {
  BenchmarkSpec spec;
  spec.num_communities = 3;
  const auto models = gen_benchmark_models(spec, 1);
  for (double f : FrequencyGrid{}.points()) {
    const Eigen::MatrixXcd s = inverse_psd(models, f);
    CHECK((s - s.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    for (Index i = 0; i < 24; ++i) {
      for (Index j = 0; j < 24; ++j) {
        if (i / 8 != j / 8) CHECK(s(i, j) == std::complex<double>(0.0, 0.0));
      }
    }
  }
}

TEST_CASE("diagonal coefficients give an empty true graph") {
  VarModel m;
  m.coeffs = {Eigen::Vector3d(0.5, -0.2, 0.3).asDiagonal().toDenseMatrix(),
              Eigen::Vector3d(0.1, 0.0, -0.4).asDiagonal().toDenseMatrix()};
  const std::vector<VarModel> models{m};
  CHECK(true_edge_set(models).empty());
}

TEST_CASE("inverse PSD agrees with the autocovariance route") {
  Eigen::MatrixXd a(3, 3);
  a << 0.4, 0.3, 0.0,
       -0.2, 0.5, 0.1,
       0.0, 0.25, -0.3;
  const VarModel model{{a}};
  const std::vector<VarModel> models{model};
  const auto r = autocovariances(model, 200);
  for (double f : FrequencyGrid{}.points()) {
    const Eigen::MatrixXcd brute = oracle::inverse_psd_from_autocov(r, f);
    CHECK((brute - inverse_psd(models, f)).cwiseAbs().maxCoeff() < 1e-3);
  }
}
