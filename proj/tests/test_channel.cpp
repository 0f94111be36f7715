#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "secrecy/regions.hpp"

using namespace secrecy;

namespace {

SymMatrix scalar(double v) { return SymMatrix(Matrix::Constant(1, 1, v)); }

ChannelInstance reference_sadbc() {
  const Matrix I = Matrix::Identity(1, 1);
  return ChannelInstance(I, I, I, scalar(1.0), scalar(1.5), scalar(2.0),
                         InputConstraint::covariance(scalar(2.0)));
}

Matrix random_invertible(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  for (;;) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = g(rng);
    if (std::abs(m.determinant()) > 0.1) return m;
  }
}

SymMatrix random_pd(std::mt19937_64& rng, int dim, double ridge = 0.5) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = g(rng);
  return SymMatrix(Matrix(m * m.transpose() + ridge * Matrix::Identity(dim, dim)));
}

}  // namespace

TEST_CASE("constraint cap") {
  const auto cov = InputConstraint::covariance(scalar(2.0));
  CHECK(cov.cap(1)(0, 0) == doctest::Approx(2.0));
  const auto pow = InputConstraint::power(3.0);
  const SymMatrix cap = pow.cap(2);
  CHECK(cap(0, 0) == doctest::Approx(3.0));
  CHECK(cap(0, 1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(InputConstraint::power(-1.0), std::invalid_argument);
}

TEST_CASE("construction validates noise and shapes") {
  const Matrix I = Matrix::Identity(1, 1);
  CHECK_THROWS_AS(ChannelInstance(I, I, I, scalar(-1.0), scalar(1.0), scalar(1.0),
                                  InputConstraint::power(1.0)),
                  std::invalid_argument);
  // Gain column count must match t everywhere.
  CHECK_THROWS_AS(ChannelInstance(I, Matrix::Ones(1, 2), I, scalar(1.0), scalar(1.0),
                                  scalar(1.0), InputConstraint::power(1.0)),
                  std::invalid_argument);
}

TEST_CASE("classification taxonomy") {
  CHECK(classify(reference_sadbc()).tag == ChannelTag::SADBC);

  // Aligned but with crossing noise ordering: SAMBC.
  const Matrix I2 = Matrix::Identity(2, 2);
  Matrix n1 = Matrix::Identity(2, 2);
  Matrix n2 = Matrix::Identity(2, 2);
  n2(0, 0) = 2.0;
  n2(1, 1) = 0.5;
  const ChannelInstance sambc(I2, I2, I2, SymMatrix(n1), SymMatrix(n2),
                              SymMatrix(Matrix(3.0 * I2)),
                              InputConstraint::power(1.0));
  CHECK(classify(sambc).tag == ChannelTag::SAMBC);

  // Row-vector users, multi-row eavesdropper: MISOME.
  Matrix h1(1, 2), h2(1, 2), h3(2, 2);
  h1 << 1.0, 0.0;
  h2 << 0.5, 0.5;
  h3 << 0.3, 0.1, 0.0, 0.2;
  const ChannelInstance misome(h1, h2, h3, scalar(1.0), scalar(1.0),
                               SymMatrix(Matrix(Matrix::Identity(2, 2))),
                               InputConstraint::power(10.0));
  CHECK(classify(misome).tag == ChannelTag::MISOME);

  // 2x2 general gains: SGMBC.
  std::mt19937_64 rng(3);
  const ChannelInstance general(random_invertible(rng, 2), random_invertible(rng, 2),
                                random_invertible(rng, 2), random_pd(rng, 2),
                                random_pd(rng, 2), random_pd(rng, 2),
                                InputConstraint::power(1.0));
  CHECK(classify(general).tag == ChannelTag::SGMBC);
}

TEST_CASE("aligned_from_general preserves SDPC rates") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelInstance general(
        random_invertible(rng, 2), random_invertible(rng, 2),
        random_invertible(rng, 2), random_pd(rng, 2), random_pd(rng, 2),
        random_pd(rng, 2), InputConstraint::covariance(random_pd(rng, 2)));
    const ChannelInstance aligned = aligned_from_general(general);
    CHECK(aligned.aligned());

    const SymMatrix cap = general.constraint.S;
    const CovarianceSplit split(SymMatrix(Matrix(0.25 * cap.mat())),
                                SymMatrix(Matrix(0.25 * cap.mat())));
    for (const auto& perm :
         {Permutation::identity(2), Permutation(std::vector<int>{1, 0})}) {
      const auto before = sdpc_rates(perm, split, general);
      const auto after = sdpc_rates(perm, split, aligned);
      CHECK(before[0] == doctest::Approx(after[0]).epsilon(1e-9));
      CHECK(before[1] == doctest::Approx(after[1]).epsilon(1e-9));
    }
  }
}

TEST_CASE("aligned_from_general rejects singular gains") {
  const Matrix I = Matrix::Identity(2, 2);
  Matrix sing = Matrix::Zero(2, 2);
  sing(0, 0) = 1.0;
  std::mt19937_64 rng(1);
  const ChannelInstance ch(sing, I, I, random_pd(rng, 2), SymMatrix(I), SymMatrix(I),
                           InputConstraint::power(1.0));
  CHECK_THROWS_AS(aligned_from_general(ch), std::domain_error);
}
