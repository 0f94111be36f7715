#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
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

SymMatrix random_psd(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = g(rng);
  return SymMatrix(Matrix(m * m.transpose()));
}

// O(n^2) dominance filter + exact upper hull by angular gift wrapping.
std::vector<RatePair> brute_force_hull(std::vector<RatePair> pts) {
  pts.push_back({0.0, 0.0});
  double max1 = 0.0, max2 = 0.0;
  for (const auto& p : pts) {
    max1 = std::max(max1, p.R1);
    max2 = std::max(max2, p.R2);
  }
  pts.push_back({0.0, max2});
  pts.push_back({max1, 0.0});

  std::vector<RatePair> kept;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts)
      if ((q.R1 > p.R1 && q.R2 >= p.R2) || (q.R1 >= p.R1 && q.R2 > p.R2))
        dominated = true;
    if (!dominated) kept.push_back(p);
  }

  // Gift wrap from (0, max2) turning clockwise toward (max1, 0).
  std::vector<RatePair> hull;
  RatePair cur{0.0, max2};
  hull.push_back(cur);
  while (!(cur.R1 == max1 && cur.R2 == 0.0)) {
    RatePair next{max1, 0.0};
    for (const auto& p : kept) {
      if (p.R1 <= cur.R1 + 1e-15) continue;
      const double c = (next.R1 - cur.R1) * (p.R2 - cur.R2) -
                       (next.R2 - cur.R2) * (p.R1 - cur.R1);
      if (c > 1e-15) next = p;
    }
    hull.push_back(next);
    cur = next;
  }
  return hull;
}

RegionPointSet to_set(const std::vector<RatePair>& pts) {
  RegionPointSet s;
  for (const auto& p : pts) {
    RegionPoint rp;
    rp.rates = p;
    s.points.push_back(rp);
  }
  return s;
}

}  // namespace

TEST_CASE("gaussian_rates scalar oracle") {
  const auto ch = reference_sadbc();
  const CovarianceSplit split(scalar(1.0), scalar(1.0));
  const auto r = gaussian_rates(split, ch);
  // Hand substitution: R1 = (log2 2 - log2 1.5)/2, R2 = (log2(3.5/2.5) - log2(4/3))/2.
  CHECK(r.R1 == doctest::Approx(0.207518749639422).epsilon(1e-12));
  CHECK(r.R2 == doctest::Approx(0.035194663945699).epsilon(1e-12));
}

TEST_CASE("zero split gives zero rates") {
  const auto ch = reference_sadbc();
  const CovarianceSplit zero(SymMatrix::zero(1), SymMatrix::zero(1));
  const auto r = gaussian_rates(zero, ch);
  CHECK(r.R1 == 0.0);
  CHECK(r.R2 == 0.0);
  const auto s = sdpc_rates(Permutation(std::vector<int>{1, 0}), zero, ch);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 0.0);
}

TEST_CASE("infeasible split rejected naming the violation") {
  const auto ch = reference_sadbc();
  CHECK_THROWS_AS(gaussian_rates(CovarianceSplit(scalar(-0.5), scalar(0.1)), ch),
                  std::invalid_argument);
  CHECK_THROWS_AS(gaussian_rates(CovarianceSplit(scalar(1.5), scalar(1.5)), ch),
                  std::invalid_argument);
}

TEST_CASE("sdpc_rates permuted scalar oracle") {
  const auto ch = reference_sadbc();
  const CovarianceSplit split(scalar(1.0), scalar(1.0));
  const auto r = sdpc_rates(Permutation(std::vector<int>{1, 0}), split, ch);
  // Hand-evaluated scalar form with user 2 encoded first:
  //   R2 = (log2(2.5/1.5) - log2(3/2))/2, R1 = (log2(3/2) - log2(4/3))/2.
  CHECK(r[0] == doctest::Approx(0.084962500721156).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(0.076001546722525).epsilon(1e-12));
}

TEST_CASE("sdpc identity permutation equals gaussian rates") {
  std::mt19937_64 rng(23);
  const Matrix I = Matrix::Identity(2, 2);
  const ChannelInstance ch(
      I, I, I, SymMatrix(I), SymMatrix(Matrix(1.5 * I)), SymMatrix(Matrix(2.5 * I)),
      InputConstraint::covariance(SymMatrix(Matrix(2.0 * I))));
  for (int trial = 0; trial < 200; ++trial) {
    SymMatrix b1 = random_psd(rng, 2);
    SymMatrix b2 = random_psd(rng, 2);
    const double scale =
        2.0 / std::max(1.0, max_abs_eigenvalue(b1 + b2));
    b1 = b1 * (0.45 * scale);
    b2 = b2 * (0.45 * scale);
    const CovarianceSplit split(b1, b2);
    const auto g = gaussian_rates(split, ch);
    const auto s = sdpc_rates(Permutation::identity(2), split, ch);
    CHECK(std::abs(g.R1 - s[0]) <= 1e-12);
    CHECK(std::abs(g.R2 - s[1]) <= 1e-12);
  }
}

TEST_CASE("dpc_matrix identities") {
  std::mt19937_64 rng(29);
  const SymMatrix b1 = random_psd(rng, 3);
  const SymMatrix n1 = random_psd(rng, 3) + SymMatrix::identity(3);
  const auto d = dpc_matrix(b1, n1);
  CHECK((d.C + d.complement - Matrix::Identity(3, 3)).norm() <= 1e-12);
  // Eigenvalues of the symmetrized similarity lie in [0, 1).
  Eigen::SelfAdjointEigenSolver<Matrix> n1es(n1.mat());
  const Matrix n1half = n1es.operatorSqrt();
  const Matrix n1halfinv = n1es.operatorInverseSqrt();
  const Matrix simil = n1halfinv * b1.mat() *
                       (b1.mat() + n1.mat()).inverse() * n1half;
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (simil + simil.transpose())));
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  CHECK(es.eigenvalues().maxCoeff() < 1.0);
  CHECK(dpc_matrix(SymMatrix::zero(3), n1).C.norm() == doctest::Approx(0.0));
}

TEST_CASE("convex_closure equals brute-force hull") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<RatePair> pts;
    for (int i = 0; i < 50; ++i) pts.push_back({u(rng), u(rng)});
    const auto hull = convex_closure(to_set(pts));
    const auto oracle = brute_force_hull(pts);
    REQUIRE(hull.points.size() == oracle.size());
    for (size_t i = 0; i < oracle.size(); ++i) {
      CHECK(hull.points[i].rates.R1 == doctest::Approx(oracle[i].R1).epsilon(1e-12));
      CHECK(hull.points[i].rates.R2 == doctest::Approx(oracle[i].R2).epsilon(1e-12));
    }
  }
}

TEST_CASE("hausdorff_distance sanity") {
  const auto a = to_set({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(hausdorff_distance(a, a) <= 1e-15);
  // Farthest pair: corner (0,2) of b against the whole of a, distance 1.
  const auto b = to_set({{0.0, 2.0}, {2.0, 0.0}});
  const double d = hausdorff_distance(a, b);
  CHECK(d == doctest::Approx(1.0).epsilon(1e-6));
}
