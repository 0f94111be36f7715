#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "secrecy/misome.hpp"

using namespace secrecy;

namespace {

Vector vec1(double v) { return Vector::Constant(1, v); }

MisomeChannel random_misome(std::mt19937_64& rng, int t, int r3, double power) {
  std::normal_distribution<double> g;
  auto rand_vec = [&](int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    return v;
  };
  Matrix h3(r3, t);
  for (int i = 0; i < r3; ++i) h3.row(i) = rand_vec(t).transpose();
  return MisomeChannel(rand_vec(t), rand_vec(t), h3, power);
}

const Permutation kId = Permutation::identity(2);
const Permutation kSwap(std::vector<int>{1, 0});

// Frontier height at r1, linearly interpolated between hull vertices.
double envelope_at(const RegionPointSet& hull, double r1) {
  const auto& v = hull.points;
  if (r1 > v.back().rates.R1) return -1.0;
  if (v.size() == 1) return r1 <= v[0].rates.R1 ? v[0].rates.R2 : -1.0;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    const double x0 = v[i].rates.R1, x1 = v[i + 1].rates.R1;
    if (r1 >= x0 && r1 <= x1) {
      if (x1 == x0) return std::max(v[i].rates.R2, v[i + 1].rates.R2);
      const double s = (r1 - x0) / (x1 - x0);
      return v[i].rates.R2 + s * (v[i + 1].rates.R2 - v[i].rates.R2);
    }
  }
  return v.front().rates.R2;
}

bool hull_contains(const RegionPointSet& hull, const RatePair& p, double tol) {
  return p.R2 <= envelope_at(hull, p.R1) + tol;
}

}  // namespace

TEST_CASE("scalar pencil oracle") {
  // t=1, h1=1, H3=0.5, P=10, alpha=0.5: lambda11 = (1+5)/(1+1.25).
  const MisomeChannel ch(vec1(1.0), vec1(0.8), Matrix::Constant(1, 1, 0.5), 10.0);
  const auto p = build_pencils(ch, PowerSplit(0.5), kId);
  CHECK(p.first.lambda_max == doctest::Approx(6.0 / 2.25).epsilon(1e-12));
  const auto r = misome_rates(ch, PowerSplit(0.5), kId);
  CHECK(r.R1 == doctest::Approx(0.5 * std::log2(6.0 / 2.25)).epsilon(1e-12));
}

TEST_CASE("alpha endpoints zero the matching user") {
  std::mt19937_64 rng(41);
  const auto ch = random_misome(rng, 3, 2, 5.0);
  const auto r1 = misome_rates(ch, PowerSplit(1.0), kId);
  CHECK(r1.R2 == 0.0);  // zero power share => lambda22 = 1
  const auto r0 = misome_rates(ch, PowerSplit(0.0), kId);
  CHECK(r0.R1 == 0.0);
}

TEST_CASE("pencil rates equal SDPC on the rank-one realizing split") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ua(0.05, 0.95);
  std::uniform_real_distribution<double> up(0.5, 20.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int t = 2 + static_cast<int>(rng() % 3);   // t in [2,4]
    const int r3 = 1 + static_cast<int>(rng() % 3);  // r3 in [1,3]
    const auto ch = random_misome(rng, t, r3, up(rng));
    const PowerSplit split(ua(rng));
    for (const auto& perm : {kId, kSwap}) {
      const auto pencil = misome_rates(ch, split, perm);
      const auto b = misome_realizing_split(ch, split, perm);
      const auto sdpc = sdpc_rates(perm, b, ch.to_channel());
      CHECK(std::abs(pencil.R1 - sdpc[0]) <= 1e-9);
      CHECK(std::abs(pencil.R2 - sdpc[1]) <= 1e-9);
    }
  }
}

TEST_CASE("symmetric channel gives a mirror-symmetric region") {
  Vector h(2);
  h << 1.0, 0.4;
  Matrix h3(1, 2);
  h3 << 0.3, 0.2;
  const MisomeChannel ch(h, h, h3, 8.0);
  const auto hull = misome_region(ch, uniform_alpha_grid(41), {kId, kSwap});
  // The mirrored frontier must coincide with the frontier itself.
  for (const auto& p : hull.points)
    CHECK(std::abs(envelope_at(hull, p.rates.R2) - p.rates.R1) <= 1e-9);
}

TEST_CASE("hull contains every swept point") {
  std::mt19937_64 rng(47);
  const auto ch = random_misome(rng, 4, 2, 12.0);
  const auto grid = uniform_alpha_grid(101);
  const auto hull = misome_region(ch, grid, {kId, kSwap});
  for (double a : grid)
    for (const auto& perm : {kId, kSwap}) {
      const auto r = misome_rates(ch, PowerSplit(a), perm);
      CHECK(hull_contains(hull, r, 1e-9));
    }
}

TEST_CASE("m-user collapse and endpoints") {
  std::mt19937_64 rng(53);
  const auto ch2 = random_misome(rng, 3, 2, 6.0);
  const PowerSplit split(0.3);
  const auto pair = misome_rates(ch2, split, kId);
  const auto m2 = misome_rates_m(ch2, {0.3, 0.7}, kId);
  CHECK(std::abs(pair.R1 - m2[0]) <= 1e-12);
  CHECK(std::abs(pair.R2 - m2[1]) <= 1e-12);

  // Three users, all power on user 1.
  std::normal_distribution<double> g;
  std::vector<Vector> users;
  for (int k = 0; k < 3; ++k) {
    Vector v(3);
    for (int i = 0; i < 3; ++i) v(i) = g(rng);
    users.push_back(v);
  }
  Matrix h3(2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) h3(i, j) = g(rng);
  const MisomeChannel ch3(users, h3, 4.0);
  const Permutation id3 = Permutation::identity(3);
  const auto r = misome_rates_m(ch3, {1.0, 0.0, 0.0}, id3);
  CHECK(r[1] == 0.0);
  CHECK(r[2] == 0.0);

  // m=3 rates match the general SDPC display on the rank-one split.
  const std::vector<double> alpha{0.5, 0.3, 0.2};
  const auto rates = misome_rates_m(ch3, alpha, id3);
  // Rebuild the rank-one covariances by re-running the chain.
  Matrix acc = Matrix::Zero(3, 3);
  CovarianceSplit bsplit;
  bsplit.B.resize(3);
  std::vector<Matrix> H;
  std::vector<SymMatrix> N;
  for (int i = 0; i < 3; ++i) {
    const Vector& hk = users[i];
    const double denom = 1.0 + hk.dot(acc * hk);
    const SymMatrix A(Matrix(Matrix::Identity(3, 3) +
                             (alpha[i] * ch3.P / denom) * (hk * hk.transpose())));
    const Matrix inner = Matrix::Identity(2, 2) + h3 * acc * h3.transpose();
    const SymMatrix B(Matrix(Matrix::Identity(3, 3) +
                             alpha[i] * ch3.P *
                                 (h3.transpose() * inner.llt().solve(h3))));
    const auto pairk = gen_eigen_max(A, B);
    bsplit.B[i] = SymMatrix(Matrix(alpha[i] * ch3.P *
                                   (pairk.psi_max * pairk.psi_max.transpose())));
    acc += alpha[i] * ch3.P * (pairk.psi_max * pairk.psi_max.transpose());
    H.push_back(hk.transpose());
    N.push_back(SymMatrix::identity(1));
  }
  const auto sdpc = sdpc_rates_general(id3, bsplit, H, N, h3,
                                       SymMatrix::identity(2));
  for (int k = 0; k < 3; ++k) CHECK(std::abs(rates[k] - sdpc[k]) <= 1e-9);
}

TEST_CASE("high-SNR scalar constants and collapse") {
  const double h1 = 1.0, h2 = 0.8, h3 = 0.5;
  const MisomeChannel ch(vec1(h1), vec1(h2), Matrix::Constant(1, 1, h3), 10.0);
  const auto rect = misome_highsnr(ch);
  CHECK(rect.a == doctest::Approx(h1 * h1 / (h3 * h3)).epsilon(1e-12));
  CHECK(rect.b == doctest::Approx(h2 * h2 / (h3 * h3)).epsilon(1e-12));
  // Each rectangle collapses to its own axis segment: the cross rate is
  // exactly [log(lambda/constant)]^+ = [log 1]^+ = 0.
  CHECK(rect.corner_12.R1 ==
        doctest::Approx(0.5 * std::log2(h1 * h1 / (h3 * h3))).epsilon(1e-12));
  CHECK(rect.corner_12.R2 == 0.0);
  CHECK(rect.corner_21.R1 == 0.0);
  CHECK(rect.corner_21.R2 ==
        doctest::Approx(0.5 * std::log2(h2 * h2 / (h3 * h3))).epsilon(1e-12));
}

TEST_CASE("lambda11 increases with P and converges to the corner") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    // r3 >= t so H3^T H3 is PD and the high-SNR limit is finite; reject
    // instances whose user 1 never beats the eavesdropper (lambda <= 1),
    // where lambda11 is non-increasing instead.
    MisomeChannel base = random_misome(rng, 2, 3, 1.0);
    HighSnrRectangles rect = misome_highsnr(base);
    while (rect.corner_12.R1 <= 0.1) {
      base = random_misome(rng, 2, 3, 1.0);
      rect = misome_highsnr(base);
    }
    double prev = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double power = std::pow(10.0, 6.0 * k / 19.0);
      const MisomeChannel ch(base.h[0], base.h[1], base.H3, power);
      const auto p = build_pencils(ch, PowerSplit(0.5), kId);
      CHECK(p.first.lambda_max >= prev - 1e-12);
      prev = p.first.lambda_max;
    }
    // At P = 1e6 the first-user rate is within 1% of the rectangle corner.
    const MisomeChannel big(base.h[0], base.h[1], base.H3, 1e6);
    const auto r = misome_rates(big, PowerSplit(0.5), kId);
    if (rect.corner_12.R1 > 0.1)
      CHECK(std::abs(r.R1 - rect.corner_12.R1) <= 0.01 * rect.corner_12.R1);
  }
}

TEST_CASE("from_channel folds noise and round-trips") {
  Matrix g1(1, 2), g2(1, 2), g3(2, 2);
  g1 << 1.0, 0.5;
  g2 << 0.2, 0.9;
  g3 << 0.4, 0.1, 0.0, 0.3;
  const ChannelInstance ch(g1, g2, g3, SymMatrix(Matrix::Constant(1, 1, 2.0)),
                           SymMatrix(Matrix::Constant(1, 1, 0.5)),
                           SymMatrix(Matrix(Matrix::Identity(2, 2) * 4.0)),
                           InputConstraint::power(10.0));
  const auto m = MisomeChannel::from_channel(ch);
  CHECK((m.h[0] - g1.row(0).transpose() / std::sqrt(2.0)).norm() <= 1e-12);
  CHECK((m.h[1] - g2.row(0).transpose() / std::sqrt(0.5)).norm() <= 1e-12);
  CHECK((m.H3 - g3 / 2.0).norm() <= 1e-12);
  // Rates agree between the folded form and the original general channel.
  const PowerSplit split(0.4);
  const auto b = misome_realizing_split(m, split, kId);
  const auto folded = sdpc_rates(kId, b, m.to_channel());
  const auto original = sdpc_rates(kId, b, ch);
  CHECK(std::abs(folded[0] - original[0]) <= 1e-9);
  CHECK(std::abs(folded[1] - original[1]) <= 1e-9);
}
