#include "secrecy/misome.hpp"

#include <cmath>
#include <stdexcept>

namespace secrecy {

MisomeChannel::MisomeChannel(const Vector& h1, const Vector& h2, const Matrix& H3_,
                             double power)
    : MisomeChannel(std::vector<Vector>{h1, h2}, H3_, power) {}

MisomeChannel::MisomeChannel(std::vector<Vector> users, const Matrix& H3_, double power)
    : t(users.empty() ? 0 : static_cast<int>(users[0].size())),
      h(std::move(users)), H3(H3_), P(power) {
  if (h.size() < 2) throw std::invalid_argument("MisomeChannel: at least two users");
  for (const auto& v : h) {
    if (v.size() != t) throw std::invalid_argument("MisomeChannel: gain length mismatch");
    if (v.norm() <= 0.0) throw std::invalid_argument("MisomeChannel: zero gain vector");
  }
  if (H3.cols() != t) throw std::invalid_argument("MisomeChannel: H3 column mismatch");
  if (!(P > 0.0)) throw std::invalid_argument("MisomeChannel: P must be > 0");
}

MisomeChannel MisomeChannel::from_channel(const ChannelInstance& ch) {
  if (ch.H1.rows() != 1 || ch.H2.rows() != 1 || ch.N1.dim() != 1 || ch.N2.dim() != 1)
    throw std::invalid_argument("MisomeChannel: single-antenna receivers required");
  if (ch.constraint.kind != InputConstraint::Kind::power)
    throw std::invalid_argument("MisomeChannel: total power constraint required");
  // Fold non-unit scalar noise into the gains; whiten the eavesdropper.
  const Vector h1 = ch.H1.row(0).transpose() / std::sqrt(ch.N1(0, 0));
  const Vector h2 = ch.H2.row(0).transpose() / std::sqrt(ch.N2(0, 0));
  Eigen::SelfAdjointEigenSolver<Matrix> es(ch.N3.mat());
  const Matrix white = es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                       es.eigenvectors().transpose();
  return MisomeChannel(h1, h2, Matrix(white * ch.H3), ch.constraint.P);
}

ChannelInstance MisomeChannel::to_channel() const {
  if (users() != 2)
    throw std::invalid_argument("MisomeChannel: two users required for ChannelInstance");
  const SymMatrix unit = SymMatrix::identity(1);
  return ChannelInstance(h[0].transpose(), h[1].transpose(), H3, unit, unit,
                         SymMatrix::identity(static_cast<int>(H3.rows())),
                         InputConstraint::power(P));
}

PowerSplit::PowerSplit(double a) : alpha_split(a) {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::invalid_argument("PowerSplit: alpha_split must lie in [0,1]");
}

namespace {

struct PencilStep {
  SymMatrix A, B;
  GenEigenPair pair;
  double gap = 0.0;
};

// Pencil of the user encoded at the current position, given the rank-one
// interference accumulator acc = sum of alpha_i P psi_i psi_i^T of the users
// encoded before it.
PencilStep user_pencil(const MisomeChannel& ch, const Vector& hk, double share,
                       const Matrix& acc) {
  const int t = ch.t;
  const Matrix eye = Matrix::Identity(t, t);
  const double denom = 1.0 + hk.dot(acc * hk);
  PencilStep s;
  s.A = SymMatrix(eye + (share * ch.P / denom) * (hk * hk.transpose()));
  const Matrix eve_eye = Matrix::Identity(ch.H3.rows(), ch.H3.rows());
  const Matrix inner = eve_eye + ch.H3 * acc * ch.H3.transpose();
  const Matrix whitened = inner.llt().solve(ch.H3);
  s.B = SymMatrix(eye + share * ch.P * (ch.H3.transpose() * whitened));
  s.pair = gen_eigen_max(s.A, s.B);
  s.gap = gen_eigen_gap(s.A, s.B);
  return s;
}

double clamp_log2(double lambda) {
  const double r = 0.5 * std::log2(lambda);
  return r > 0.0 ? r : 0.0;
}

std::vector<PencilStep> pencil_chain(const MisomeChannel& ch,
                                     const std::vector<double>& alpha,
                                     const Permutation& perm) {
  const int m = ch.users();
  if (static_cast<int>(alpha.size()) != m || perm.m() != m)
    throw std::invalid_argument("misome: user count mismatch");
  double total = 0.0;
  for (double a : alpha) {
    if (a < -1e-12) throw std::invalid_argument("misome: negative power share");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("misome: power shares must sum to 1");

  std::vector<PencilStep> steps;
  Matrix acc = Matrix::Zero(ch.t, ch.t);
  for (int i = 0; i < m; ++i) {
    const int user = perm.order[i];
    steps.push_back(user_pencil(ch, ch.h[user], alpha[user], acc));
    const Vector& psi = steps.back().pair.psi_max;
    acc += alpha[user] * ch.P * (psi * psi.transpose());
  }
  return steps;
}

}  // namespace

PencilSet build_pencils(const MisomeChannel& ch, const PowerSplit& split,
                        const Permutation& perm) {
  const auto steps =
      pencil_chain(ch, {split.alpha_split, 1.0 - split.alpha_split}, perm);
  PencilSet p;
  p.A_first = steps[0].A;
  p.B_first = steps[0].B;
  p.first = steps[0].pair;
  p.first_gap = steps[0].gap;
  p.A_second = steps[1].A;
  p.B_second = steps[1].B;
  p.second = steps[1].pair;
  return p;
}

std::vector<double> misome_rates_m(const MisomeChannel& ch,
                                   const std::vector<double>& alpha,
                                   const Permutation& perm) {
  const auto steps = pencil_chain(ch, alpha, perm);
  std::vector<double> rates(ch.users());
  for (int i = 0; i < ch.users(); ++i)
    rates[perm.order[i]] = clamp_log2(steps[i].pair.lambda_max);
  return rates;
}

RatePair misome_rates(const MisomeChannel& ch, const PowerSplit& split,
                      const Permutation& perm) {
  const auto r = misome_rates_m(ch, {split.alpha_split, 1.0 - split.alpha_split}, perm);
  return {r[0], r[1]};
}

CovarianceSplit misome_realizing_split(const MisomeChannel& ch,
                                       const PowerSplit& split,
                                       const Permutation& perm) {
  const std::vector<double> alpha{split.alpha_split, 1.0 - split.alpha_split};
  const auto steps = pencil_chain(ch, alpha, perm);
  CovarianceSplit out;
  out.B.resize(ch.users());
  for (int i = 0; i < ch.users(); ++i) {
    const int user = perm.order[i];
    const Vector& psi = steps[i].pair.psi_max;
    out.B[user] = SymMatrix(alpha[user] * ch.P * (psi * psi.transpose()));
  }
  return out;
}

RegionPointSet misome_region(const MisomeChannel& ch,
                             const std::vector<double>& alpha_grid,
                             const std::vector<Permutation>& perms) {
  if (alpha_grid.empty())
    throw std::invalid_argument("misome_region: empty alpha grid");
  RegionPointSet pts;
  for (double a : alpha_grid)
    for (const auto& perm : perms) {
      const PowerSplit split(a);
      RegionPoint p;
      p.rates = misome_rates(ch, split, perm);
      p.mu = a;  // provenance slot carries alpha_split here
      p.perm = perm;
      p.split = misome_realizing_split(ch, split, perm);
      pts.points.push_back(std::move(p));
    }
  return convex_closure(pts);
}

HighSnrRectangles misome_highsnr(const MisomeChannel& ch) {
  const SymMatrix gram(ch.H3.transpose() * ch.H3);
  if (min_eigenvalue(gram) <= 0.0)
    throw std::domain_error("misome_highsnr: H3^T H3 singular, pencil B side not PD");
  const SymMatrix g1(ch.h[0] * ch.h[0].transpose());
  const SymMatrix g2(ch.h[1] * ch.h[1].transpose());
  const GenEigenPair e1 = gen_eigen_max(g1, gram);
  const GenEigenPair e2 = gen_eigen_max(g2, gram);

  HighSnrRectangles out;
  out.b = std::pow(ch.h[1].dot(e1.psi_max), 2) / (ch.H3 * e1.psi_max).squaredNorm();
  out.a = std::pow(ch.h[0].dot(e2.psi_max), 2) / (ch.H3 * e2.psi_max).squaredNorm();
  out.b_degenerate = out.b == 0.0;
  out.a_degenerate = out.a == 0.0;

  const double inf = std::numeric_limits<double>::infinity();
  out.corner_12.R1 = clamp_log2(e1.lambda_max);
  out.corner_12.R2 = out.b_degenerate ? inf : clamp_log2(e2.lambda_max / out.b);
  out.corner_21.R2 = clamp_log2(e2.lambda_max);
  out.corner_21.R1 = out.a_degenerate ? inf : clamp_log2(e1.lambda_max / out.a);

  RegionPointSet corners;
  if (!out.b_degenerate)
    corners.points.push_back(
        {out.corner_12, 1.0, Permutation::identity(2), CovarianceSplit{}, true});
  if (!out.a_degenerate)
    corners.points.push_back(
        {out.corner_21, 1.0, Permutation(std::vector<int>{1, 0}), CovarianceSplit{},
         true});
  if (!corners.points.empty()) out.hull = convex_closure(corners);
  return out;
}

std::vector<double> uniform_alpha_grid(int n) {
  if (n < 2) return {0.0, 1.0};
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = static_cast<double>(i) / (n - 1);
  return grid;
}

}  // namespace secrecy
