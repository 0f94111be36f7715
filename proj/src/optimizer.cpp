#include "secrecy/optimizer.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace secrecy {

WeightedObjective::WeightedObjective(double g1, double g2) : gamma1(g1), gamma2(g2) {
  if (g1 < 0 || g2 < 0 || (g1 == 0 && g2 == 0))
    throw std::invalid_argument("WeightedObjective: gammas non-negative, not both zero");
}

double WeightedObjective::mu() const {
  if (gamma1 <= 0)
    throw std::invalid_argument("WeightedObjective: mu undefined for gamma1 = 0");
  return gamma2 / gamma1;
}

CovarianceSplit project_feasible(const CovarianceSplit& raw, const SymMatrix& S) {
  if (min_eigenvalue(S) <= 0.0)
    throw std::domain_error("project_feasible: S singular");
  CovarianceSplit out;
  for (const auto& b : raw.B) out.B.push_back(psd_part(b));
  // Whitened overshoot c = lambda_max(S^{-1/2} sum(B) S^{-1/2}).
  Eigen::SelfAdjointEigenSolver<Matrix> es(S.mat());
  const Matrix s_half_inv = es.eigenvectors() *
                            es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                            es.eigenvectors().transpose();
  const SymMatrix w(s_half_inv * out.sum().mat() * s_half_inv);
  const double c = Eigen::SelfAdjointEigenSolver<Matrix>(w.mat(), Eigen::EigenvaluesOnly)
                       .eigenvalues()
                       .maxCoeff();
  if (c > 1.0)
    for (auto& b : out.B) b = b * (1.0 / c);
  return out;
}

namespace {

int tri_size(int t) { return t * (t + 1) / 2; }

Matrix lower_from_params(const double* x, int t) {
  Matrix l = Matrix::Zero(t, t);
  int idx = 0;
  for (int j = 0; j < t; ++j)
    for (int i = j; i < t; ++i) l(i, j) = x[idx++];
  return l;
}

struct Problem {
  const ChannelInstance& ch;
  WeightedObjective obj;
  Permutation perm;
  SymMatrix cap;      // covariance cap (P*I for power kind)
  bool power_kind;
  double power;
  Matrix cap_half_inv;

  explicit Problem(const ChannelInstance& c, const WeightedObjective& o,
                   const Permutation& p)
      : ch(c), obj(o), perm(p), cap(c.constraint.cap(c.t)),
        power_kind(c.constraint.kind == InputConstraint::Kind::power),
        power(c.constraint.P) {
    if (!is_psd(cap))
      throw std::invalid_argument("maximize_weighted_sum: constraint cap not PSD");
    if (min_eigenvalue(cap) <= 0.0)
      throw std::invalid_argument("maximize_weighted_sum: constraint cap singular");
    Eigen::SelfAdjointEigenSolver<Matrix> es(cap.mat());
    cap_half_inv = es.eigenvectors() *
                   es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                   es.eigenvectors().transpose();
  }

  int nparams() const { return 2 * tri_size(ch.t); }

  // B_k = L_k L_k^T is PSD by construction; only the cap needs projecting.
  CovarianceSplit split_from(const std::vector<double>& x) const {
    const int n = tri_size(ch.t);
    const Matrix l1 = lower_from_params(x.data(), ch.t);
    const Matrix l2 = lower_from_params(x.data() + n, ch.t);
    CovarianceSplit s(SymMatrix(l1 * l1.transpose()), SymMatrix(l2 * l2.transpose()));
    double c = 1.0;
    if (power_kind) {
      c = s.sum().mat().trace() / power;
    } else {
      const SymMatrix w(cap_half_inv * s.sum().mat() * cap_half_inv);
      c = Eigen::SelfAdjointEigenSolver<Matrix>(w.mat(), Eigen::EigenvaluesOnly)
              .eigenvalues()
              .maxCoeff();
    }
    if (c > 1.0)
      for (auto& b : s.B) b = b * (1.0 / c);
    return s;
  }

  double value(const CovarianceSplit& s) const {
    const auto r = sdpc_rates(perm, s, ch);
    return obj.gamma1 * r[0] + obj.gamma2 * r[1];
  }

  double eval(const std::vector<double>& x) const { return value(split_from(x)); }

  // Gradient of the unclamped weighted sum w.r.t. the factor entries,
  // valid whenever the eavesdropper is degraded w.r.t. both users so the
  // [.]^+ clamps never bind.
  std::vector<double> gradient(const std::vector<double>& x) const {
    const int t = ch.t, n = tri_size(t);
    const Matrix l1 = lower_from_params(x.data(), t);
    const Matrix l2 = lower_from_params(x.data() + n, t);
    CovarianceSplit s(SymMatrix(l1 * l1.transpose()), SymMatrix(l2 * l2.transpose()));

    std::vector<SymMatrix> prefix{SymMatrix::zero(t)};
    for (int i = 0; i < 2; ++i) prefix.push_back(prefix.back() + s.B[perm.order[i]]);
    const std::vector<const SymMatrix*> noise{&ch.N1, &ch.N2};
    const std::vector<double> gamma{obj.gamma1, obj.gamma2};

    Matrix g[2] = {Matrix::Zero(t, t), Matrix::Zero(t, t)};
    const double c = 1.0 / (2.0 * std::log(2.0));
    for (int k = 0; k < 2; ++k) {
      const int pos = perm.inverse(k);
      const Matrix up = inverse_pd(prefix[pos + 1] + *noise[k]).mat() -
                        inverse_pd(prefix[pos + 1] + ch.N3).mat();
      Matrix dn = Matrix::Zero(t, t);
      if (pos > 0)
        dn = inverse_pd(prefix[pos] + *noise[k]).mat() -
             inverse_pd(prefix[pos] + ch.N3).mat();
      for (int i = 0; i < 2; ++i) {
        const int user = perm.order[i];
        if (i <= pos) g[user] += gamma[k] * c * up;
        if (i <= pos - 1) g[user] -= gamma[k] * c * dn;
      }
    }
    // d f / d L = 2 G L for symmetric G.
    const Matrix gl1 = 2.0 * g[0] * l1;
    const Matrix gl2 = 2.0 * g[1] * l2;
    std::vector<double> grad(2 * n);
    int idx = 0;
    for (int j = 0; j < t; ++j)
      for (int i = j; i < t; ++i) grad[idx++] = gl1(i, j);
    for (int j = 0; j < t; ++j)
      for (int i = j; i < t; ++i) grad[idx++] = gl2(i, j);
    return grad;
  }
};

struct LocalResult {
  std::vector<double> x;
  double value = -std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Compass search with geometric step shrink; accepts any strict improvement.
// Besides the coordinate axes it probes exchange directions that move weight
// between the two users' matching factor entries: when the input cap binds,
// the feasibility rescaling couples all coordinates and pure axis moves
// cannot travel along the constraint surface.
LocalResult pattern_search(const Problem& prob, std::vector<double> x,
                           double step0, double step_tol, int max_evals) {
  LocalResult res;
  res.value = prob.eval(x);
  int evals = 1;
  double step = step0;
  const size_t half = x.size() / 2;
  while (step >= step_tol && evals < max_evals) {
    bool improved = false;
    for (size_t i = 0; i < x.size() && evals < max_evals; ++i) {
      for (double sgn : {1.0, -1.0}) {
        x[i] += sgn * step;
        const double f = prob.eval(x);
        ++evals;
        if (f > res.value) {
          res.value = f;
          improved = true;
          break;
        }
        x[i] -= sgn * step;
      }
    }
    for (size_t i = 0; i < half && evals < max_evals; ++i) {
      for (double sgn : {1.0, -1.0}) {
        x[i] += sgn * step;
        x[i + half] -= sgn * step;
        const double f = prob.eval(x);
        ++evals;
        if (f > res.value) {
          res.value = f;
          improved = true;
          break;
        }
        x[i] -= sgn * step;
        x[i + half] += sgn * step;
      }
    }
    // Circle-tangent exchanges preserve x_i^2 + x_j^2, hence the matching
    // diagonal of B1 + B2, letting the search slide along a tight cap.
    for (size_t i = 0; i < half && evals < max_evals; ++i) {
      const double a = x[i + half], b = x[i];
      const double norm = std::sqrt(a * a + b * b);
      if (norm < step) continue;
      for (double sgn : {1.0, -1.0}) {
        x[i] += sgn * step * a / norm;
        x[i + half] -= sgn * step * b / norm;
        const double f = prob.eval(x);
        ++evals;
        if (f > res.value) {
          res.value = f;
          improved = true;
          break;
        }
        x[i] -= sgn * step * a / norm;
        x[i + half] += sgn * step * b / norm;
      }
    }
    // Random unit directions cover improving cones the fixed pattern misses;
    // the local seed keeps repeated runs byte-identical.
    if (!improved) {
      std::mt19937_64 dir_rng(0x9e3779b97f4a7c15ULL ^ evals);
      std::normal_distribution<double> gauss;
      std::vector<double> d(x.size());
      for (int probe = 0; probe < 4 * static_cast<int>(x.size()) &&
                          evals < max_evals && !improved;
           ++probe) {
        double norm = 0.0;
        for (double& v : d) {
          v = gauss(dir_rng);
          norm += v * v;
        }
        norm = std::sqrt(norm);
        for (size_t i = 0; i < x.size(); ++i) x[i] += step * d[i] / norm;
        const double f = prob.eval(x);
        ++evals;
        if (f > res.value) {
          res.value = f;
          improved = true;
        } else {
          for (size_t i = 0; i < x.size(); ++i) x[i] -= step * d[i] / norm;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  res.converged = step < step_tol;
  res.x = std::move(x);
  return res;
}

// Projected gradient ascent with backtracking; used to polish smooth
// (degraded-eavesdropper) instances to tight stationarity.
LocalResult gradient_polish(const Problem& prob, std::vector<double> x, int iters) {
  LocalResult res;
  res.value = prob.eval(x);
  double step = 0.5;
  for (int it = 0; it < iters; ++it) {
    const auto g = prob.gradient(x);
    double gnorm = 0.0;
    for (double v : g) gnorm += v * v;
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-13) break;
    bool accepted = false;
    while (step > 1e-14) {
      std::vector<double> y = x;
      for (size_t i = 0; i < y.size(); ++i) y[i] += step * g[i];
      const double f = prob.eval(y);
      if (f > res.value) {
        x = std::move(y);
        res.value = f;
        step *= 1.6;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  res.x = std::move(x);
  res.converged = true;
  return res;
}

struct RefineResult {
  CovarianceSplit split;
  double value = -std::numeric_limits<double>::infinity();
};

// Reduced refinement for degraded instances. The weighted sum is monotone
// non-decreasing in the outer user's covariance, so the input constraint is
// tight at any optimum: fill it, fix B12, and run projected gradient ascent
// over the inner covariance alone. The feasible set {0 <= B <= B12} is a
// spectral box in whitened coordinates with an exact eigenvalue-clip
// projection, so fixed points satisfy the stationarity system with
// multipliers supported on the active eigenspaces.
RefineResult refine_tight_sum(const Problem& prob, CovarianceSplit s) {
  const int t = prob.ch.t;
  const int inner = prob.perm.order[0];
  const int outer = prob.perm.order[1];
  if (prob.power_kind) {
    const double slack = prob.power - s.B[inner].mat().trace();
    const double tr_out = s.B[outer].mat().trace();
    if (tr_out > 1e-12 * std::max(1.0, prob.power))
      s.B[outer] = s.B[outer] * (slack / tr_out);
    else
      s.B[outer] = SymMatrix(Matrix((slack / t) * Matrix::Identity(t, t)));
  } else {
    s.B[outer] = psd_part(SymMatrix(prob.cap.mat() - s.B[inner].mat()));
  }
  const SymMatrix b12 = s.sum();

  // Whitening basis of range(B12); directions outside it stay zero.
  Eigen::SelfAdjointEigenSolver<Matrix> es(b12.mat());
  const double lmax = es.eigenvalues().maxCoeff();
  RefineResult out;
  out.split = s;
  out.value = prob.value(s);
  if (lmax <= 0.0) return out;
  std::vector<int> keep;
  for (int i = 0; i < t; ++i)
    if (es.eigenvalues()(i) > 1e-12 * lmax) keep.push_back(i);
  const int r = static_cast<int>(keep.size());
  Matrix w(t, r), wi(r, t);
  for (int j = 0; j < r; ++j) {
    const double d = es.eigenvalues()(keep[j]);
    w.col(j) = es.eigenvectors().col(keep[j]) * std::sqrt(d);
    wi.row(j) = es.eigenvectors().col(keep[j]).transpose() / std::sqrt(d);
  }

  auto clip_box = [&](const Matrix& xraw) {
    Eigen::SelfAdjointEigenSolver<Matrix> ex(xraw);
    Vector lam = ex.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
    return Matrix(ex.eigenvectors() * lam.asDiagonal() * ex.eigenvectors().transpose());
  };
  auto split_of = [&](const Matrix& xbox) {
    const SymMatrix bin(Matrix(w * xbox * w.transpose()));
    CovarianceSplit cs(SymMatrix::zero(t), SymMatrix::zero(t));
    cs.B[inner] = bin;
    cs.B[outer] = psd_part(SymMatrix(b12.mat() - bin.mat()));
    return cs;
  };

  const SymMatrix& n_in = inner == 0 ? prob.ch.N1 : prob.ch.N2;
  const SymMatrix& n_out = inner == 0 ? prob.ch.N2 : prob.ch.N1;
  const double g_in = inner == 0 ? prob.obj.gamma1 : prob.obj.gamma2;
  const double g_out = inner == 0 ? prob.obj.gamma2 : prob.obj.gamma1;
  const double c = 1.0 / (2.0 * std::log(2.0));
  auto grad_box = [&](const Matrix& bin) {
    const Matrix gb = c * (g_in * inverse_pd(SymMatrix(bin) + n_in).mat() +
                           (g_out - g_in) * inverse_pd(SymMatrix(bin) + prob.ch.N3).mat() -
                           g_out * inverse_pd(SymMatrix(bin) + n_out).mat());
    return Matrix(w.transpose() * gb * w);
  };

  Matrix x = clip_box(wi * s.B[inner].mat() * wi.transpose());
  CovarianceSplit cur = split_of(x);
  double val = prob.value(cur);
  double step = 1.0;
  for (int it = 0; it < 600; ++it) {
    const Matrix g = grad_box(cur.B[inner].mat());
    bool accepted = false;
    while (step > 1e-16) {
      const Matrix y = clip_box(x + step * g);
      if ((y - x).norm() <= 1e-14 * std::max(1.0, x.norm())) break;
      const CovarianceSplit cand = split_of(y);
      const double f = prob.value(cand);
      if (f > val) {
        x = y;
        cur = cand;
        val = f;
        step *= 1.8;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  if (val > out.value) {
    out.split = cur;
    out.value = val;
  }
  return out;
}

bool eavesdropper_degraded(const ChannelInstance& ch) {
  return ch.aligned() && psd_leq(ch.N1, ch.N3) && psd_leq(ch.N2, ch.N3);
}

struct LsRecovery {
  KktMultipliers mult;
  double res1 = 0.0;
  double res2 = 0.0;
};

// Orthonormal basis of the (near-)null space, threshold relative to the
// largest eigenvalue.
Matrix null_basis(const SymMatrix& m, double rel_tol = 1e-8) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat());
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<int> cols;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) <= rel_tol * scale) cols.push_back(i);
  Matrix u(m.dim(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j) u.col(j) = es.eigenvectors().col(cols[j]);
  return u;
}

std::pair<double, double> residual_pair(const CovarianceSplit& split,
                                        const KktMultipliers& mult,
                                        const ChannelInstance& ch, double mu) {
  const SymMatrix& b1 = split.B[0];
  const SymMatrix b12 = split.sum();
  const Matrix lhs1 = inverse_pd(b1 + ch.N1).mat() +
                      (mu - 1.0) * inverse_pd(b1 + ch.N3).mat() + mult.O1.mat();
  const Matrix rhs1 = mu * inverse_pd(b1 + ch.N2).mat() + mult.O2.mat();
  const Matrix lhs2 = mu * inverse_pd(b12 + ch.N2).mat() + mult.O2.mat();
  const Matrix rhs2 = mu * inverse_pd(b12 + ch.N3).mat() + mult.O3.mat();
  return {(lhs1 - rhs1).norm() / lhs1.norm(), (lhs2 - rhs2).norm() / lhs2.norm()};
}

LsRecovery recover_ls(const CovarianceSplit& split, double mu,
                      const ChannelInstance& ch) {
  const int t = ch.t;
  const SymMatrix& b1 = split.B[0];
  const SymMatrix& b2 = split.B[1];
  const SymMatrix b12 = split.sum();
  const SymMatrix slack =
      ch.constraint.kind == InputConstraint::Kind::covariance
          ? ch.constraint.S - b12
          : SymMatrix::zero(t);  // power kind: trace multiplier free over R^t

  // Target differences: O1 - O2 = K1, O3 - O2 = K2.
  const Matrix k1 = mu * inverse_pd(b1 + ch.N2).mat() -
                    inverse_pd(b1 + ch.N1).mat() -
                    (mu - 1.0) * inverse_pd(b1 + ch.N3).mat();
  const Matrix k2 = mu * inverse_pd(b12 + ch.N2).mat() -
                    mu * inverse_pd(b12 + ch.N3).mat();

  const Matrix u1 = null_basis(b1), u2 = null_basis(b2), u3 = null_basis(slack);
  const int n1 = tri_size(static_cast<int>(u1.cols()));
  const int n2 = tri_size(static_cast<int>(u2.cols()));
  const int n3 = tri_size(static_cast<int>(u3.cols()));
  const int nunk = n1 + n2 + n3;

  KktMultipliers mult;
  mult.mu = mu;
  mult.O1 = SymMatrix::zero(t);
  mult.O2 = SymMatrix::zero(t);
  mult.O3 = SymMatrix::zero(t);

  if (nunk > 0) {
    // Residuals are linear in the subspace coordinates; stack both
    // vectorized equations and solve the joint least squares.
    const int rows = 2 * t * t;
    Matrix a(rows, nunk);
    Vector rhs(rows);
    auto basis_mat = [](const Matrix& u, int p, int q) {
      Matrix e = u.col(p) * u.col(q).transpose();
      if (p != q) e += u.col(q) * u.col(p).transpose();
      return e;
    };
    int col = 0;
    auto fill = [&](const Matrix& u, double w_eq1, double w_eq2) {
      const int k = static_cast<int>(u.cols());
      for (int q = 0; q < k; ++q)
        for (int p = q; p < k; ++p) {
          const Matrix e = basis_mat(u, p, q);
          a.col(col).head(t * t) =
              w_eq1 * Eigen::Map<const Vector>(e.data(), t * t);
          a.col(col).tail(t * t) =
              w_eq2 * Eigen::Map<const Vector>(e.data(), t * t);
          ++col;
        }
    };
    fill(u1, 1.0, 0.0);    // O1 enters eq1 with +
    fill(u2, -1.0, -1.0);  // O2 enters both with -
    fill(u3, 0.0, 1.0);    // O3 enters eq2 with +
    rhs.head(t * t) = Eigen::Map<const Vector>(k1.data(), t * t);
    rhs.tail(t * t) = Eigen::Map<const Vector>(k2.data(), t * t);

    const Vector y = a.completeOrthogonalDecomposition().solve(rhs);
    auto unpack = [&](const Matrix& u, int offset) {
      const int k = static_cast<int>(u.cols());
      Matrix s = Matrix::Zero(k, k);
      int idx = offset;
      for (int q = 0; q < k; ++q)
        for (int p = q; p < k; ++p) {
          s(p, q) = y(idx);
          s(q, p) = y(idx);
          ++idx;
        }
      return SymMatrix(Matrix(u * s * u.transpose()));
    };
    if (u1.cols() > 0) mult.O1 = psd_part(unpack(u1, 0));
    if (u2.cols() > 0) mult.O2 = psd_part(unpack(u2, n1));
    if (u3.cols() > 0) mult.O3 = psd_part(unpack(u3, n1 + n2));
  }

  LsRecovery out;
  out.mult = mult;
  std::tie(out.res1, out.res2) = residual_pair(split, mult, ch, mu);
  return out;
}

// Relabel users 1 <-> 2 so a {2,1}-permutation problem becomes an
// identity-permutation problem with swapped weights.
ChannelInstance relabeled(const ChannelInstance& ch) {
  return ChannelInstance(ch.H2, ch.H1, ch.H3, ch.N2, ch.N1, ch.N3, ch.constraint);
}

}  // namespace

KktMultipliers recover_multipliers(const CovarianceSplit& split,
                                   const WeightedObjective& obj,
                                   const ChannelInstance& ch,
                                   double residual_threshold) {
  const double mu = obj.mu();
  if (mu < 1.0)
    throw std::invalid_argument("recover_multipliers: mu >= 1 required");
  const auto rec = recover_ls(split, mu, ch);
  if (std::max(rec.res1, rec.res2) > residual_threshold)
    throw std::runtime_error(
        "recover_multipliers: split not stationary, residuals " +
        std::to_string(rec.res1) + ", " + std::to_string(rec.res2));
  return rec.mult;
}

std::pair<double, double> kkt_residual(const CovarianceSplit& split,
                                       const KktMultipliers& mult,
                                       const ChannelInstance& ch,
                                       const WeightedObjective& obj) {
  return residual_pair(split, mult, ch, obj.mu());
}

SolveReport maximize_weighted_sum(const ChannelInstance& ch,
                                  const WeightedObjective& obj,
                                  const SearchBudget& budget,
                                  const Permutation& perm) {
  Problem prob(ch, obj, perm);
  const int n = prob.nparams();
  const double scale =
      std::sqrt(std::max(1e-12, max_abs_eigenvalue(prob.cap)) / ch.t);
  const double step0 = 0.5 * scale;
  const double step_tol = budget.step_tol * scale;

  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> unif(-0.7 * scale, 0.7 * scale);

  // Deterministic corner starts, then seeded random restarts.
  std::vector<std::vector<double>> starts;
  const int nt = tri_size(ch.t);
  const Matrix half_cap = Eigen::LLT<Matrix>(0.49 * prob.cap.mat()).matrixL();
  const Matrix quarter_cap = Eigen::LLT<Matrix>(0.24 * prob.cap.mat()).matrixL();
  auto pack = [&](const Matrix& l1, const Matrix& l2) {
    std::vector<double> x(n, 0.0);
    int idx = 0;
    for (int j = 0; j < ch.t; ++j)
      for (int i = j; i < ch.t; ++i) x[idx++] = l1(i, j);
    for (int j = 0; j < ch.t; ++j)
      for (int i = j; i < ch.t; ++i) x[idx++] = l2(i, j);
    return x;
  };
  const Matrix z = Matrix::Zero(ch.t, ch.t);
  starts.push_back(pack(z, z));
  starts.push_back(pack(half_cap, z));
  starts.push_back(pack(z, half_cap));
  starts.push_back(pack(quarter_cap, quarter_cap));
  while (static_cast<int>(starts.size()) < std::max(budget.restarts, 1)) {
    std::vector<double> x(n);
    for (double& v : x) v = unif(rng);
    starts.push_back(std::move(x));
  }
  starts.resize(std::max(budget.restarts, 1));

  const bool smooth = eavesdropper_degraded(ch);
  LocalResult best;
  for (const auto& x0 : starts) {
    LocalResult r = pattern_search(prob, x0, step0, step_tol, budget.max_iterations);
    if (smooth) {
      LocalResult p = gradient_polish(prob, r.x, 400);
      if (p.value > r.value) r = p;
      // Final fine compass pass pins down boundary-constrained optima.
      LocalResult f = pattern_search(prob, r.x, 64.0 * step_tol, step_tol,
                                     budget.max_iterations / 4);
      if (f.value >= r.value) {
        f.converged = f.converged && r.converged;
        r = f;
      }
    }
    if (r.value > best.value) best = r;
  }

  SolveReport report;
  report.split = prob.split_from(best.x);
  if (smooth) {
    const RefineResult ref = refine_tight_sum(prob, report.split);
    if (ref.value >= best.value - 1e-12) {
      report.split = ref.split;
      best.value = std::max(best.value, ref.value);
    }
  }
  const auto rates = sdpc_rates(perm, report.split, ch);
  report.rates = {rates[0], rates[1]};
  report.objective = obj.gamma1 * rates[0] + obj.gamma2 * rates[1];
  report.restarts_used = static_cast<int>(starts.size());
  report.converged = best.converged;

  // Stationarity residual via multiplier recovery on the equivalent
  // identity-permutation problem (users relabeled for {2,1}).
  report.kkt_residual = std::numeric_limits<double>::quiet_NaN();
  if (ch.aligned()) {
    const bool id = perm.order == Permutation::identity(2).order;
    const ChannelInstance& eff_ch = ch;
    if (id && obj.gamma1 > 0 && obj.mu() >= 1.0) {
      const auto rec = recover_ls(report.split, obj.mu(), eff_ch);
      report.kkt_residual = std::max(rec.res1, rec.res2);
    } else if (!id && obj.gamma2 > 0 && obj.gamma1 / obj.gamma2 >= 1.0) {
      CovarianceSplit swapped(report.split.B[1], report.split.B[0]);
      const auto rec = recover_ls(swapped, obj.gamma1 / obj.gamma2, relabeled(ch));
      report.kkt_residual = std::max(rec.res1, rec.res2);
    }
  }
  return report;
}

RegionPointSet trace_boundary(const ChannelInstance& ch,
                              const std::vector<double>& mu_grid,
                              const SearchBudget& budget) {
  if (mu_grid.empty())
    throw std::invalid_argument("trace_boundary: empty mu grid");
  RegionPointSet pts;
  const Permutation id = Permutation::identity(2);
  const Permutation swapped(std::vector<int>{1, 0});
  for (double mu : mu_grid) {
    {
      const auto rep = maximize_weighted_sum(ch, WeightedObjective(1.0, mu), budget, id);
      pts.points.push_back({rep.rates, mu, id, rep.split, rep.converged});
    }
    {
      // Weight ratio mirrored so both slopes of the boundary are swept.
      const auto rep =
          maximize_weighted_sum(ch, WeightedObjective(mu, 1.0), budget, swapped);
      pts.points.push_back({rep.rates, mu, swapped, rep.split, rep.converged});
    }
  }
  return convex_closure(pts);
}

std::vector<double> default_mu_grid(int n, double mu_max) {
  std::vector<double> grid{1.0};
  if (n <= 1) return grid;
  for (int i = 1; i < n; ++i)
    grid.push_back(std::pow(mu_max, static_cast<double>(i) / (n - 1)));
  return grid;
}

}  // namespace secrecy
