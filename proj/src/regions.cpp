#include "secrecy/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace secrecy {

SymMatrix CovarianceSplit::sum() const {
  if (B.empty()) throw std::invalid_argument("CovarianceSplit: empty");
  SymMatrix acc = B[0];
  for (size_t k = 1; k < B.size(); ++k) acc = acc + B[k];
  return acc;
}

bool CovarianceSplit::feasible(const InputConstraint& c, double tol) const {
  for (const auto& b : B)
    if (!is_psd(b, tol)) return false;
  const SymMatrix total = sum();
  if (c.kind == InputConstraint::Kind::covariance)
    return psd_leq(total, c.S, tol);
  return total.mat().trace() <= c.P * (1.0 + tol);
}

Permutation Permutation::identity(int m) {
  std::vector<int> ord(m);
  std::iota(ord.begin(), ord.end(), 0);
  return Permutation(std::move(ord));
}

Permutation::Permutation(std::vector<int> ord) : order(std::move(ord)) {
  std::vector<bool> seen(order.size(), false);
  for (int v : order) {
    if (v < 0 || v >= static_cast<int>(order.size()) || seen[v])
      throw std::invalid_argument("Permutation: not a bijection");
    seen[v] = true;
  }
}

int Permutation::inverse(int k) const {
  for (int i = 0; i < m(); ++i)
    if (order[i] == k) return i;
  throw std::invalid_argument("Permutation: user out of range");
}

std::string Permutation::label() const {
  std::string s;
  for (int v : order) s += std::to_string(v + 1);
  return s;
}

namespace {

double clamp_pos(double x) { return x > 0.0 ? x : 0.0; }

void check_feasible(const CovarianceSplit& split, const InputConstraint& c) {
  for (size_t k = 0; k < split.B.size(); ++k)
    if (!is_psd(split.B[k]))
      throw std::invalid_argument("split violates B" + std::to_string(k + 1) +
                                  " >= 0");
  if (!split.feasible(c))
    throw std::invalid_argument("split violates the input constraint sum B <= S");
}

}  // namespace

RatePair gaussian_rates(const CovarianceSplit& split, const ChannelInstance& ch) {
  if (split.users() != 2)
    throw std::invalid_argument("gaussian_rates: two-user split required");
  if (split.B[0].dim() != ch.t || ch.N1.dim() != ch.t || ch.N2.dim() != ch.t ||
      ch.N3.dim() != ch.t)
    throw std::invalid_argument("gaussian_rates: aligned t x t channel required");
  check_feasible(split, ch.constraint);
  const SymMatrix& b1 = split.B[0];
  const SymMatrix b12 = split.sum();
  RatePair r;
  r.R1 = clamp_pos(0.5 * (log_det(b1 + ch.N1) - log_det(ch.N1) -
                          log_det(b1 + ch.N3) + log_det(ch.N3)));
  r.R2 = clamp_pos(0.5 * (log_det(b12 + ch.N2) - log_det(b1 + ch.N2) -
                          log_det(b12 + ch.N3) + log_det(b1 + ch.N3)));
  return r;
}

std::vector<double> sdpc_rates_general(const Permutation& perm,
                                       const CovarianceSplit& split,
                                       const std::vector<Matrix>& H,
                                       const std::vector<SymMatrix>& N,
                                       const Matrix& H_eve, const SymMatrix& N_eve) {
  const int m = split.users();
  if (perm.m() != m || static_cast<int>(H.size()) != m ||
      static_cast<int>(N.size()) != m)
    throw std::invalid_argument("sdpc_rates: user count mismatch");

  // Prefix sums of B_{pi(i)} in permutation order; prefix[j] = sum_{i<j}.
  const int t = split.B[0].dim();
  std::vector<SymMatrix> prefix;
  prefix.push_back(SymMatrix::zero(t));
  for (int i = 0; i < m; ++i)
    prefix.push_back(prefix.back() + split.B[perm.order[i]]);

  std::vector<double> rates(m, 0.0);
  for (int k = 0; k < m; ++k) {
    const int pos = perm.inverse(k);  // 0-based; covers B_{pi(1..pos+1)}
    const SymMatrix& upto = prefix[pos + 1];
    const SymMatrix& below = prefix[pos];
    auto term = [](const Matrix& h, const SymMatrix& n, const SymMatrix& b) {
      return log_det(SymMatrix(h * b.mat() * h.transpose() + n.mat()));
    };
    const double user = term(H[k], N[k], upto) - term(H[k], N[k], below);
    const double eve = term(H_eve, N_eve, upto) - term(H_eve, N_eve, below);
    rates[k] = clamp_pos(0.5 * (user - eve));
  }
  return rates;
}

std::vector<double> sdpc_rates(const Permutation& perm, const CovarianceSplit& split,
                               const ChannelInstance& ch) {
  if (split.users() != 2)
    throw std::invalid_argument("sdpc_rates: ChannelInstance carries two users");
  check_feasible(split, ch.constraint);
  return sdpc_rates_general(perm, split, {ch.H1, ch.H2}, {ch.N1, ch.N2}, ch.H3,
                            ch.N3);
}

DpcMatrix dpc_matrix(const SymMatrix& b1, const SymMatrix& n1) {
  if (b1.dim() != n1.dim()) throw std::invalid_argument("dpc_matrix: dim mismatch");
  if (min_eigenvalue(n1) <= 0.0)
    throw std::domain_error("dpc_matrix: N1 must be PD");
  const SymMatrix sum = b1 + n1;
  if (min_eigenvalue(sum) <= 0.0)
    throw std::domain_error("dpc_matrix: N1 + B1 singular");
  const Matrix inv = inverse_pd(sum, "N1+B1").mat();
  DpcMatrix d;
  d.C = b1.mat() * inv;
  d.complement = n1.mat() * inv;
  return d;
}

namespace {

double cross(const RatePair& o, const RatePair& a, const RatePair& b) {
  return (a.R1 - o.R1) * (b.R2 - o.R2) - (a.R2 - o.R2) * (b.R1 - o.R1);
}

}  // namespace

RegionPointSet convex_closure(const RegionPointSet& in) {
  if (in.points.empty())
    throw std::invalid_argument("convex_closure: empty point set");

  std::vector<RegionPoint> cand = in.points;
  // Drop dominated points, then take the upper concave envelope.
  std::sort(cand.begin(), cand.end(), [](const RegionPoint& a, const RegionPoint& b) {
    if (a.rates.R1 != b.rates.R1) return a.rates.R1 < b.rates.R1;
    return a.rates.R2 > b.rates.R2;
  });
  std::vector<RegionPoint> frontier;
  double best_r2 = -1.0;
  for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
    if (it->rates.R2 > best_r2) {
      frontier.push_back(*it);
      best_r2 = it->rates.R2;
    }
  }
  std::reverse(frontier.begin(), frontier.end());

  RegionPointSet out;
  for (const auto& p : frontier) {
    while (out.points.size() >= 2 &&
           cross(out.points[out.points.size() - 2].rates,
                 out.points.back().rates, p.rates) >= 0.0)
      out.points.pop_back();
    out.points.push_back(p);
  }

  // Close the region down to the axes: free rate reduction extends the
  // frontier horizontally to R1 = 0 and vertically to R2 = 0.
  if (out.points.front().rates.R1 > 0.0) {
    RegionPoint left = out.points.front();
    left.rates.R1 = 0.0;
    out.points.insert(out.points.begin(), std::move(left));
  }
  if (out.points.back().rates.R2 > 0.0) {
    RegionPoint bottom = out.points.back();
    bottom.rates.R2 = 0.0;
    out.points.push_back(std::move(bottom));
  }
  return out;
}

namespace {

double point_segment_dist(const RatePair& p, const RatePair& a, const RatePair& b) {
  const double vx = b.R1 - a.R1, vy = b.R2 - a.R2;
  const double len2 = vx * vx + vy * vy;
  double s = 0.0;
  if (len2 > 0.0)
    s = std::clamp(((p.R1 - a.R1) * vx + (p.R2 - a.R2) * vy) / len2, 0.0, 1.0);
  const double dx = p.R1 - (a.R1 + s * vx), dy = p.R2 - (a.R2 + s * vy);
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<RatePair> resample(const RegionPointSet& h, int per_edge) {
  std::vector<RatePair> pts;
  const auto& v = h.points;
  if (v.size() == 1) return {v[0].rates};
  for (size_t i = 0; i + 1 < v.size(); ++i)
    for (int j = 0; j < per_edge; ++j) {
      const double s = static_cast<double>(j) / per_edge;
      pts.push_back({v[i].rates.R1 + s * (v[i + 1].rates.R1 - v[i].rates.R1),
                     v[i].rates.R2 + s * (v[i + 1].rates.R2 - v[i].rates.R2)});
    }
  pts.push_back(v.back().rates);
  return pts;
}

double directed_hausdorff(const std::vector<RatePair>& from, const RegionPointSet& to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    if (to.points.size() == 1) {
      best = point_segment_dist(p, to.points[0].rates, to.points[0].rates);
    } else {
      for (size_t i = 0; i + 1 < to.points.size(); ++i)
        best = std::min(best, point_segment_dist(p, to.points[i].rates,
                                                 to.points[i + 1].rates));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const RegionPointSet& a, const RegionPointSet& b,
                          int samples_per_edge) {
  return std::max(directed_hausdorff(resample(a, samples_per_edge), b),
                  directed_hausdorff(resample(b, samples_per_edge), a));
}

}  // namespace secrecy
