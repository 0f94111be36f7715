#ifndef SECRECY_REGIONS_HPP
#define SECRECY_REGIONS_HPP

#include <vector>

#include "secrecy/channel.hpp"

namespace secrecy {

// Transmit covariance shares, one per user. Feasible when each B_k >= 0
// and sum B_k <= S (or trace <= P under a power constraint).
struct CovarianceSplit {
  std::vector<SymMatrix> B;

  CovarianceSplit() = default;
  CovarianceSplit(const SymMatrix& b1, const SymMatrix& b2) : B{b1, b2} {}

  int users() const { return static_cast<int>(B.size()); }
  SymMatrix sum() const;
  bool feasible(const InputConstraint& c, double tol = kPsdTol) const;
};

struct RatePair {
  double R1 = 0.0;  // bits per channel use
  double R2 = 0.0;
};

// Bijection on {1..m}, stored 0-based: order[i] = pi(i+1) - 1.
struct Permutation {
  std::vector<int> order;

  static Permutation identity(int m);
  explicit Permutation(std::vector<int> ord);
  int m() const { return static_cast<int>(order.size()); }
  int inverse(int k) const;  // 0-based position of user k in the order
  std::string label() const; // e.g. "12", "21"
};

struct RegionPoint {
  RatePair rates;
  double mu = 1.0;          // weight provenance (gamma2/gamma1 when gamma1 > 0)
  Permutation perm = Permutation::identity(2);
  CovarianceSplit split;
  bool converged = true;
};

struct RegionPointSet {
  std::vector<RegionPoint> points;
};

// Gaussian rates of the SADBC for a feasible split:
//   R1 = [ (log|N1^{-1}(B1+N1)| - log|N3^{-1}(B1+N3)|) / 2 ]^+
//   R2 = [ (log|B1+B2+N2| - log|B1+N2| - log|B1+B2+N3| + log|B1+N3|) / 2 ]^+
// Logs base 2, equal weights on both log-det terms.
RatePair gaussian_rates(const CovarianceSplit& split, const ChannelInstance& ch);

// Per-user SDPC rates under permutation pi (general H-matrix form):
//   R_k = [ ( log|H_k (sum_{i<=pi^{-1}(k)} B_{pi(i)}) H_k^T + N_k|
//           - log|H_k (sum_{i<pi^{-1}(k)}  B_{pi(i)}) H_k^T + N_k|
//           - same pair with H3, N3 ) / 2 ]^+
// Returned indexed by user (R[0] is user 1's rate).
std::vector<double> sdpc_rates(const Permutation& perm, const CovarianceSplit& split,
                               const ChannelInstance& ch);

// m-user form of the same display, one gain/noise pair per user plus the
// eavesdropper pair. No feasibility check; callers own the constraint.
std::vector<double> sdpc_rates_general(const Permutation& perm,
                                       const CovarianceSplit& split,
                                       const std::vector<Matrix>& H,
                                       const std::vector<SymMatrix>& N,
                                       const Matrix& H_eve, const SymMatrix& N_eve);

// Optimal dirty-paper precoder C = B1 (N1+B1)^{-1}; complement is
// I - C = N1 (N1+B1)^{-1}.
struct DpcMatrix {
  Matrix C;
  Matrix complement;
};
DpcMatrix dpc_matrix(const SymMatrix& b1, const SymMatrix& n1);

// Upper-right Pareto hull of a 2-D point cloud, closed with the origin and
// the axis projections of the extreme points (free rate reduction).
// Output sorted by R1 ascending.
RegionPointSet convex_closure(const RegionPointSet& points);

// Max-min distance between the two hull boundaries, each resampled densely.
double hausdorff_distance(const RegionPointSet& a, const RegionPointSet& b,
                          int samples_per_edge = 64);

}  // namespace secrecy

#endif
