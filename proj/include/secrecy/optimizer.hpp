#ifndef SECRECY_OPTIMIZER_HPP
#define SECRECY_OPTIMIZER_HPP

#include <cstdint>
#include <utility>

#include "secrecy/regions.hpp"

namespace secrecy {

// gamma1 R1 + gamma2 R2; mu = gamma2/gamma1 when gamma1 > 0.
struct WeightedObjective {
  double gamma1 = 1.0;
  double gamma2 = 1.0;

  WeightedObjective() = default;
  WeightedObjective(double g1, double g2);
  static WeightedObjective from_mu(double mu) { return {1.0, mu}; }
  double mu() const;
};

struct SearchBudget {
  int restarts = 32;
  int max_iterations = 20000;  // objective evaluations per restart
  std::uint64_t seed = 1;
  double step_tol = 1e-9;      // pattern-search stopping step, relative
};

struct KktMultipliers {
  SymMatrix O1, O2, O3;
  double mu = 1.0;
};

struct SolveReport {
  CovarianceSplit split;
  RatePair rates;
  double objective = 0.0;
  double kkt_residual = 0.0;  // max of the two equation residuals
  int restarts_used = 0;
  bool converged = false;
};

// Clip each raw B_k to its PSD part, then shrink the pair uniformly when
// lambda_max(S^{-1/2}(B1+B2)S^{-1/2}) exceeds 1.
CovarianceSplit project_feasible(const CovarianceSplit& raw, const SymMatrix& S);

// Multi-start coordinate pattern search on Cholesky-factor parameterizations
// B_k = L_k L_k^T, maximizing gamma1 R1 + gamma2 R2 under the given
// permutation's SDPC rates (identity permutation reproduces the Gaussian
// rates). Deterministic for a fixed seed.
SolveReport maximize_weighted_sum(const ChannelInstance& ch,
                                  const WeightedObjective& obj,
                                  const SearchBudget& budget,
                                  const Permutation& perm = Permutation::identity(2));

// Least-squares recovery of the Lagrange multipliers on the active-constraint
// null spaces (O1 on ker B1*, O2 on ker B2*, O3 on ker(S - B1* - B2*)),
// followed by a PSD clip. Throws a diagnostic error when the residual stays
// above threshold, which signals a non-stationary split.
KktMultipliers recover_multipliers(const CovarianceSplit& split,
                                   const WeightedObjective& obj,
                                   const ChannelInstance& ch,
                                   double residual_threshold = 1e-5);

// Relative Frobenius residuals of the two stationarity identities
//   (B1+N1)^{-1} + (mu-1)(B1+N3)^{-1} + O1  =  mu (B1+N2)^{-1} + O2
//   mu (B1+B2+N2)^{-1} + O2                 =  mu (B1+B2+N3)^{-1} + O3
std::pair<double, double> kkt_residual(const CovarianceSplit& split,
                                       const KktMultipliers& mult,
                                       const ChannelInstance& ch,
                                       const WeightedObjective& obj);

// Sweep of the weighted-sum corners: identity permutation with weights
// (1, mu) and permutation {2,1} with weights (mu, 1) for every mu in the
// grid, closed by convex_closure.
RegionPointSet trace_boundary(const ChannelInstance& ch,
                              const std::vector<double>& mu_grid,
                              const SearchBudget& budget);

std::vector<double> default_mu_grid(int n = 32, double mu_max = 1e3);

}  // namespace secrecy

#endif
