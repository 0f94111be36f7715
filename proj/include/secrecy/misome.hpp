#ifndef SECRECY_MISOME_HPP
#define SECRECY_MISOME_HPP

#include "secrecy/regions.hpp"

namespace secrecy {

// Single-antenna receivers, multi-antenna transmitter and eavesdropper,
// unit receiver noise, total power constraint.
struct MisomeChannel {
  int t = 0;
  std::vector<Vector> h;  // one t-vector per user (two for the base model)
  Matrix H3;              // r3 x t
  double P = 0.0;

  MisomeChannel() = default;
  MisomeChannel(const Vector& h1, const Vector& h2, const Matrix& H3_, double power);
  MisomeChannel(std::vector<Vector> users, const Matrix& H3_, double power);
  int users() const { return static_cast<int>(h.size()); }

  // Extracts the MISOME form from a two-user ChannelInstance with 1 x t user
  // rows. Non-unit scalar receiver noises are folded into the gains
  // (h -> h / sqrt(N)); the eavesdropper noise is whitened the same way.
  static MisomeChannel from_channel(const ChannelInstance& ch);

  // Equivalent two-user ChannelInstance (unit noises, power constraint).
  ChannelInstance to_channel() const;
};

// User-1 share of the total power; the complement goes to user 2.
struct PowerSplit {
  double alpha_split = 0.0;
  explicit PowerSplit(double a);
};

struct PencilSet {
  SymMatrix A_first, B_first;    // pencil of the user encoded first
  SymMatrix A_second, B_second;  // pencil of the user encoded second
  GenEigenPair first, second;    // their top eigenpairs (second depends on first)
  double first_gap = 0.0;        // top-eigenvalue gap of the first pencil
};

// The four-matrix construction for a given permutation; for pi = {1,2} this
// is (A11,B11) then (A22,B22), for pi = {2,1} it is (A21,B21) then (A12,B12).
PencilSet build_pencils(const MisomeChannel& ch, const PowerSplit& split,
                        const Permutation& perm);

// R_k = [log2 lambda_(k,pi^{-1}(k))max]^+ / 2.
RatePair misome_rates(const MisomeChannel& ch, const PowerSplit& split,
                      const Permutation& perm);

// Union over the alpha grid and the given permutations, convex-closed.
RegionPointSet misome_region(const MisomeChannel& ch,
                             const std::vector<double>& alpha_grid,
                             const std::vector<Permutation>& perms);

// The rank-one covariance split realizing the pencil rates; used to
// cross-check against the general SDPC display.
CovarianceSplit misome_realizing_split(const MisomeChannel& ch,
                                       const PowerSplit& split,
                                       const Permutation& perm);

struct HighSnrRectangles {
  // Corner rates in bits; R2 of the first rectangle (or R1 of the second)
  // is +infinity when the cross-gain constant vanishes.
  RatePair corner_12, corner_21;
  double a = 0.0, b = 0.0;  // high-SNR cross-gain constants
  bool b_degenerate = false, a_degenerate = false;
  RegionPointSet hull;
};

// High-SNR rectangles from the P-free pencils (h_i h_i^T, H3^T H3);
// requires H3^T H3 PD.
HighSnrRectangles misome_highsnr(const MisomeChannel& ch);

// m-user extension: sequential pencils in permutation order with the
// rank-one interference accumulator. For m = 2 this reproduces
// misome_rates exactly.
std::vector<double> misome_rates_m(const MisomeChannel& ch,
                                   const std::vector<double>& alpha,
                                   const Permutation& perm);

std::vector<double> uniform_alpha_grid(int n = 101);

}  // namespace secrecy

#endif
