#ifndef SECRECY_CHANNEL_HPP
#define SECRECY_CHANNEL_HPP

#include <optional>
#include <string>

#include "secrecy/linalg.hpp"

namespace secrecy {

// Transmit covariance cap S, or a total power budget P (trace constraint).
struct InputConstraint {
  enum class Kind { covariance, power };
  Kind kind = Kind::covariance;
  SymMatrix S;      // covariance kind, t x t PSD
  double P = 0.0;   // power kind, > 0

  static InputConstraint covariance(const SymMatrix& s);
  static InputConstraint power(double p);

  // S for covariance kind, P*I for power kind; the solver searches inside
  // this cap and additionally enforces the trace for the power kind.
  SymMatrix cap(int t) const;
};

enum class ChannelTag { SGMBC, SAMBC, SADBC, MISOME };

std::string to_string(ChannelTag tag);

struct ChannelClass {
  ChannelTag tag = ChannelTag::SGMBC;
  bool degradation_order_ok = false;
};

// Two legitimate receivers plus one external eavesdropper,
//   y_i = H_i x + n_i,  n_i ~ N(0, N_i),  i = 1,2,3 (3 = eavesdropper).
struct ChannelInstance {
  int t = 0;                 // transmit antennas
  Matrix H1, H2, H3;         // r_i x t gains
  SymMatrix N1, N2, N3;      // PD noise covariances
  InputConstraint constraint;

  ChannelInstance() = default;
  ChannelInstance(const Matrix& h1, const Matrix& h2, const Matrix& h3,
                  const SymMatrix& n1, const SymMatrix& n2, const SymMatrix& n3,
                  const InputConstraint& c);

  bool aligned(double tol = kPsdTol) const;  // square identity gains
};

ChannelClass classify(const ChannelInstance& ch, double tol = kPsdTol);

// Fold invertible gain matrices into the noise: H_i -> I,
// N_i -> H_i^{-1} N_i H_i^{-T}. Rates are invariant under this map.
ChannelInstance aligned_from_general(const ChannelInstance& ch);

}  // namespace secrecy

#endif
