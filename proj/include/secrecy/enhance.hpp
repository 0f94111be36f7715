#ifndef SECRECY_ENHANCE_HPP
#define SECRECY_ENHANCE_HPP

#include "secrecy/optimizer.hpp"

namespace secrecy {

// Enhanced noise covariances; the eavesdropper's is copied, never recomputed.
struct EnhancedNoise {
  SymMatrix N1p, N2p, N3p;
};

struct ProportionalityCert {
  Matrix A;
  double alpha = 0.0;      // 1/(mu-1)
  double residual = 0.0;   // ||(I-A)(B1+N1') - alpha A (B1+N3')||_F / ||B1+N1'||_F
  double condition = 0.0;  // cond(N3' - N1') for the linear solve
};

struct EnhancementCertificate {
  EnhancedNoise enhanced;
  ProportionalityCert prop;
  bool prop_applicable = true;      // false at mu = 1 (alpha undefined)
  double rate_gap[2] = {0.0, 0.0};  // |R_k(original) - R_k(enhanced)| in bits
  double kkt_enhanced_residual[2] = {0.0, 0.0};
  double ordering_min_eig = 0.0;    // most-negative eigenvalue over the three orderings
  double witness_min_eig = 0.0;     // min eigenvalue of O3, the kkt2 multiplier
  bool ordering_ok = false;
  bool prop_ok = false;
  bool rates_ok = false;
  bool kkt_ok = false;
  bool all_ok() const { return ordering_ok && prop_ok && rates_ok && kkt_ok; }
};

struct CertifyThresholds {
  double residual = 1e-5;   // relative, proportionality and enhanced KKT
  double ordering = 1e-8;   // min-eigenvalue slack for the PSD orderings
  double rate_gap = 1e-8;   // bits
};

// Enhanced channel of the converse argument:
//   N1' = (N1^{-1} + O1)^{-1}
//   N2' = ((B1* + N2)^{-1} + O2/mu)^{-1} - B1*
//   N3' = N3
EnhancedNoise build_enhanced(const CovarianceSplit& split, const KktMultipliers& mult,
                             const ChannelInstance& ch);

// A = (N2' - N1')(N3' - N1')^{-1}, alpha = 1/(mu-1); residual of
// (I - A)(B1* + N1') = alpha A (B1* + N3'). mu = 1 is unsupported
// (alpha undefined); singular N3' - N1' is a degenerate enhancement.
ProportionalityCert proportionality(const CovarianceSplit& split,
                                    const EnhancedNoise& enhanced, double mu);

// Measures all enhancement-certificate properties; failing checks set flags, never throw.
EnhancementCertificate certify_enhancement(const CovarianceSplit& split,
                                           const KktMultipliers& mult,
                                           const ChannelInstance& ch,
                                           const CertifyThresholds& thr = {});

}  // namespace secrecy

#endif
