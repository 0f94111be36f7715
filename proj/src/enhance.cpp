#include "secrecy/enhance.hpp"

#include <cmath>
#include <stdexcept>

namespace secrecy {

EnhancedNoise build_enhanced(const CovarianceSplit& split, const KktMultipliers& mult,
                             const ChannelInstance& ch) {
  if (mult.mu <= 0.0) throw std::invalid_argument("build_enhanced: mu must be > 0");
  const SymMatrix& b1 = split.B[0];
  EnhancedNoise e;
  e.N1p = inverse_pd(SymMatrix(inverse_pd(ch.N1, "N1").mat() + mult.O1.mat()));
  const SymMatrix inner(inverse_pd(b1 + ch.N2, "B1+N2").mat() +
                        mult.O2.mat() / mult.mu);
  e.N2p = inverse_pd(inner) - b1;
  if (min_eigenvalue(e.N2p) <= 0.0)
    throw std::domain_error(
        "build_enhanced: N2' not PD; multipliers inconsistent with the split");
  e.N3p = ch.N3;  // copied, never recomputed
  return e;
}

ProportionalityCert proportionality(const CovarianceSplit& split,
                                    const EnhancedNoise& enhanced, double mu) {
  if (mu == 1.0)
    throw std::invalid_argument(
        "proportionality: mu = 1 unsupported, alpha = 1/(mu-1) undefined");
  const Matrix diff31 = enhanced.N3p.mat() - enhanced.N1p.mat();
  const Matrix diff21 = enhanced.N2p.mat() - enhanced.N1p.mat();
  const Eigen::JacobiSVD<Matrix> svd(diff31, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 1e-12 * std::max(1.0, smax))
    throw std::domain_error("proportionality: N3' - N1' singular, A not unique");

  ProportionalityCert cert;
  cert.condition = smax / smin;
  // A (N3' - N1') = N2' - N1', solved rather than formed from an inverse.
  cert.A = diff31.transpose()
               .colPivHouseholderQr()
               .solve(diff21.transpose())
               .transpose();
  cert.alpha = 1.0 / (mu - 1.0);
  const Matrix lhs = (Matrix::Identity(cert.A.rows(), cert.A.cols()) - cert.A) *
                     (split.B[0].mat() + enhanced.N1p.mat());
  const Matrix rhs = cert.alpha * cert.A * (split.B[0].mat() + enhanced.N3p.mat());
  cert.residual = (lhs - rhs).norm() / (split.B[0].mat() + enhanced.N1p.mat()).norm();
  return cert;
}

EnhancementCertificate certify_enhancement(const CovarianceSplit& split,
                                           const KktMultipliers& mult,
                                           const ChannelInstance& ch,
                                           const CertifyThresholds& thr) {
  EnhancementCertificate cert;
  cert.enhanced = build_enhanced(split, mult, ch);
  const EnhancedNoise& e = cert.enhanced;
  const SymMatrix& b1 = split.B[0];
  const SymMatrix b12 = split.sum();

  // (i) Enhancement ordering. N3' = N3 holds bit-exactly by construction.
  cert.ordering_min_eig =
      std::min({min_eigenvalue(ch.N1 - e.N1p), min_eigenvalue(ch.N2 - e.N2p),
                min_eigenvalue(e.N2p - e.N1p)});
  cert.ordering_ok = cert.ordering_min_eig >= -thr.ordering &&
                     (e.N3p.mat() - ch.N3.mat()).norm() == 0.0;

  // (ii) Proportionality with alpha = 1/(mu-1).
  if (mult.mu == 1.0) {
    cert.prop_applicable = false;
    cert.prop_ok = true;  // not applicable at the mu = 1 boundary
  } else {
    try {
      cert.prop = proportionality(split, e, mult.mu);
      cert.prop_ok = cert.prop.residual <= thr.residual;
    } catch (const std::domain_error&) {
      cert.prop_applicable = false;
      cert.prop_ok = false;  // degenerate enhancement, flagged not passed
    }
  }

  // (iii) Rate preservation on the same split.
  ChannelInstance enhanced_ch(ch.H1, ch.H2, ch.H3, e.N1p, e.N2p, e.N3p, ch.constraint);
  const RatePair orig = gaussian_rates(split, ch);
  const RatePair enh = gaussian_rates(split, enhanced_ch);
  cert.rate_gap[0] = std::abs(orig.R1 - enh.R1);
  cert.rate_gap[1] = std::abs(orig.R2 - enh.R2);
  cert.rates_ok =
      cert.rate_gap[0] <= thr.rate_gap && cert.rate_gap[1] <= thr.rate_gap;

  // (iv) Enhanced KKT. With B2 O2 = 0 the identity
  // (B12 + N2')^{-1} = (B12 + N2)^{-1} + O2/mu makes O3 the multiplier of the
  // second stationarity equation in the enhanced channel; it must be PSD and
  // satisfy the same complementary slackness as in the original channel.
  const Matrix lhs1 = inverse_pd(b1 + e.N1p).mat() +
                      (mult.mu - 1.0) * inverse_pd(b1 + e.N3p).mat();
  const Matrix rhs1 = mult.mu * inverse_pd(b1 + e.N2p).mat();
  cert.kkt_enhanced_residual[0] = (lhs1 - rhs1).norm() / lhs1.norm();
  const Matrix lhs2 = mult.mu * inverse_pd(b12 + e.N2p).mat();
  const Matrix rhs2 = mult.mu * inverse_pd(b12 + e.N3p).mat() + mult.O3.mat();
  cert.kkt_enhanced_residual[1] = (lhs2 - rhs2).norm() / lhs2.norm();
  cert.witness_min_eig = min_eigenvalue(mult.O3);
  cert.kkt_ok = cert.kkt_enhanced_residual[0] <= thr.residual &&
                cert.kkt_enhanced_residual[1] <= thr.residual &&
                cert.witness_min_eig >= -thr.ordering;
  return cert;
}

}  // namespace secrecy
