#include "secrecy/channel.hpp"

#include <stdexcept>

namespace secrecy {

InputConstraint InputConstraint::covariance(const SymMatrix& s) {
  if (!is_psd(s)) throw std::invalid_argument("InputConstraint: S must be PSD");
  InputConstraint c;
  c.kind = Kind::covariance;
  c.S = s;
  return c;
}

InputConstraint InputConstraint::power(double p) {
  if (!(p > 0)) throw std::invalid_argument("InputConstraint: P must be > 0");
  InputConstraint c;
  c.kind = Kind::power;
  c.P = p;
  return c;
}

SymMatrix InputConstraint::cap(int t) const {
  if (kind == Kind::covariance) {
    if (S.dim() != t) throw std::invalid_argument("InputConstraint: S dim != t");
    return S;
  }
  return SymMatrix(Matrix::Identity(t, t) * P);
}

std::string to_string(ChannelTag tag) {
  switch (tag) {
    case ChannelTag::SGMBC: return "SGMBC";
    case ChannelTag::SAMBC: return "SAMBC";
    case ChannelTag::SADBC: return "SADBC";
    case ChannelTag::MISOME: return "MISOME";
  }
  return "?";
}

ChannelInstance::ChannelInstance(const Matrix& h1, const Matrix& h2, const Matrix& h3,
                                 const SymMatrix& n1, const SymMatrix& n2,
                                 const SymMatrix& n3, const InputConstraint& c)
    : t(static_cast<int>(h1.cols())), H1(h1), H2(h2), H3(h3),
      N1(n1), N2(n2), N3(n3), constraint(c) {
  if (h2.cols() != t || h3.cols() != t)
    throw std::invalid_argument("ChannelInstance: gain column counts must all equal t");
  auto check_noise = [](const SymMatrix& n, Eigen::Index rows, const std::string& name) {
    if (n.dim() != rows)
      throw std::invalid_argument("ChannelInstance: " + name + " dim mismatch");
    if (min_eigenvalue(n) <= 0.0)
      throw std::invalid_argument("ChannelInstance: " + name + " must be PD");
  };
  check_noise(n1, h1.rows(), "N1");
  check_noise(n2, h2.rows(), "N2");
  check_noise(n3, h3.rows(), "N3");
  if (c.kind == InputConstraint::Kind::covariance && c.S.dim() != t)
    throw std::invalid_argument("ChannelInstance: S dim != t");
}

bool ChannelInstance::aligned(double tol) const {
  if (H1.rows() != t || H2.rows() != t || H3.rows() != t) return false;
  const Matrix eye = Matrix::Identity(t, t);
  return (H1 - eye).cwiseAbs().maxCoeff() <= tol &&
         (H2 - eye).cwiseAbs().maxCoeff() <= tol &&
         (H3 - eye).cwiseAbs().maxCoeff() <= tol;
}

ChannelClass classify(const ChannelInstance& ch, double tol) {
  ChannelClass cls;
  cls.degradation_order_ok = false;
  if (ch.aligned(tol)) {
    // Aligned channels first: a 1x1 aligned instance is handled through
    // the SADBC/SAMBC machinery rather than the MISOME pencils.
    cls.degradation_order_ok =
        psd_leq(ch.N1, ch.N2, tol) && psd_leq(ch.N2, ch.N3, tol);
    cls.tag = cls.degradation_order_ok ? ChannelTag::SADBC : ChannelTag::SAMBC;
    return cls;
  }
  if (ch.H1.rows() == 1 && ch.H2.rows() == 1 && ch.N1.dim() == 1 && ch.N2.dim() == 1) {
    cls.tag = ChannelTag::MISOME;
    return cls;
  }
  cls.tag = ChannelTag::SGMBC;
  return cls;
}

ChannelInstance aligned_from_general(const ChannelInstance& ch) {
  if (ch.aligned()) return ch;
  auto fold = [&](const Matrix& h, const SymMatrix& n, const std::string& name) {
    if (h.rows() != ch.t)
      throw std::domain_error("aligned_from_general: " + name + " not square");
    Eigen::FullPivLU<Matrix> lu(h);
    if (!lu.isInvertible())
      throw std::domain_error("aligned_from_general: " + name + " singular");
    const Matrix hinv = lu.inverse();
    return SymMatrix(hinv * n.mat() * hinv.transpose());
  };
  const Matrix eye = Matrix::Identity(ch.t, ch.t);
  return ChannelInstance(eye, eye, eye, fold(ch.H1, ch.N1, "H1"),
                         fold(ch.H2, ch.N2, "H2"), fold(ch.H3, ch.N3, "H3"),
                         ch.constraint);
}

}  // namespace secrecy
