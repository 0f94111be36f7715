#include "secrecy/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace secrecy {

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("SymMatrix: square matrix of dim >= 1 required");
  if (!m.allFinite()) throw std::invalid_argument("SymMatrix: non-finite entries");
  m_ = 0.5 * (m + m.transpose());
}

double min_eigenvalue(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_abs_eigenvalue(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_psd(const SymMatrix& m, double tol) {
  if (tol < 0) throw std::invalid_argument("is_psd: tol must be >= 0");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  return lo >= -tol * scale;
}

bool psd_leq(const SymMatrix& a, const SymMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("psd_leq: dimension mismatch");
  return is_psd(b - a, tol);
}

double log_det(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0)
    throw std::domain_error("log_det: matrix not PD, min eigenvalue " +
                            std::to_string(ev.minCoeff()));
  double acc = 0.0;
  for (int i = 0; i < ev.size(); ++i) acc += std::log2(ev(i));
  return acc;
}

namespace {

// Whitened problem L^{-1} A L^{-T} for B = L L^T.
Eigen::SelfAdjointEigenSolver<Matrix> whitened_solver(const SymMatrix& a,
                                                      const SymMatrix& b,
                                                      Eigen::LLT<Matrix>* llt_out) {
  if (a.dim() != b.dim()) throw std::invalid_argument("gen_eigen_max: dimension mismatch");
  Eigen::LLT<Matrix> llt(b.mat());
  if (llt.info() != Eigen::Success || min_eigenvalue(b) <= 0.0)
    throw std::domain_error("gen_eigen_max: B side of pencil not PD");
  const Matrix& l = llt.matrixL();
  Matrix w = l.triangularView<Eigen::Lower>().solve(a.mat());
  w = l.triangularView<Eigen::Lower>().solve(Matrix(w.transpose()));
  if (llt_out) *llt_out = llt;
  return Eigen::SelfAdjointEigenSolver<Matrix>(SymMatrix(w).mat());
}

}  // namespace

GenEigenPair gen_eigen_max(const SymMatrix& a, const SymMatrix& b) {
  Eigen::LLT<Matrix> llt;
  auto es = whitened_solver(a, b, &llt);
  const int last = a.dim() - 1;
  GenEigenPair out;
  out.lambda_max = es.eigenvalues()(last);
  Vector v = es.eigenvectors().col(last);
  // Map back: psi = L^{-T} v, then renormalize.
  Vector psi = Matrix(llt.matrixL()).triangularView<Eigen::Lower>().transpose().solve(v);
  psi.normalize();
  int imax = 0;
  psi.cwiseAbs().maxCoeff(&imax);
  if (psi(imax) < 0) psi = -psi;
  out.psi_max = psi;
  return out;
}

double gen_eigen_gap(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() < 2) return std::numeric_limits<double>::infinity();
  auto es = whitened_solver(a, b, nullptr);
  const auto& ev = es.eigenvalues();
  return ev(ev.size() - 1) - ev(ev.size() - 2);
}

SymMatrix psd_part(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat());
  Vector ev = es.eigenvalues().cwiseMax(0.0);
  return SymMatrix(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose());
}

SymMatrix inverse_pd(const SymMatrix& m, const std::string& name) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat());
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error(name + ": not PD, min eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()));
  Vector inv = es.eigenvalues().cwiseInverse();
  return SymMatrix(es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose());
}

}  // namespace secrecy
