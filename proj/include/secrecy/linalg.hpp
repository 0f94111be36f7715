#ifndef SECRECY_LINALG_HPP
#define SECRECY_LINALG_HPP

#include <Eigen/Dense>
#include <string>

namespace secrecy {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Symmetric real matrix. Symmetrized on construction so eigen routines
// downstream never see asymmetry noise.
class SymMatrix {
public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m);
  static SymMatrix identity(int dim) { return SymMatrix(Matrix::Identity(dim, dim)); }
  static SymMatrix zero(int dim) { return SymMatrix(Matrix::Zero(dim, dim)); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  SymMatrix operator+(const SymMatrix& o) const { return SymMatrix(m_ + o.m_); }
  SymMatrix operator-(const SymMatrix& o) const { return SymMatrix(m_ - o.m_); }
  SymMatrix operator*(double c) const { return SymMatrix(m_ * c); }

private:
  Matrix m_;
};

struct GenEigenPair {
  double lambda_max = 0.0;
  Vector psi_max;  // unit norm, largest-magnitude entry positive
};

// Relative PSD tolerance used everywhere an ordering check appears.
inline constexpr double kPsdTol = 1e-9;

double min_eigenvalue(const SymMatrix& m);
double max_abs_eigenvalue(const SymMatrix& m);

// True iff min eigenvalue of M >= -tol * max(1, |eig|_max).
bool is_psd(const SymMatrix& m, double tol = kPsdTol);

// The partial order A <= B, i.e. B - A is PSD within tol.
bool psd_leq(const SymMatrix& a, const SymMatrix& b, double tol = kPsdTol);

// log2 det(M) for PD M. Throws std::domain_error naming the offending
// minimum eigenvalue otherwise.
double log_det(const SymMatrix& m);

// Largest generalized eigenpair of A psi = lambda B psi, B PD.
// Whitens with a Cholesky factor of B, solves the symmetric problem,
// maps the eigenvector back and renormalizes. The eigenvector sign is
// fixed by making its largest-magnitude entry positive so cascaded
// pencils are deterministic.
GenEigenPair gen_eigen_max(const SymMatrix& a, const SymMatrix& b);

// Gap between the top two whitened eigenvalues; small values flag
// eigenvector ambiguity to callers that cascade pencils.
double gen_eigen_gap(const SymMatrix& a, const SymMatrix& b);

// PSD part: eigenvalues clipped at zero.
SymMatrix psd_part(const SymMatrix& m);

SymMatrix inverse_pd(const SymMatrix& m, const std::string& name = "matrix");

}  // namespace secrecy

#endif
