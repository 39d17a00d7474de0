#pragma once

// Finite-dimensional operator algebra: complex d x d matrices with the
// standard (unnormalized) trace, Schatten norms, modulus and PSD roots.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ncharm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Tolerance budget shared by the whole library.
inline constexpr double kHermTol = 1e-12;  // allowed Hermitian defect
inline constexpr double kPsdTol = 1e-10;   // allowed negative-eigenvalue defect

inline Matrix identity(int d) { return Matrix::Identity(d, d); }

inline Complex trace(const Matrix& x) { return x.trace(); }

inline Matrix hermitize(const Matrix& x) { return 0.5 * (x + x.adjoint()); }

/// Eigenvalues of a Hermitian matrix, ascending. Throws on solver failure.
inline RealVector hermitian_eigenvalues(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(x), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "hermitian eigendecomposition failed (dim=" << x.rows()
       << ", frob=" << x.norm() << ")";
    throw std::runtime_error(os.str());
  }
  return es.eigenvalues();
}

inline double min_eig_hermitian(const Matrix& x) {
  return hermitian_eigenvalues(x)(0);
}

/// Operator norm (largest singular value).
inline double op_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  const RealVector ev = hermitian_eigenvalues(x.adjoint() * x);
  return std::sqrt(std::max(0.0, ev(ev.size() - 1)));
}

inline bool is_hermitian(const Matrix& x, double tol = kHermTol) {
  return op_norm(x - x.adjoint()) <= tol * (1.0 + op_norm(x));
}

/// PSD matrix: Hermitian with min eigenvalue >= -kPsdTol*(1+||X||_op).
/// Eigenvalues in the tolerance band below zero are clamped to zero.
class PSDMatrix {
 public:
  explicit PSDMatrix(Matrix m) : mat_(std::move(m)) {
    const Matrix h = hermitize(mat_);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("PSDMatrix: eigendecomposition failed");
    const double scale = 1.0 + std::abs(es.eigenvalues()(es.eigenvalues().size() - 1));
    if (es.eigenvalues()(0) < -kPsdTol * scale) {
      std::ostringstream os;
      os << "PSDMatrix: matrix is not PSD (min eig " << es.eigenvalues()(0)
         << ", scale " << scale << ")";
      throw std::invalid_argument(os.str());
    }
    RealVector ev = es.eigenvalues().cwiseMax(0.0);
    mat_ = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    mat_ = hermitize(mat_);
  }

  static PSDMatrix zero(int d) { return PSDMatrix(Matrix::Zero(d, d)); }

  const Matrix& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

 private:
  Matrix mat_;
};

/// Hermitian PSD square root; input must be PSD within tolerance.
inline PSDMatrix psd_sqrt(const Matrix& x) {
  const Matrix h = hermitize(x);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("psd_sqrt: eigendecomposition failed");
  const double scale = 1.0 + std::abs(es.eigenvalues()(es.eigenvalues().size() - 1));
  if (es.eigenvalues()(0) < -kPsdTol * scale)
    throw std::invalid_argument("psd_sqrt: matrix is not PSD within tolerance");
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return PSDMatrix(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
}

inline PSDMatrix psd_sqrt(const PSDMatrix& x) { return psd_sqrt(x.mat()); }

/// |X| = (X*X)^{1/2}.
inline PSDMatrix modulus(const Matrix& x) { return psd_sqrt(Matrix(x.adjoint() * x)); }

/// Schatten p-norm, p in (0, inf]. p = inf gives the operator norm.
inline double schatten_norm(const Matrix& x, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("schatten_norm: p must be positive");
  if (std::isinf(p)) return op_norm(x);
  RealVector ev = hermitian_eigenvalues(x.adjoint() * x).cwiseMax(0.0).cwiseSqrt();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) s += std::pow(ev(i), p);
  return std::pow(s, 1.0 / p);
}

inline double trace_norm(const Matrix& x) { return schatten_norm(x, 1.0); }

}  // namespace ncharm
