#include "ncharm/matrix.hpp"
#include "ncharm/rng.hpp"

#include <doctest.h>

using namespace ncharm;

namespace {

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("modulus examples") {
  CHECK(modulus(Matrix::Zero(2, 2)).mat().norm() == doctest::Approx(0.0));

  Matrix x = m2(3.0, 0.0, 0.0, Complex(0.0, -4.0));
  Matrix expect = m2(3.0, 0.0, 0.0, 4.0);
  CHECK((modulus(x).mat() - expect).norm() < 1e-12);

  // nilpotent: X*X = diag(0, 4), so |X| = diag(0, 2) (eigendecomposition oracle)
  Matrix n = m2(0.0, 2.0, 0.0, 0.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(n.adjoint() * n));
  Matrix oracle = es.eigenvectors() *
                  RealVector(es.eigenvalues().cwiseMax(0.0).cwiseSqrt()).asDiagonal() *
                  es.eigenvectors().adjoint();
  CHECK((modulus(n).mat() - oracle).norm() < 1e-12);
  CHECK((modulus(n).mat() - m2(0.0, 0.0, 0.0, 2.0)).norm() < 1e-12);

  // modulus(X)^2 = X*X
  Rng rng(42);
  for (int k = 0; k < 20; ++k) {
    const Matrix y = rng.gaussian_matrix(4);
    const Matrix r = modulus(y).mat();
    CHECK((r * r - y.adjoint() * y).norm() <= 1e-10 * (1.0 + y.norm() * y.norm()));
  }
}

TEST_CASE("schatten norm examples") {
  CHECK(schatten_norm(Matrix::Identity(3, 3), 1.0) == doctest::Approx(3.0));
  CHECK(schatten_norm(m2(3.0, 0.0, 0.0, 4.0), 2.0) == doctest::Approx(5.0));
  // singular values {2, 0} via the SVD oracle
  const Matrix n = m2(0.0, 2.0, 0.0, 0.0);
  Eigen::JacobiSVD<Matrix> svd(n);
  CHECK(svd.singularValues()(0) == doctest::Approx(2.0));
  CHECK(schatten_norm(n, 1.0) == doctest::Approx(2.0));
  CHECK(schatten_norm(n, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(schatten_norm(n, 0.0), std::invalid_argument);
}

TEST_CASE("psd_sqrt examples") {
  CHECK((psd_sqrt(Matrix(Matrix::Identity(2, 2))).mat() - Matrix::Identity(2, 2)).norm() <
        1e-14);
  CHECK((psd_sqrt(Matrix(m2(4.0, 0.0, 0.0, 9.0))).mat() - m2(2.0, 0.0, 0.0, 3.0)).norm() <
        1e-12);

  // [[2,1],[1,2]]: eigenvalues {1, 3}, eigen-oracle root
  const Matrix x = m2(2.0, 1.0, 1.0, 2.0);
  const RealVector ev = hermitian_eigenvalues(x);
  CHECK(ev(0) == doctest::Approx(1.0));
  CHECK(ev(1) == doctest::Approx(3.0));
  const Matrix r = psd_sqrt(x).mat();
  CHECK((r * r - x).norm() < 1e-12);
  CHECK(hermitian_eigenvalues(r)(1) == doctest::Approx(std::sqrt(3.0)));

  // not PSD beyond tolerance
  CHECK_THROWS_AS(psd_sqrt(Matrix(m2(-1.0, 0.0, 0.0, 1.0))), std::invalid_argument);
}

TEST_CASE("Hoelder inequality on random draws") {
  const double tuples[4][3] = {{2, 2, 1}, {1, std::numeric_limits<double>::infinity(), 1},
                               {4, 4, 2}, {3, 6, 2}};
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const int d = 1 + k % 6;
    const Matrix x = rng.gaussian_matrix(d);
    const Matrix y = rng.gaussian_matrix(d);
    for (const auto& t : tuples) {
      const double lhs = schatten_norm(x * y, t[2]);
      const double rhs = schatten_norm(x, t[0]) * schatten_norm(y, t[1]);
      CHECK(lhs <= (1.0 + 1e-10) * rhs);
    }
  }
}

TEST_CASE("trace properties") {
  Rng rng(99);
  for (int k = 0; k < 30; ++k) {
    const Matrix x = rng.gaussian_matrix(1 + k % 5);
    const double a = (x.adjoint() * x).trace().real();
    const double b = (x * x.adjoint()).trace().real();
    CHECK(std::abs(a - b) <= 1e-10 * a);
    CHECK(std::abs(x.trace()) <= (1.0 + 1e-12) * schatten_norm(x, 1.0));
  }
}

TEST_CASE("psd_sqrt is a right inverse of squaring") {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const Matrix g = rng.gaussian_matrix(4);
    const Matrix p = g.adjoint() * g;  // PSD
    const Matrix r = psd_sqrt(p).mat();
    CHECK((r * r - p).norm() <= 1e-9 * (1.0 + p.norm()));
    CHECK(min_eig_hermitian(r) >= -1e-12 * (1.0 + op_norm(r)));
  }
}

TEST_CASE("PSDMatrix clamps tolerance-band negatives and rejects real ones") {
  Matrix x = m2(1.0, 0.0, 0.0, -1e-12);
  const PSDMatrix p(x);
  CHECK(min_eig_hermitian(p.mat()) >= 0.0);
  CHECK_THROWS_AS(PSDMatrix(Matrix(m2(1.0, 0.0, 0.0, -1e-3))), std::invalid_argument);
}
