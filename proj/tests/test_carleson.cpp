#include "ncharm/carleson.hpp"
#include "ncharm/verify.hpp"

#include <doctest.h>

using namespace ncharm;

namespace {

CircleFun az_fun(const Matrix& a) {
  std::vector<Matrix> c(3, Matrix::Zero(a.rows(), a.cols()));
  c[2] = a;
  return CircleFun::band_limited(1, std::move(c));
}

}  // namespace

TEST_CASE("gradient measures total mass") {
  Rng rng(1);
  const Matrix c = rng.gaussian_matrix(2);
  CHECK(measure_from_gradient(CircleFun::constant(c), GradientWeight::poisson)
            .total()
            .norm() < 1e-14);

  // f = a z: nu(D) = pi a*a and lambda(D) = pi a*a
  const Matrix a = rng.gaussian_matrix(2);
  const CircleFun f = az_fun(a);
  const Matrix nu = measure_from_gradient(f, GradientWeight::poisson).total();
  const Matrix la = measure_from_gradient(f, GradientWeight::log_green).total();
  const Matrix expect = kPi * a.adjoint() * a;
  CHECK((nu - expect).norm() < 1e-9 * expect.norm());
  CHECK((la - expect).norm() < 1e-4 * expect.norm());  // log weight: GL approximation
}

TEST_CASE("tube geometry") {
  const Tube full{0.0, 1.5};
  CHECK(full.full());
  CHECK(full.contains(Complex(-0.9, 0.0)));
  const Tube t{0.0, 0.5};
  CHECK(t.contains(Complex(0.8, 0.1)));
  CHECK_FALSE(t.contains(Complex(0.3, 0.0)));   // |z| < 1 - delta
  CHECK_FALSE(t.contains(Complex(0.0, 0.8)));   // wrong direction
}

TEST_CASE("carleson norm examples") {
  const TubeGrid grid = TubeGrid::standard(64, 8);
  OperatorMeasure zero;
  zero.dim = 2;
  zero.nodes = {Complex(0.0, 0.0)};
  zero.weights = {Matrix::Zero(2, 2)};
  CHECK(carleson_norm(zero, grid).first == doctest::Approx(0.0));

  Rng rng(2);
  const Matrix a = rng.gaussian_matrix(2);
  const CircleFun f = az_fun(a);
  const OperatorMeasure nu = measure_from_gradient(f, GradientWeight::poisson);

  // delta = 2 tube is the full disk: mass pi a*a, value ||pi a*a|| / 2
  TubeGrid wide;
  wide.centers = {0.3};
  wide.deltas = {2.0};
  CHECK(carleson_norm(nu, wide).first ==
        doctest::Approx(op_norm(kPi * a.adjoint() * a) / 2.0).epsilon(1e-8));

  // rotation invariance for f = a z: witness value independent of center
  const auto [v1, w1] = carleson_norm(nu, grid);
  double vmax = 0.0, vmin = 1e300;
  for (double c : grid.centers) {
    const double v = op_norm(nu.tube_mass(Tube{c, w1.delta})) / w1.delta;
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
  }
  CHECK((vmax - vmin) / v1 < 1e-3);
}

TEST_CASE("tube monotonicity in delta") {
  Rng rng(3);
  const CircleFun f = random_bandlimited(rng.fork(0), 2, 3, false);
  const OperatorMeasure nu = measure_from_gradient(f, GradientWeight::poisson);
  Matrix prev = Matrix::Zero(2, 2);
  for (double delta : {0.2, 0.5, 1.0, 2.0}) {
    const Matrix cur = nu.tube_mass(Tube{1.0, delta});
    CHECK(min_eig_hermitian(cur - prev) >= -1e-13 * (1.0 + op_norm(cur)));
    prev = cur;
  }
}

TEST_CASE("poisson functional examples") {
  const std::vector<Complex> zg = polar_z_grid(8, 16);
  OperatorMeasure zero;
  zero.dim = 2;
  zero.nodes = {Complex(0.1, 0.0)};
  zero.weights = {Matrix::Zero(2, 2)};
  CHECK(poisson_functional(zero, zg) == doctest::Approx(0.0));

  Rng rng(4);
  const Matrix a = rng.gaussian_matrix(2);
  const OperatorMeasure nu =
      measure_from_gradient(az_fun(a), GradientWeight::poisson);
  // at z = 0 the kernel is 1: value at least the total mass norm
  CHECK(poisson_functional(nu, {Complex(0.0, 0.0)}) ==
        doctest::Approx(op_norm(nu.total())).epsilon(1e-10));

  // point mass W at the origin: N(nu) = ||W|| sup_z P_z(0) = ||W|| sup (1-|z|^2)
  OperatorMeasure point;
  point.dim = 2;
  point.nodes = {Complex(0.0, 0.0)};
  point.weights = {Matrix(a.adjoint() * a)};
  double dense = 0.0;
  for (Complex z : polar_z_grid(64, 64, 0.999))
    dense = std::max(dense, poisson_kernel_point(z, 0.0) * op_norm(point.weights[0]));
  CHECK(poisson_functional(point, zg) == doctest::Approx(op_norm(point.weights[0])));
  CHECK(dense <= op_norm(point.weights[0]) * (1.0 + 1e-12));
}

TEST_CASE("node-wise weight comparison") {
  Rng rng(5);
  const CircleFun f = random_bandlimited(rng.fork(0), 2, 4, false);
  const OperatorMeasure nu = measure_from_gradient(f, GradientWeight::poisson);
  const OperatorMeasure la = measure_from_gradient(f, GradientWeight::log_green);
  REQUIRE(nu.nodes.size() == la.nodes.size());
  for (size_t k = 0; k < nu.nodes.size(); ++k) {
    CHECK(std::abs(nu.nodes[k] - la.nodes[k]) == 0.0);
    CHECK(min_eig_hermitian(2.0 * la.weights[k] - nu.weights[k]) >=
          -1e-12 * (1.0 + op_norm(nu.weights[k])));
  }
  const TubeGrid grid = TubeGrid::standard(32, 8);
  CHECK(carleson_norm(nu, grid).first <=
        2.0 * carleson_norm(la, grid).first + 1e-9);
}
