#include "ncharm/norms.hpp"
#include "ncharm/verify.hpp"

#include <doctest.h>

using namespace ncharm;

namespace {

CircleFun single_mode(const Matrix& a, int n) {
  const int N = std::abs(n) > 0 ? std::abs(n) : 1;
  std::vector<Matrix> c(2 * N + 1, Matrix::Zero(a.rows(), a.cols()));
  c[static_cast<size_t>(n + N)] = a;
  return CircleFun::band_limited(N, std::move(c));
}

CircleFun scalar_mode(int n) {
  Matrix one(1, 1);
  one(0, 0) = 1.0;
  return single_mode(one, n);
}

/// Brute-force oscillation sup of scalar f(t) = t over a dense arc sweep.
double dense_star_oracle_coordinate() {
  const CircleFun f = scalar_mode(1);
  const ArcScanner scan(f);
  double best = 0.0;
  for (int ci = 0; ci < 200; ++ci)
    for (int ri = 1; ri <= 60; ++ri) {
      const Arc I{kTwoPi * ci / 200, 2.0 * ri / 60.0};
      best = std::max(best, std::sqrt(std::max(0.0, op_norm(scan.oscillation(I)))));
    }
  return best;
}

}  // namespace

TEST_CASE("star_c_norm examples") {
  const NormSearchGrid grid = NormSearchGrid::standard();
  Rng rng(1);
  const Matrix c = rng.gaussian_matrix(2);
  CHECK(star_c_norm(CircleFun::constant(c), grid).first == doctest::Approx(0.0));

  // diagonal f: sup of max = max of componentwise sups on the same grid
  const CircleFun f1 = scalar_mode(1);
  const CircleFun f2 = scalar_mode(2);
  std::vector<Matrix> coeffs(5, Matrix::Zero(2, 2));
  coeffs[3](0, 0) = 1.0;  // n = 1 in component 1
  coeffs[4](1, 1) = 1.0;  // n = 2 in component 2
  const CircleFun diag = CircleFun::band_limited(2, std::move(coeffs));
  const double expect =
      std::max(star_c_norm(f1, grid).first, star_c_norm(f2, grid).first);
  CHECK(star_c_norm(diag, grid).first == doctest::Approx(expect).epsilon(1e-12));

  // f(t) = t against a dense-arc brute-force sweep (12000 arcs)
  const double oracle = dense_star_oracle_coordinate();
  const double grid_value = star_c_norm(f1, grid).first;
  CHECK(std::abs(grid_value - oracle) < 0.02 * oracle);
}

TEST_CASE("star_c_norm grows under grid refinement") {
  Rng rng(2);
  const CircleFun f = random_bandlimited(rng.fork(0), 2, 4, false);
  const NormSearchGrid g1 = NormSearchGrid::standard(64, 8, 8, 16);
  const NormSearchGrid g2 = g1.refined();
  CHECK(star_c_norm(f, g2).first >= star_c_norm(f, g1).first - 1e-14);
}

TEST_CASE("bmo norms") {
  const NormSearchGrid grid = NormSearchGrid::standard();
  Rng rng(3);
  const Matrix c = rng.gaussian_matrix(2);
  CHECK(bmo_c_norm(CircleFun::constant(c), grid) == doctest::Approx(op_norm(c)));

  // scalar: column and row coincide
  const CircleFun s = scalar_mode(1);
  CHECK(bmo_c_norm(s, grid) == doctest::Approx(bmo_r_norm(s, grid)));

  // non-normal witness: e^{i t} [[0,1],[0,0]] has bmo_c != bmo_r
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  const CircleFun f = single_mode(nil, 1);
  const double bc = bmo_c_norm(f, grid);
  const double br = bmo_r_norm(f, grid);
  // f^* f = diag(0,1), f f^* = diag(1,0): oscillations live in different corners
  CHECK(bc > 0.0);
  CHECK(br > 0.0);
  CHECK(bmo_cr_norm(f, grid) == doctest::Approx(std::max(bc, br)));
}

TEST_CASE("linf_c norm") {
  Rng rng(4);
  const Matrix a = rng.gaussian_matrix(3);
  const Matrix b = rng.gaussian_matrix(3);
  CHECK(linf_c_norm(single_mode(a, 1)) == doctest::Approx(op_norm(a)));
  CHECK(linf_c_norm(CircleFun::constant(Matrix::Zero(2, 2))) == doctest::Approx(0.0));
  const CircleFun two = single_mode(a, 1).plus(single_mode(b, 2));
  CHECK(linf_c_norm(two) ==
        doctest::Approx(std::sqrt(op_norm(a.adjoint() * a + b.adjoint() * b))));
}

TEST_CASE("garsia norm closed forms") {
  const NormSearchGrid grid = NormSearchGrid::standard();
  CHECK(garsia_norm(CircleFun::constant(Matrix::Identity(2, 2)), grid) ==
        doctest::Approx(0.0));

  // f(t) = t: \int |t - w|^2 P_w dm = 1 - |w|^2, sup attained at w = 0
  const CircleFun f = scalar_mode(1);
  for (Complex w : {Complex(0.0, 0.0), Complex(0.5, 0.1), Complex(-0.3, 0.6)})
    CHECK(garsia_oscillation(f, w)(0, 0).real() ==
          doctest::Approx(1.0 - std::norm(w)));
  CHECK(garsia_norm(f, grid) == doctest::Approx(1.0));

  Rng rng(5);
  const Matrix a = rng.gaussian_matrix(2);
  CHECK(garsia_norm(single_mode(a, 1), grid) == doctest::Approx(op_norm(a)));
}

TEST_CASE("garsia oscillation agrees across representations") {
  // piecewise path vs band-limited path through a common constant function
  Rng rng(6);
  const Matrix c = rng.gaussian_matrix(2);
  const CircleFun pw = CircleFun::piecewise({{0.0, kPi, c}, {kPi, kTwoPi, c}});
  const Complex z(0.3, -0.2);
  CHECK(garsia_oscillation(pw, z).norm() < 1e-12);
  // and on a genuine jump function against dense quadrature
  const CircleFun f = random_piecewise(rng.fork(0), 2, 4);
  const Matrix fz = poisson_extend(f, z);
  const int M = 1 << 15;
  Matrix oracle = Matrix::Zero(2, 2);
  for (int j = 0; j < M; ++j) {
    const double t = kTwoPi * (j + 0.5) / M;
    const Matrix v = f.eval(t) - fz;
    oracle += v.adjoint() * v * poisson_kernel(z, t);
  }
  oracle /= static_cast<double>(M);
  CHECK((garsia_oscillation(f, z) - oracle).norm() < 1e-4 * (1.0 + oracle.norm()));
}

TEST_CASE("mobius orbit norm") {
  const OrbitGrid grid = OrbitGrid::standard();
  CHECK(mobius_orbit_norm(CircleFun::constant(Matrix::Identity(2, 2)), grid) ==
        doctest::Approx(0.0));

  // psi = identity, single gamma: collapses to ||f_gamma - f(0)||_{L^inf_c}
  Rng rng(7);
  const CircleFun f = random_bandlimited(rng.fork(0), 2, 3, true);
  OrbitGrid collapse;
  collapse.psis.push_back(Mobius{});
  collapse.gammas = {0.6};
  const double direct =
      linf_c_norm(dilate(f, 0.6).minus_const(f.coeff(0)));
  CHECK(mobius_orbit_norm(f, collapse) == doctest::Approx(direct).epsilon(1e-9));

  // f(z) = z against a denser grid: the standard grid is a lower bound
  const CircleFun id = scalar_mode(1);
  OrbitGrid dense = OrbitGrid::standard();
  for (double r : {0.95, 0.99})
    for (int j = 0; j < 16; ++j)
      dense.psis.push_back(Mobius{0.0, r * std::exp(Complex(0.0, kTwoPi * j / 16))});
  dense.gammas.push_back(0.99);
  const double coarse = mobius_orbit_norm(id, grid);
  const double fine = mobius_orbit_norm(id, dense);
  CHECK(coarse <= fine + 1e-12);
  CHECK(fine <= 1.0 + 1e-9);  // orbit functions are contractions of the disk
  CHECK_THROWS_AS(mobius_orbit_norm(scalar_mode(-1), grid), std::invalid_argument);
}

TEST_CASE("lp_cr norms") {
  Rng rng(8);
  const Matrix a = rng.gaussian_matrix(2);
  const Matrix b = rng.gaussian_matrix(2);
  const CircleFun f = single_mode(a, 1);

  const double inf = std::numeric_limits<double>::infinity();
  CHECK(lp_cr_norm(f, inf) == doctest::Approx(std::max(linf_c_norm(f), linf_r_norm(f))));
  CHECK(lp_cr_norm(f, 1.0) == doctest::Approx(lp_c_norm(f, 1.0)));

  const CircleFun g = single_mode(a, 1);
  const CircleFun h = single_mode(b, 2);
  const CircleFun sum = g.plus(h);
  CHECK(lp_cr_norm(sum, 1.0, std::pair(g, h)) ==
        doctest::Approx(lp_c_norm(g, 1.0) + lp_r_norm(h, 1.0)));
  CHECK_THROWS_AS(lp_cr_norm(sum, 1.0, std::pair(g, g)), std::invalid_argument);
}

TEST_CASE("mean-oscillation sandwich") {
  const NormSearchGrid grid = NormSearchGrid::standard(128, 9, 8, 16);
  Rng rng(9);
  for (int k = 0; k < 6; ++k) {
    const CircleFun f = random_bandlimited(rng.fork(k), 2, 4, false);
    const ArcScanner scan(f);
    // star_c <= sup over the same arcs of mean op-norm-squared oscillation
    double rhs = 0.0;
    for (double radius : grid.arc_radii)
      for (double center : grid.arc_centers) {
        const Arc I{center, radius};
        // (1/|I|) \int_I ||f - f_I||_op^2 dm >= op norm of the matrix oscillation
        const Matrix mean = arc_mean(f, I);
        const int M = 64;
        double s = 0.0;
        for (int j = 0; j < M; ++j) {
          const double t = I.lo() + (I.hi() - I.lo()) * (j + 0.5) / M;
          const double v = op_norm(f.eval(t) - mean);
          s += v * v;
        }
        rhs = std::max(rhs, std::sqrt(s / M));
      }
    const double star = star_c_norm(f, grid).first;
    CHECK(star <= rhs * (1.0 + 1e-6) + 1e-4);

    // mean norm <= linf_c <= mean norm + star (dense) + tolerance
    const double mean_norm = op_norm(circle_mean(f));
    const double linf = linf_c_norm(f);
    CHECK(mean_norm <= linf + 1e-12);
    CHECK(linf <= mean_norm + star_c_norm(f, grid.refined()).first + 0.05 * linf);
  }
}

TEST_CASE("row symmetry") {
  const NormSearchGrid grid = NormSearchGrid::standard(64, 8, 8, 16);
  Rng rng(10);
  for (int k = 0; k < 4; ++k) {
    const CircleFun f = random_bandlimited(rng.fork(k), 2, 3, false);
    const CircleFun fs = f.adjoint_fun();
    CHECK(bmo_r_norm(f, grid) == doctest::Approx(bmo_c_norm(fs, grid)));
    CHECK(lp_r_norm(f, 1.0) == doctest::Approx(lp_c_norm(fs, 1.0)));
    CHECK(linf_r_norm(f) == doctest::Approx(linf_c_norm(fs)));
  }
}
