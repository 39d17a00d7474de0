#pragma once

// Harmonic and analytic extension machinery on the unit disk: Poisson
// kernel and integral, Cauchy integral, gradients of the harmonic
// extension, Moebius transformations and dilation.
//
// Band-limited boundary data extends by the finite series
// sum a_n r^{|n|} e^{i n phi}. Piecewise-constant data extends through the
// harmonic measure of each cell, whose analytic completion is explicit, so
// gradients are closed-form in both representations.

#include "ncharm/circlefun.hpp"

#include <cmath>
#include <complex>

namespace ncharm {

// Evaluation cap: kernel denominators vanish on the circle.
inline constexpr double kDiskCap = 1.0 - 1e-12;

inline void check_disk_point(Complex z) {
  if (std::abs(z) > kDiskCap)
    throw std::invalid_argument("disk point too close to the boundary");
}

/// Poisson kernel P_z(e^{i t}) = (1-|z|^2)/|1 - conj(z) e^{i t}|^2.
inline double poisson_kernel(Complex z, double t) {
  check_disk_point(z);
  const Complex w = std::exp(Complex(0.0, t));
  const double den = std::norm(1.0 - std::conj(z) * w);
  return (1.0 - std::norm(z)) / den;
}

/// Harmonic measure of the boundary arc (a, b) seen from z, i.e.
/// (1/2pi) \int_a^b P_z(e^{i t}) dt. Closed form via the argument principle;
/// the branch is fixed by continuity from z = 0.
inline double arc_harmonic_measure(Complex z, double a, double b) {
  check_disk_point(z);
  const double len = b - a;
  const Complex ea = std::exp(Complex(0.0, a));
  const Complex eb = std::exp(Complex(0.0, b));
  const Complex t0 = (eb - z) / (ea - z);
  const Complex tc = eb / ea;  // value at z = 0, argument len
  // T maps the disk into a half plane, so arg(T(z)/T(0)) stays in (-pi, pi).
  const double argg = len + std::arg(t0 / tc);
  return (2.0 * argg - len) / kTwoPi;
}

/// Derivative of the analytic completion of the harmonic measure of (a, b).
/// With omega = Re phi, this is phi'(z); u_x - i u_y = phi'.
inline Complex arc_measure_phi_prime(Complex z, double a, double b) {
  const Complex ea = std::exp(Complex(0.0, a));
  const Complex eb = std::exp(Complex(0.0, b));
  return Complex(0.0, -1.0 / kPi) * (1.0 / (ea - z) - 1.0 / (eb - z));
}

/// Poisson integral P[f](z). Exact series / harmonic-measure sums.
inline Matrix poisson_extend(const CircleFun& f, Complex z) {
  check_disk_point(z);
  const int d = f.dim();
  Matrix s = Matrix::Zero(d, d);
  if (f.band_limited_repr()) {
    const double r = std::abs(z);
    const double phi = std::arg(z);
    for (int n = -f.degree(); n <= f.degree(); ++n)
      s += f.coeff(n) * (std::pow(r, std::abs(n)) * std::exp(Complex(0.0, n * phi)));
    return s;
  }
  for (const auto& c : f.cells()) s += c.value * arc_harmonic_measure(z, c.lo, c.hi);
  return s;
}

/// Cauchy integral C(f)(z) = \int f(t) / (1 - conj(t) z) dm(t).
inline Matrix cauchy_integral(const CircleFun& f, Complex z) {
  check_disk_point(z);
  const int d = f.dim();
  Matrix s = Matrix::Zero(d, d);
  if (f.band_limited_repr()) {
    Complex zn(1.0, 0.0);
    for (int n = 0; n <= f.degree(); ++n) {
      s += f.coeff(n) * zn;
      zn *= z;
    }
    return s;
  }
  // geometric series in z against closed-form Fourier coefficients
  double vmax = 0.0;
  for (const auto& c : f.cells()) vmax = std::max(vmax, op_norm(c.value));
  const double r = std::abs(z);
  Complex zn(1.0, 0.0);
  for (int n = 0;; ++n) {
    s += f.fourier_coeff(n) * zn;
    zn *= z;
    if (n > 8 && vmax * std::pow(r, n + 1) / (1.0 - r) < 1e-16 * (1.0 + vmax)) break;
    if (n > 200000) break;
  }
  return s;
}

/// (d/dx f, d/dy f) of the harmonic extension, as a pair of matrices.
inline std::pair<Matrix, Matrix> grad(const CircleFun& f, Complex z) {
  check_disk_point(z);
  const int d = f.dim();
  if (f.band_limited_repr()) {
    // f = A(z) + B(conj z) with A from modes n >= 0, B from modes n < 0
    Matrix ap = Matrix::Zero(d, d);
    Matrix bp = Matrix::Zero(d, d);
    Complex zn(1.0, 0.0);
    const Complex zc = std::conj(z);
    Complex zcn(1.0, 0.0);
    for (int n = 1; n <= f.degree(); ++n) {
      ap += f.coeff(n) * (static_cast<double>(n) * zn);
      bp += f.coeff(-n) * (static_cast<double>(n) * zcn);
      zn *= z;
      zcn *= zc;
    }
    // d/dx = A' + B', d/dy = i A' - i B'
    return {ap + bp, Complex(0.0, 1.0) * (ap - bp)};
  }
  Matrix sx = Matrix::Zero(d, d);
  Matrix sy = Matrix::Zero(d, d);
  for (const auto& c : f.cells()) {
    const Complex pp = arc_measure_phi_prime(z, c.lo, c.hi);
    sx += c.value * pp.real();
    sy += c.value * (-pp.imag());
  }
  return {sx, sy};
}

/// |grad f(z)|^2 = |df/dx|^2 + |df/dy|^2, Hermitian PSD.
inline Matrix grad_sq(const CircleFun& f, Complex z) {
  const auto [gx, gy] = grad(f, z);
  return hermitize(gx.adjoint() * gx + gy.adjoint() * gy);
}

/// 2 |f'(z)|^2 for analytic f; agrees with grad_sq on analytic inputs.
inline Matrix grad_sq_analytic(const CircleFun& f, Complex z) {
  if (!f.analytic()) throw std::invalid_argument("grad_sq_analytic: f not analytic");
  const int d = f.dim();
  Matrix fp = Matrix::Zero(d, d);
  Complex zn(1.0, 0.0);
  for (int n = 1; n <= f.degree(); ++n) {
    fp += f.coeff(n) * (static_cast<double>(n) * zn);
    zn *= z;
  }
  return hermitize(2.0 * fp.adjoint() * fp);
}

/// Moebius transformation psi(z) = e^{i theta} (z - z0) / (1 - conj(z0) z).
struct Mobius {
  double theta = 0.0;
  Complex z0 = 0.0;

  Complex apply(Complex z) const {
    return std::exp(Complex(0.0, theta)) * (z - z0) / (1.0 - std::conj(z0) * z);
  }
  double boundary(double t) const {
    return std::arg(apply_boundary(std::exp(Complex(0.0, t))));
  }
  Complex apply_boundary(Complex w) const {
    return std::exp(Complex(0.0, theta)) * (w - z0) / (1.0 - std::conj(z0) * w);
  }
  Complex derivative(Complex z) const {
    const Complex den = 1.0 - std::conj(z0) * z;
    return std::exp(Complex(0.0, theta)) * (1.0 - std::norm(z0)) / (den * den);
  }
};

/// Dilated boundary function: coefficients a_n gamma^{|n|}.
inline CircleFun dilate(const CircleFun& f, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("dilate: gamma must lie in (0, 1)");
  if (!f.band_limited_repr())
    throw std::invalid_argument("dilate: band-limited representation required");
  std::vector<Matrix> out;
  out.reserve(2 * f.degree() + 1);
  for (int n = -f.degree(); n <= f.degree(); ++n)
    out.push_back(f.coeff(n) * std::pow(gamma, std::abs(n)));
  return CircleFun::band_limited(f.degree(), std::move(out));
}

}  // namespace ncharm
