#pragma once

// Quadrature building blocks: Gauss-Legendre rules, periodic trapezoid
// sums, and full-disk integrals of matrix-valued densities against the
// Green weight log(1/|z|) (possibly recentered by a Moebius pullback) or a
// smooth radial weight.

#include "ncharm/extension.hpp"

#include <functional>
#include <vector>

namespace ncharm {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1], by Newton iteration on Legendre roots.
inline QuadRule gauss_legendre(int n) {
  QuadRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = x;
    q.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return q;
}

inline QuadRule gauss_legendre_on(double a, double b, int n) {
  QuadRule q = gauss_legendre(n);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * q.nodes[i];
    q.weights[i] *= 0.5 * (b - a);
  }
  return q;
}

/// Composite rule in s = log(1/r) for \int_0^1 G(r) r log(1/r) dr.
/// The substitution removes the logarithmic singularity entirely:
/// \int_0^inf G(e^{-s}) e^{-2s} s ds, truncated where e^{-2s} s vanishes.
inline QuadRule radial_log_rule(int nodes_per_panel = 16) {
  static const double kBreaks[] = {0.0,  0.05, 0.125, 0.25, 0.5, 1.0,
                                   2.0,  4.0,  8.0,   16.0, 32.0};
  QuadRule out;
  for (size_t p = 0; p + 1 < std::size(kBreaks); ++p) {
    QuadRule q = gauss_legendre_on(kBreaks[p], kBreaks[p + 1], nodes_per_panel);
    for (int i = 0; i < nodes_per_panel; ++i) {
      const double s = q.nodes[i];
      out.nodes.push_back(std::exp(-s));                      // r
      out.weights.push_back(q.weights[i] * std::exp(-2 * s) * s);  // r log(1/r) dr
    }
  }
  return out;
}

/// (1/pi) \int_D F(z) log(1/|z|) dx dy for a matrix density F,
/// angular trapezoid x radial log rule. Near machine precision when the
/// angular dependence of F is a trigonometric polynomial resolved by
/// ang_nodes and the radial dependence is smooth.
inline Matrix disk_integral_log(const std::function<Matrix(Complex)>& density,
                                int dim, int ang_nodes, int radial_panel_nodes = 16) {
  const QuadRule rad = radial_log_rule(radial_panel_nodes);
  Matrix s = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < rad.nodes.size(); ++i) {
    const double r = rad.nodes[i];
    Matrix ring = Matrix::Zero(dim, dim);
    for (int j = 0; j < ang_nodes; ++j) {
      const double phi = kTwoPi * j / ang_nodes;
      ring += density(Complex(r * std::cos(phi), r * std::sin(phi)));
    }
    s += ring * (rad.weights[i] * kTwoPi / ang_nodes);
  }
  return s / kPi;
}

/// (1/pi) \int_D F(z) log|(1 - conj(w) z)/(z - conj(w))| dx dy, evaluated by
/// pulling the Green weight back to the origin with the disk automorphism
/// psi(u) = (u + conj(w)) / (1 + w u), under which the weight becomes
/// log(1/|u|) and the area element picks up |psi'(u)|^2.
inline Matrix disk_integral_green(const std::function<Matrix(Complex)>& density,
                                  int dim, Complex w, int ang_nodes,
                                  int radial_panel_nodes = 16) {
  const Complex a = std::conj(w);
  auto pulled = [&](Complex u) -> Matrix {
    const Complex den = 1.0 + w * u;
    const Complex z = (u + a) / den;
    const double jac = std::norm((1.0 - std::norm(a)) / (den * den));
    return density(z) * jac;
  };
  return disk_integral_log(pulled, dim, ang_nodes, radial_panel_nodes);
}

/// \int_D F(z) weight(z) dx dy with a smooth (non-singular) weight,
/// Gauss-Legendre radial x trapezoid angular.
inline Matrix disk_integral_smooth(const std::function<Matrix(Complex)>& density,
                                   const std::function<double(Complex)>& weight,
                                   int dim, int radial_nodes, int ang_nodes,
                                   double r_max = kDiskCap) {
  const QuadRule rad = gauss_legendre_on(0.0, r_max, radial_nodes);
  Matrix s = Matrix::Zero(dim, dim);
  for (int i = 0; i < radial_nodes; ++i) {
    const double r = rad.nodes[i];
    Matrix ring = Matrix::Zero(dim, dim);
    for (int j = 0; j < ang_nodes; ++j) {
      const double phi = kTwoPi * j / ang_nodes;
      const Complex z(r * std::cos(phi), r * std::sin(phi));
      ring += density(z) * weight(z);
    }
    s += ring * (rad.weights[i] * r * kTwoPi / ang_nodes);
  }
  return s;
}

}  // namespace ncharm
