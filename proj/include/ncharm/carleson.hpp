#pragma once

// Discrete M_+-valued measures on the disk, Carleson tubes, the Carleson
// norm, the Poisson sup-functional N(nu), and the gradient measures nu_f
// (Poisson weight 1-|z|^2) and lambda_f (Green weight log(1/|z|)).
//
// Both gradient measures share one polar node layout, so the pointwise
// bound 1-r^2 <= 2 log(1/r) transfers to the discrete weights node by node.

#include "ncharm/norms.hpp"
#include "ncharm/quadrature.hpp"

#include <utility>
#include <vector>

namespace ncharm {

/// Carleson tube I^(t0, delta) = {r e^{it} : 1-delta <= r < 1, |e^{it} - e^{it0}| < delta}.
struct Tube {
  double center = 0.0;  // boundary angle t0
  double delta = 1.0;   // width, chordal on the angular side

  bool full() const { return delta > 1.0; }  // I^(t, delta) = D for delta > 1
  bool contains(Complex z) const {
    if (full()) return true;
    if (std::abs(z) < 1.0 - delta) return false;
    return std::abs(std::exp(Complex(0.0, center)) - z / std::abs(z)) < delta;
  }
};

struct OperatorMeasure {
  int dim = 0;
  std::vector<Complex> nodes;
  std::vector<Matrix> weights;  // PSD, includes the quadrature cell measure

  Matrix total() const {
    Matrix s = Matrix::Zero(dim, dim);
    for (const Matrix& w : weights) s += w;
    return s;
  }
  Matrix tube_mass(const Tube& tube) const {
    Matrix s = Matrix::Zero(dim, dim);
    for (size_t k = 0; k < nodes.size(); ++k)
      if (tube.contains(nodes[k])) s += weights[k];
    return s;
  }
};

enum class GradientWeight { poisson, log_green };

/// nu_f / lambda_f on a shared Gauss-Legendre x trapezoid polar layout.
inline OperatorMeasure measure_from_gradient(const CircleFun& f, GradientWeight kind,
                                             int n_r = 48, int n_phi = 96,
                                             double r_max = 1.0 - 1e-6) {
  OperatorMeasure nu;
  nu.dim = f.dim();
  const QuadRule rad = gauss_legendre_on(0.0, r_max, n_r);
  nu.nodes.reserve(static_cast<size_t>(n_r) * n_phi);
  nu.weights.reserve(static_cast<size_t>(n_r) * n_phi);
  for (int i = 0; i < n_r; ++i) {
    const double r = rad.nodes[i];
    const double w = (kind == GradientWeight::poisson) ? (1.0 - r * r)
                                                       : std::log(1.0 / r);
    const double cell = rad.weights[i] * r * kTwoPi / n_phi;  // dx dy
    for (int j = 0; j < n_phi; ++j) {
      const Complex z = r * std::exp(Complex(0.0, kTwoPi * (j + 0.5) / n_phi));
      nu.nodes.push_back(z);
      nu.weights.push_back(grad_sq(f, z) * (w * cell));
    }
  }
  return nu;
}

struct TubeGrid {
  std::vector<double> centers;
  std::vector<double> deltas;

  static TubeGrid standard(int centers = 128, int levels = 11) {
    TubeGrid g;
    for (int i = 0; i < centers; ++i)
      g.centers.push_back(kTwoPi * (i + 0.5) / centers);
    for (int k = 0; k < levels; ++k) g.deltas.push_back(2.0 * std::pow(2.0, -k));
    return g;
  }
  TubeGrid refined() const {
    return standard(static_cast<int>(centers.size()) * 2,
                    static_cast<int>(deltas.size()) + 1);
  }
};

/// Carleson norm sup ||nu(I^)||_op / delta over the tube grid, with witness.
/// A grid sup, hence a lower bound of the true norm.
inline std::pair<double, Tube> carleson_norm(const OperatorMeasure& nu,
                                             const TubeGrid& grid) {
  if (grid.centers.empty() || grid.deltas.empty())
    throw std::invalid_argument("carleson_norm: empty grid");
  double best = 0.0;
  Tube witness{grid.centers.front(), grid.deltas.front()};
  for (double delta : grid.deltas) {
    for (double c : grid.centers) {
      const Tube tube{c, delta};
      const double v = op_norm(nu.tube_mass(tube)) / delta;
      if (v > best) {
        best = v;
        witness = tube;
      }
      if (tube.full()) break;  // all full-disk tubes coincide
    }
  }
  return {best, witness};
}

inline double poisson_kernel_point(Complex z, Complex w) {
  return (1.0 - std::norm(z)) / std::norm(1.0 - std::conj(z) * w);
}

/// N(nu) = sup_z || \int P_z(w) dnu(w) ||_op over the disk grid.
inline double poisson_functional(const OperatorMeasure& nu,
                                 const std::vector<Complex>& z_grid) {
  if (z_grid.empty()) throw std::invalid_argument("poisson_functional: empty grid");
  double best = 0.0;
  for (Complex z : z_grid) {
    check_disk_point(z);
    Matrix s = Matrix::Zero(nu.dim, nu.dim);
    for (size_t k = 0; k < nu.nodes.size(); ++k)
      s += nu.weights[k] * poisson_kernel_point(z, nu.nodes[k]);
    best = std::max(best, op_norm(s));
  }
  return best;
}

inline std::vector<Complex> polar_z_grid(int n_r = 12, int n_phi = 32,
                                         double r_max = 0.995) {
  std::vector<Complex> g;
  g.push_back(0.0);
  for (int i = 1; i <= n_r; ++i)
    for (int j = 0; j < n_phi; ++j)
      g.push_back(r_max * i / n_r * std::exp(Complex(0.0, kTwoPi * j / n_phi)));
  return g;
}

}  // namespace ncharm
