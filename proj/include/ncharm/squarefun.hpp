#pragma once

// Square functions: Stolz cones, the Lusin area integral A_c, the
// Littlewood-Paley g-function g_c, their truncated and row variants, and
// the area-based H^1_c norm.
//
// Cone integrals use a fixed polar cell layout over the whole disk with
// membership masking; cells straddling the cone boundary get a fractional
// weight from a 4x4 midpoint subgrid. The layout does not depend on the
// truncation radius, so truncation is PSD-monotone by construction. For
// band-limited data the cone integral reduces to precomputed monomial
// moments of the cone at vertex angle zero, rotated exactly.

#include "ncharm/quadrature.hpp"

#include <vector>

namespace ncharm {

/// Stolz cone Gamma_alpha(t, delta): |e^{it} - z| < alpha (1 - |z|), |z| < delta.
struct Cone {
  double alpha = 2.0;
  double vertex = 0.0;
  double trunc = 1.0;

  bool contains(Complex z) const {
    const double r = std::abs(z);
    if (r >= trunc) return false;
    return std::abs(std::exp(Complex(0.0, vertex)) - z) < alpha * (1.0 - r);
  }
};

class ConeQuadrature {
 public:
  struct Node {
    Complex z;       // inside the cone at vertex angle 0
    double weight;   // Euclidean area weight
  };

  static ConeQuadrature build(double alpha, double delta, int n_r = 96,
                              int n_phi = 192, double eps_bnd = 1e-4,
                              int node_floor = 16) {
    if (!(alpha > 1.0)) throw std::invalid_argument("cone aperture must exceed 1");
    if (!(delta > 0.0 && delta <= 1.0))
      throw std::invalid_argument("cone truncation must lie in (0, 1]");
    const Cone cone{alpha, 0.0, delta};
    ConeQuadrature q;
    q.alpha_ = alpha;
    q.delta_ = delta;
    q.eps_bnd_ = eps_bnd;
    const double r_top = 1.0 - eps_bnd;
    for (int i = 0; i < n_r; ++i) {
      const double r0 = r_top * i / n_r;
      const double r1 = r_top * (i + 1) / n_r;
      for (int j = 0; j < n_phi; ++j) {
        const double p0 = -kPi + kTwoPi * j / n_phi;
        const double p1 = -kPi + kTwoPi * (j + 1) / n_phi;
        const double area = 0.5 * (r1 * r1 - r0 * r0) * (p1 - p0);
        const double frac = cell_fraction(cone, r0, r1, p0, p1);
        if (frac <= 0.0) continue;
        const double rc = 0.5 * (r0 + r1);
        const double pc = 0.5 * (p0 + p1);
        q.nodes_.push_back({rc * std::exp(Complex(0.0, pc)), area * frac});
      }
    }
    if (static_cast<int>(q.nodes_.size()) < node_floor)
      throw std::runtime_error("cone quadrature under-resolved");
    return q;
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  double alpha() const { return alpha_; }
  double trunc() const { return delta_; }
  double boundary_cap() const { return eps_bnd_; }

  double area() const {
    double a = 0.0;
    for (const Node& n : nodes_) a += n.weight;
    return a;
  }

  /// Monomial cone moments M_{jk} = \int conj(z)^j z^k dx dy, j,k < max_pow.
  std::vector<std::vector<Complex>> monomial_moments(int max_pow) const {
    std::vector<std::vector<Complex>> m(max_pow, std::vector<Complex>(max_pow, 0.0));
    std::vector<Complex> zp(max_pow);
    for (const Node& n : nodes_) {
      zp[0] = 1.0;
      for (int k = 1; k < max_pow; ++k) zp[k] = zp[k - 1] * n.z;
      for (int j = 0; j < max_pow; ++j)
        for (int k = 0; k < max_pow; ++k)
          m[j][k] += std::conj(zp[j]) * zp[k] * n.weight;
    }
    return m;
  }

 private:
  static double cell_fraction(const Cone& cone, double r0, double r1, double p0,
                              double p1) {
    int inside = 0;
    const double rs[2] = {r0, r1};
    const double ps[2] = {p0, p1};
    for (double r : rs)
      for (double p : ps)
        inside += cone.contains(r * std::exp(Complex(0.0, p))) ? 1 : 0;
    inside += cone.contains(0.5 * (r0 + r1) * std::exp(Complex(0.0, 0.5 * (p0 + p1))))
                  ? 1
                  : 0;
    if (inside == 5) return 1.0;
    if (inside == 0) return 0.0;
    int hits = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double r = r0 + (r1 - r0) * (a + 0.5) / 4.0;
        const double p = p0 + (p1 - p0) * (b + 0.5) / 4.0;
        if (cone.contains(r * std::exp(Complex(0.0, p)))) ++hits;
      }
    return hits / 16.0;
  }

  double alpha_ = 2.0;
  double delta_ = 1.0;
  double eps_bnd_ = 1e-4;
  std::vector<Node> nodes_;
};

/// Evaluates t -> \int_{Gamma(t)} |grad f|^2 dx dy for a fixed function and
/// cone rule; the per-vertex cost is independent of the node count for
/// band-limited data.
class AreaEvaluator {
 public:
  AreaEvaluator(const CircleFun& f, const ConeQuadrature& quad)
      : f_(f), quad_(quad) {
    if (f.band_limited_repr()) {
      const int N = f.degree();
      if (N > 0) moments_ = quad.monomial_moments(N);
    }
  }

  /// Squared area function A_c(f)(t)^2 as a Hermitian PSD matrix.
  Matrix squared(double t) const {
    const int d = f_.dim();
    Matrix s = Matrix::Zero(d, d);
    if (f_.band_limited_repr()) {
      const int N = f_.degree();
      for (int m = 1; m <= N; ++m)
        for (int k = 1; k <= N; ++k) {
          const Complex rot = std::exp(Complex(0.0, (k - m) * t));
          const double mk = static_cast<double>(m) * k;
          s += f_.coeff(m).adjoint() * f_.coeff(k) *
               (mk * rot * moments_[static_cast<size_t>(m - 1)][static_cast<size_t>(k - 1)]);
          s += f_.coeff(-m).adjoint() * f_.coeff(-k) *
               (mk * std::conj(rot) *
                moments_[static_cast<size_t>(k - 1)][static_cast<size_t>(m - 1)]);
        }
      return hermitize(2.0 * s);
    }
    // piecewise data: scalar pair kernel accumulated over nodes
    const auto& cells = f_.cells();
    const size_t C = cells.size();
    std::vector<double> K(C * C, 0.0);
    std::vector<double> sx(C), sy(C);
    const Complex rot = std::exp(Complex(0.0, t));
    for (const auto& node : quad_.nodes()) {
      const Complex z = rot * node.z;
      for (size_t c = 0; c < C; ++c) {
        const Complex pp = arc_measure_phi_prime(z, cells[c].lo, cells[c].hi);
        sx[c] = pp.real();
        sy[c] = -pp.imag();
      }
      for (size_t a = 0; a < C; ++a)
        for (size_t b = 0; b < C; ++b)
          K[a * C + b] += (sx[a] * sx[b] + sy[a] * sy[b]) * node.weight;
    }
    for (size_t a = 0; a < C; ++a)
      for (size_t b = 0; b < C; ++b)
        s += cells[a].value.adjoint() * cells[b].value * K[a * C + b];
    return hermitize(s);
  }

 private:
  const CircleFun& f_;
  const ConeQuadrature& quad_;
  std::vector<std::vector<Complex>> moments_;
};

/// Column area function A_c(f, alpha)(t), truncated at |z| < delta.
inline PSDMatrix area_fun(const CircleFun& f, const ConeQuadrature& quad, double t) {
  return psd_sqrt(AreaEvaluator(f, quad).squared(t));
}

/// Bound on the cone integral lost to the boundary cap, from the integrand
/// maximum on the cap ring times the capped cone area.
inline double area_cap_bound(const CircleFun& f, const ConeQuadrature& quad, double t) {
  const double eps = quad.boundary_cap();
  double sup = 0.0;
  for (int j = 0; j < 32; ++j) {
    const double phi = t + quad.alpha() * eps * (j - 15.5) / 16.0;
    const Complex z = (1.0 - 0.5 * eps) * std::exp(Complex(0.0, phi));
    sup = std::max(sup, op_norm(grad_sq(f, z)));
  }
  return sup * quad.alpha() * eps * eps;
}

/// Squared g-function g_c(f)(t, delta)^2 = \int_0^delta |grad f(rt)|^2 (1-r^2) dr.
/// Gauss-Legendre is moment-exact for the polynomial band-limited integrand.
inline Matrix g_fun_squared(const CircleFun& f, double t, double delta = 1.0) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("g_fun: truncation must lie in (0, 1]");
  const Complex dir = std::exp(Complex(0.0, t));
  const int d = f.dim();
  Matrix s = Matrix::Zero(d, d);
  auto accumulate = [&](const QuadRule& q) {
    for (size_t i = 0; i < q.nodes.size(); ++i) {
      const double r = q.nodes[i];
      s += grad_sq(f, r * dir) * ((1.0 - r * r) * q.weights[i]);
    }
  };
  if (f.band_limited_repr()) {
    accumulate(gauss_legendre_on(0.0, std::min(delta, kDiskCap), f.degree() + 4));
  } else if (delta < 0.999) {
    accumulate(gauss_legendre_on(0.0, delta, 64));
  } else {
    // the gradient can blow up at jump directions; grade panels into r = 1
    double lo = 0.0;
    for (int k = 0; k <= 24; ++k) {
      const double hi = std::min(delta, 1.0 - std::pow(2.0, -(k + 1)));
      if (hi <= lo) break;
      accumulate(gauss_legendre_on(lo, std::min(hi, 1.0 - 1e-9), 10));
      lo = hi;
    }
  }
  return hermitize(s);
}

inline PSDMatrix g_fun(const CircleFun& f, double t, double delta = 1.0) {
  return psd_sqrt(g_fun_squared(f, t, delta));
}

/// Trace of the PSD square root of a Hermitian PSD matrix.
inline double trace_of_psd_root(const Matrix& sq) {
  const RealVector ev = hermitian_eigenvalues(sq).cwiseMax(0.0);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) s += std::sqrt(ev(i));
  return s;
}

/// \int_T tau(F(t)) dm for PSD-valued samples on a uniform angular grid.
inline double sq_l1_norm(const std::vector<Matrix>& samples) {
  if (samples.empty()) throw std::invalid_argument("sq_l1_norm: empty grid");
  double s = 0.0;
  for (const Matrix& m : samples) s += m.trace().real();
  return s / static_cast<double>(samples.size());
}

inline std::vector<double> uniform_angles(int n) {
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) t[j] = kTwoPi * (j + 0.5) / n;
  return t;
}

/// ||A_c(f)||_{L^1} = \int_T tau(A_c(f)(t)) dm on a uniform vertex grid.
inline double area_l1_norm(const CircleFun& f, const ConeQuadrature& quad,
                           int t_nodes = 48) {
  const AreaEvaluator ev(f, quad);
  double s = 0.0;
  for (double t : uniform_angles(t_nodes)) s += trace_of_psd_root(ev.squared(t));
  return s / t_nodes;
}

inline double g_l1_norm(const CircleFun& f, int t_nodes = 48) {
  double s = 0.0;
  for (double t : uniform_angles(t_nodes))
    s += trace_of_psd_root(g_fun_squared(f, t, 1.0));
  return s / t_nodes;
}

enum class SquareKind { area, g };

/// Theorem-style H^1_c norm surrogate ||f(0)||_1 + ||A_c(f)||_{L^1}
/// (or the g-function variant) for analytic f.
inline double h1c_area_norm(const CircleFun& f, const ConeQuadrature& quad,
                            SquareKind kind = SquareKind::area, int t_nodes = 48) {
  if (!f.analytic()) throw std::invalid_argument("h1c_area_norm: analytic input required");
  const double head = trace_norm(f.coeff(0));
  return head + (kind == SquareKind::area ? area_l1_norm(f, quad, t_nodes)
                                          : g_l1_norm(f, t_nodes));
}

}  // namespace ncharm
