#pragma once

// BMO-side norms: the arc-oscillation seminorm, BMO_c / BMO_r / BMO_cr,
// the column L^inf norm, the Garsia norm, the Moebius-orbit norm and the
// L^p_{cr} sum/max norms.
//
// Every supremum here is a grid supremum: the returned value is a lower
// bound of the true sup and carries its witness region. Sweeps are
// deterministic; ties keep the earliest grid element.

#include "ncharm/extension.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ncharm {

struct NormSearchGrid {
  std::vector<double> arc_centers;
  std::vector<double> arc_radii;   // chordal, dyadic by default
  std::vector<double> disk_radii;  // includes 0
  std::vector<double> disk_angles;

  static NormSearchGrid standard(int centers = 256, int levels = 11,
                                 int radii = 32, int angles = 128,
                                 double r_max = 1.0 - 1e-4) {
    NormSearchGrid g;
    g.arc_centers.reserve(centers);
    for (int i = 0; i < centers; ++i)
      g.arc_centers.push_back(kTwoPi * (i + 0.5) / centers);
    for (int k = 0; k < levels; ++k) g.arc_radii.push_back(2.0 * std::pow(2.0, -k));
    g.disk_radii.push_back(0.0);
    for (int i = 0; i < radii; ++i) {
      const double x = std::cos(kPi * (2 * i + 1) / (2.0 * radii));
      g.disk_radii.push_back(r_max * 0.5 * (x + 1.0));
    }
    std::sort(g.disk_radii.begin(), g.disk_radii.end());
    for (int j = 0; j < angles; ++j) g.disk_angles.push_back(kTwoPi * j / angles);
    return g;
  }

  NormSearchGrid refined() const {
    return standard(static_cast<int>(arc_centers.size()) * 2,
                    static_cast<int>(arc_radii.size()) + 1,
                    static_cast<int>(disk_radii.size() - 1) * 2,
                    static_cast<int>(disk_angles.size()) * 2);
  }
};

/// Precomputed per-function data making each arc evaluation O(N) / O(cells).
class ArcScanner {
 public:
  explicit ArcScanner(const CircleFun& f) : f_(f) {
    if (f.band_limited_repr()) {
      const int N = f.degree();
      gram_.reserve(4 * N + 1);
      for (int k = -2 * N; k <= 2 * N; ++k) {
        Matrix h = Matrix::Zero(f.dim(), f.dim());
        for (int m = -N; m <= N; ++m)
          if (std::abs(m + k) <= N) h += f.coeff(m).adjoint() * f.coeff(m + k);
        gram_.push_back(std::move(h));
      }
    }
  }

  Matrix arc_integral(const Arc& I) const { return ncharm::arc_integral(f_, I); }

  Matrix arc_second_moment(const Arc& I) const {
    if (!f_.band_limited_repr()) return arc_gram(f_, I);
    const int N = f_.degree();
    Matrix s = Matrix::Zero(f_.dim(), f_.dim());
    for (int k = -2 * N; k <= 2 * N; ++k)
      s += gram_[static_cast<size_t>(k + 2 * N)] * arc_exp_integral(k, I.lo(), I.hi());
    return hermitize(s);
  }

  /// (1/|I|) \int_I |f - f_I|^2 dm.
  Matrix oscillation(const Arc& I) const {
    const double m = I.measure();
    const Matrix mean = arc_integral(I) / m;
    return hermitize(arc_second_moment(I) / m - mean.adjoint() * mean);
  }

  const CircleFun& fun() const { return f_; }

 private:
  const CircleFun& f_;
  std::vector<Matrix> gram_;  // band-limited only: coefficients of f^* f
};

/// ||f||_{*,c} over the arc grid, with the witness arc.
inline std::pair<double, Arc> star_c_norm(const CircleFun& f,
                                          const NormSearchGrid& grid) {
  if (grid.arc_centers.empty() || grid.arc_radii.empty())
    throw std::invalid_argument("star_c_norm: empty grid");
  const ArcScanner scan(f);
  double best = 0.0;
  Arc witness{grid.arc_centers.front(), grid.arc_radii.front()};
  for (double radius : grid.arc_radii)
    for (double center : grid.arc_centers) {
      const Arc I{center, radius};
      const double v = std::sqrt(std::max(0.0, op_norm(scan.oscillation(I))));
      if (v > best) {
        best = v;
        witness = I;
      }
      if (I.full()) break;  // all full-circle arcs coincide
    }
  return {best, witness};
}

inline Matrix circle_mean(const CircleFun& f) { return f.fourier_coeff(0); }

inline double bmo_c_norm(const CircleFun& f, const NormSearchGrid& grid) {
  return op_norm(circle_mean(f)) + star_c_norm(f, grid).first;
}

inline double bmo_r_norm(const CircleFun& f, const NormSearchGrid& grid) {
  return bmo_c_norm(f.adjoint_fun(), grid);
}

inline double bmo_cr_norm(const CircleFun& f, const NormSearchGrid& grid) {
  return std::max(bmo_c_norm(f, grid), bmo_r_norm(f, grid));
}

/// ||f||_{L^inf_c} = || \int |f|^2 dm ||_op^{1/2}. Exact.
inline double linf_c_norm(const CircleFun& f) {
  return std::sqrt(std::max(0.0, op_norm(gram(f))));
}

inline double linf_r_norm(const CircleFun& f) { return linf_c_norm(f.adjoint_fun()); }

/// Poisson-weighted oscillation \int |f - f(z)|^2 dm_z, exact per z.
inline Matrix garsia_oscillation(const CircleFun& f, Complex z) {
  const Matrix c = poisson_extend(f, z);
  const int d = f.dim();
  Matrix s = Matrix::Zero(d, d);
  if (f.band_limited_repr()) {
    const int N = f.degree();
    const double r = std::abs(z);
    const double phi = std::arg(z);
    for (int k = -2 * N; k <= 2 * N; ++k) {
      Matrix h = Matrix::Zero(d, d);
      for (int m = -N; m <= N; ++m)
        if (std::abs(m + k) <= N) h += f.coeff(m).adjoint() * f.coeff(m + k);
      h -= c.adjoint() * f.coeff(k);
      h -= f.coeff(-k).adjoint() * c;
      s += h * (std::pow(r, std::abs(k)) * std::exp(Complex(0.0, k * phi)));
    }
    s += c.adjoint() * c;
    return hermitize(s);
  }
  for (const auto& cell : f.cells()) {
    const Matrix v = cell.value - c;
    s += v.adjoint() * v * arc_harmonic_measure(z, cell.lo, cell.hi);
  }
  return hermitize(s);
}

/// Garsia norm ||f||_{**,c}: grid sup over interior points.
inline double garsia_norm(const CircleFun& f, const NormSearchGrid& grid) {
  if (grid.disk_radii.empty() || grid.disk_angles.empty())
    throw std::invalid_argument("garsia_norm: empty grid");
  double best = 0.0;
  for (double r : grid.disk_radii) {
    for (double phi : grid.disk_angles) {
      const Complex z = r * std::exp(Complex(0.0, phi));
      const double v = std::sqrt(std::max(0.0, op_norm(garsia_oscillation(f, z))));
      best = std::max(best, v);
      if (r == 0.0) break;
    }
  }
  return best;
}

struct OrbitGrid {
  std::vector<Mobius> psis;
  std::vector<double> gammas;

  static OrbitGrid standard() {
    OrbitGrid g;
    g.psis.push_back(Mobius{});
    for (double rot : {0.0, 0.5 * kPi, kPi, 1.5 * kPi})
      for (double r : {0.3, 0.6, 0.85})
        for (int j = 0; j < 8; ++j)
          g.psis.push_back(Mobius{rot, r * std::exp(Complex(0.0, kTwoPi * j / 8))});
    g.gammas = {0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.95};
    return g;
  }
};

/// Analytic series evaluation at an interior point.
inline Matrix analytic_eval(const CircleFun& f, Complex z) {
  Matrix s = Matrix::Zero(f.dim(), f.dim());
  Complex zn(1.0, 0.0);
  for (int n = 0; n <= f.degree(); ++n) {
    s += f.coeff(n) * zn;
    zn *= z;
  }
  return s;
}

/// sup over g = f o psi - f(psi(0)) and 0 < gamma < 1 of ||g_gamma||_{L^inf_c}.
inline double mobius_orbit_norm(const CircleFun& f, const OrbitGrid& grid) {
  if (!f.analytic())
    throw std::invalid_argument("mobius_orbit_norm: analytic input required");
  if (grid.psis.empty() || grid.gammas.empty())
    throw std::invalid_argument("mobius_orbit_norm: empty grid");
  const int d = f.dim();
  double best = 0.0;
  for (const Mobius& psi : grid.psis) {
    const Matrix c = analytic_eval(f, psi.apply(0.0));
    for (double gamma : grid.gammas) {
      // quadrature node count resolving the dilated series tail
      int M = std::max(128, 4 * f.degree() + 8);
      M = std::max(M, static_cast<int>(std::ceil(-37.0 / std::log(gamma))));
      M = std::min(M, 1 << 14);
      Matrix q = Matrix::Zero(d, d);
      for (int j = 0; j < M; ++j) {
        const Complex t = std::exp(Complex(0.0, kTwoPi * j / M));
        const Matrix h = analytic_eval(f, psi.apply(gamma * t)) - c;
        q += h.adjoint() * h;
      }
      best = std::max(best, std::sqrt(std::max(0.0, op_norm(q / double(M)))));
    }
  }
  return best;
}

/// L^p_{cr} norm. For p <= 2 this is the sum norm over a supplied splitting
/// f = g + h and is only an upper bound on the infimum; for p > 2 it is the
/// exact maximum of the column and row norms.
inline double lp_cr_norm(const CircleFun& f, double p,
                         const std::optional<std::pair<CircleFun, CircleFun>>& splitting
                         = std::nullopt) {
  if (!(p > 0)) throw std::invalid_argument("lp_cr_norm: p must be positive");
  if (p > 2.0) return std::max(lp_c_norm(f, p), lp_r_norm(f, p));
  CircleFun g = splitting ? splitting->first : f;
  CircleFun h = splitting ? splitting->second
                          : CircleFun::constant(Matrix::Zero(f.dim(), f.dim()));
  const CircleFun diff = g.plus(h).minus_const(Matrix::Zero(f.dim(), f.dim()));
  const CircleFun err = diff.plus(f.scaled(-1.0));
  if (linf_c_norm(err) > 1e-10 * (1.0 + linf_c_norm(f)))
    throw std::invalid_argument("lp_cr_norm: splitting does not reconstruct f");
  return lp_c_norm(g, p) + lp_r_norm(h, p);
}

}  // namespace ncharm
