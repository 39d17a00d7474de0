#pragma once

// Matrix-valued functions on the unit circle with exact integration.
//
// Two representations are supported: band-limited Laurent polynomials
// (coefficients a_n for |n| <= N) and piecewise-constant functions on an
// angular partition of [0, 2pi). Pairings, column L^p norms and arc means
// are all closed-form; no sampling is involved anywhere in this header.

#include "ncharm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

namespace ncharm {

inline double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

/// (1/2pi) * integral of e^{i n theta} over [a, b].
inline Complex arc_exp_integral(int n, double a, double b) {
  if (n == 0) return Complex((b - a) / kTwoPi, 0.0);
  const Complex in(0.0, static_cast<double>(n));
  return (std::exp(in * b) - std::exp(in * a)) / (kTwoPi * in);
}

/// Boundary arc I(t0, delta) = {t : |t - e^{i t0}| < delta}, chordal radius.
/// delta >= 2 means the full circle.
struct Arc {
  double center = 0.0;  // angle in [0, 2pi)
  double radius = 1.0;  // chordal

  bool full() const { return radius >= 2.0; }
  double half_width() const {
    return full() ? kPi : 2.0 * std::asin(0.5 * radius);
  }
  double measure() const { return half_width() / kPi; }  // normalized m(I)
  double lo() const { return center - half_width(); }
  double hi() const { return center + half_width(); }
};

/// Overlap length of angular intervals [alo, ahi] and [clo, chi], where the
/// first may extend outside [0, 2pi); the second is assumed inside.
inline double angular_overlap(double alo, double ahi, double clo, double chi) {
  double len = 0.0;
  for (int k = -1; k <= 1; ++k) {
    const double lo = std::max(alo, clo + k * kTwoPi);
    const double hi = std::min(ahi, chi + k * kTwoPi);
    if (hi > lo) len += hi - lo;
  }
  return len;
}

class CircleFun {
 public:
  struct Cell {
    double lo = 0.0;
    double hi = 0.0;
    Matrix value;
  };

 private:
  struct Band {
    int degree;  // no default member initializer: keeps the variant
                 // default-constructible while the enclosing class is incomplete
    std::vector<Matrix> coeffs;  // n = -N..N
  };
  struct Piecewise {
    std::vector<Cell> cells;  // sorted, disjoint, covering [0, 2pi)
  };

 public:

  static CircleFun band_limited(int degree, std::vector<Matrix> coeffs) {
    if (degree < 0) throw std::invalid_argument("CircleFun: negative degree");
    if (static_cast<int>(coeffs.size()) != 2 * degree + 1)
      throw std::invalid_argument("CircleFun: coefficient count must be 2N+1");
    const int d = static_cast<int>(coeffs.front().rows());
    for (const Matrix& a : coeffs)
      if (a.rows() != d || a.cols() != d)
        throw std::invalid_argument("CircleFun: inconsistent coefficient dims");
    CircleFun f;
    f.dim_ = d;
    f.repr_ = Band{degree, std::move(coeffs)};
    return f;
  }

  static CircleFun constant(const Matrix& c) { return band_limited(0, {c}); }

  static CircleFun piecewise(std::vector<Cell> cells) {
    if (cells.empty()) throw std::invalid_argument("CircleFun: empty partition");
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.lo < b.lo; });
    const int d = static_cast<int>(cells.front().value.rows());
    double covered = 0.0;
    for (size_t i = 0; i < cells.size(); ++i) {
      const Cell& c = cells[i];
      if (c.value.rows() != d || c.value.cols() != d)
        throw std::invalid_argument("CircleFun: inconsistent cell dims");
      if (!(c.hi > c.lo) || c.lo < -1e-12 || c.hi > kTwoPi + 1e-12)
        throw std::invalid_argument("CircleFun: bad cell bounds");
      const double next = (i + 1 < cells.size()) ? cells[i + 1].lo : kTwoPi;
      if (std::abs(next - c.hi) > 1e-9)
        throw std::invalid_argument("CircleFun: partition has gaps or overlaps");
      covered += c.hi - c.lo;
    }
    if (std::abs(covered - kTwoPi) > 1e-9)
      throw std::invalid_argument("CircleFun: partition does not cover the circle");
    CircleFun f;
    f.dim_ = d;
    f.repr_ = Piecewise{std::move(cells)};
    return f;
  }

  int dim() const { return dim_; }
  bool band_limited_repr() const { return std::holds_alternative<Band>(repr_); }
  int degree() const { return std::get<Band>(repr_).degree; }
  const std::vector<Cell>& cells() const { return std::get<Piecewise>(repr_).cells; }

  /// Laurent coefficient a_n (band-limited only; zero outside the band).
  Matrix coeff(int n) const {
    const Band& b = std::get<Band>(repr_);
    if (std::abs(n) > b.degree) return Matrix::Zero(dim_, dim_);
    return b.coeffs[static_cast<size_t>(n + b.degree)];
  }

  bool analytic() const {
    if (!band_limited_repr()) return false;
    const Band& b = std::get<Band>(repr_);
    for (int n = -b.degree; n < 0; ++n)
      if (coeff(n).norm() > 0) return false;
    return true;
  }

  Matrix eval(double theta) const {
    if (const Band* b = std::get_if<Band>(&repr_)) {
      Matrix s = Matrix::Zero(dim_, dim_);
      for (int n = -b->degree; n <= b->degree; ++n)
        s += coeff(n) * std::exp(Complex(0.0, n * theta));
      return s;
    }
    const double t = wrap_angle(theta);
    const auto& cs = cells();
    // left-closed cells; last cell absorbs t == 2pi rounding
    for (const Cell& c : cs)
      if (t >= c.lo && t < c.hi) return c.value;
    return cs.back().value;
  }

  /// Fourier coefficient \hat f(n) = \int f(t) e^{-i n theta} dm. Exact.
  Matrix fourier_coeff(int n) const {
    if (band_limited_repr()) return coeff(n);
    Matrix s = Matrix::Zero(dim_, dim_);
    for (const Cell& c : cells()) s += c.value * arc_exp_integral(-n, c.lo, c.hi);
    return s;
  }

  CircleFun adjoint_fun() const {
    if (const Band* b = std::get_if<Band>(&repr_)) {
      std::vector<Matrix> out(b->coeffs.size());
      for (int n = -b->degree; n <= b->degree; ++n)
        out[static_cast<size_t>(n + b->degree)] = coeff(-n).adjoint();
      return band_limited(b->degree, std::move(out));
    }
    std::vector<Cell> cs = cells();
    for (Cell& c : cs) c.value = c.value.adjoint().eval();
    return piecewise(std::move(cs));
  }

  CircleFun scaled(Complex lambda) const {
    if (const Band* b = std::get_if<Band>(&repr_)) {
      std::vector<Matrix> out = b->coeffs;
      for (Matrix& a : out) a *= lambda;
      return band_limited(b->degree, std::move(out));
    }
    std::vector<Cell> cs = cells();
    for (Cell& c : cs) c.value *= lambda;
    return piecewise(std::move(cs));
  }

  /// f - c for a constant matrix c (exact in either representation).
  CircleFun minus_const(const Matrix& c) const {
    if (const Band* b = std::get_if<Band>(&repr_)) {
      std::vector<Matrix> out = b->coeffs;
      out[static_cast<size_t>(b->degree)] -= c;
      return band_limited(b->degree, std::move(out));
    }
    std::vector<Cell> cs = cells();
    for (Cell& c2 : cs) c2.value -= c;
    return piecewise(std::move(cs));
  }

  /// Partition refinement containing the breakpoints of both functions.
  static std::vector<double> merged_breakpoints(const CircleFun& f, const CircleFun& g) {
    std::vector<double> bp;
    for (const Cell& c : f.cells()) bp.push_back(c.lo);
    for (const Cell& c : g.cells()) bp.push_back(c.lo);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             bp.end());
    return bp;
  }

  CircleFun plus(const CircleFun& g) const;

 private:
  int dim_ = 0;
  std::variant<Band, Piecewise> repr_;
};

inline CircleFun CircleFun::plus(const CircleFun& g) const {
  if (dim_ != g.dim()) throw std::invalid_argument("CircleFun::plus: dim mismatch");
  if (band_limited_repr() && g.band_limited_repr()) {
    const int n = std::max(degree(), g.degree());
    std::vector<Matrix> out(2 * n + 1);
    for (int k = -n; k <= n; ++k) out[static_cast<size_t>(k + n)] = coeff(k) + g.coeff(k);
    return band_limited(n, std::move(out));
  }
  if (!band_limited_repr() && !g.band_limited_repr()) {
    std::vector<double> bp = merged_breakpoints(*this, g);
    std::vector<Cell> cs;
    for (size_t i = 0; i < bp.size(); ++i) {
      const double lo = bp[i];
      const double hi = (i + 1 < bp.size()) ? bp[i + 1] : kTwoPi;
      const double mid = 0.5 * (lo + hi);
      cs.push_back({lo, hi, eval(mid) + g.eval(mid)});
    }
    return piecewise(std::move(cs));
  }
  throw std::invalid_argument("CircleFun::plus: mixed representations");
}

/// <f, g> = \int f^* g dm, exact in all representation combinations.
inline Matrix l2_pairing(const CircleFun& f, const CircleFun& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("l2_pairing: dim mismatch");
  const int d = f.dim();
  Matrix s = Matrix::Zero(d, d);
  if (f.band_limited_repr() && g.band_limited_repr()) {
    const int n = std::max(f.degree(), g.degree());
    for (int k = -n; k <= n; ++k) s += f.coeff(k).adjoint() * g.coeff(k);
    return s;
  }
  if (!f.band_limited_repr() && !g.band_limited_repr()) {
    for (const auto& cf : f.cells())
      for (const auto& cg : g.cells()) {
        const double len = angular_overlap(cf.lo, cf.hi, cg.lo, cg.hi);
        if (len > 0) s += cf.value.adjoint() * cg.value * (len / kTwoPi);
      }
    return s;
  }
  if (f.band_limited_repr()) {
    // sum_n a_n^* \hat g(n), closed-form Fourier coefficients of g
    for (int n = -f.degree(); n <= f.degree(); ++n)
      s += f.coeff(n).adjoint() * g.fourier_coeff(n);
    return s;
  }
  return l2_pairing(g, f).adjoint();
}

/// Gram matrix \int |f|^2 dm = <f, f>, hermitized.
inline Matrix gram(const CircleFun& f) { return hermitize(l2_pairing(f, f)); }

/// Column norm ||f||_{L^p_c} = || (\int |f|^2 dm)^{1/2} ||_p.
inline double lp_c_norm(const CircleFun& f, double p) {
  return schatten_norm(psd_sqrt(gram(f)).mat(), p);
}

inline double lp_r_norm(const CircleFun& f, double p) {
  return lp_c_norm(f.adjoint_fun(), p);
}

/// \int_I f dm (not divided by |I|). Exact for both representations.
inline Matrix arc_integral(const CircleFun& f, const Arc& I) {
  const int d = f.dim();
  Matrix s = Matrix::Zero(d, d);
  if (f.band_limited_repr()) {
    for (int n = -f.degree(); n <= f.degree(); ++n)
      s += f.coeff(n) * arc_exp_integral(n, I.lo(), I.hi());
    return s;
  }
  for (const auto& c : f.cells()) {
    const double len = angular_overlap(I.lo(), I.hi(), c.lo, c.hi);
    if (len > 0) s += c.value * (len / kTwoPi);
  }
  return s;
}

/// \int_I f^* f dm. Exact.
inline Matrix arc_gram(const CircleFun& f, const Arc& I) {
  const int d = f.dim();
  Matrix s = Matrix::Zero(d, d);
  if (f.band_limited_repr()) {
    const int N = f.degree();
    for (int k = -2 * N; k <= 2 * N; ++k) {
      Matrix h = Matrix::Zero(d, d);
      for (int m = -N; m <= N; ++m)
        if (std::abs(m + k) <= N) h += f.coeff(m).adjoint() * f.coeff(m + k);
      s += h * arc_exp_integral(k, I.lo(), I.hi());
    }
    return hermitize(s);
  }
  for (const auto& c : f.cells()) {
    const double len = angular_overlap(I.lo(), I.hi(), c.lo, c.hi);
    if (len > 0) s += c.value.adjoint() * c.value * (len / kTwoPi);
  }
  return hermitize(s);
}

/// Mean value f_I = (1/|I|) \int_I f dm.
inline Matrix arc_mean(const CircleFun& f, const Arc& I) {
  const double m = I.measure();
  if (!(m > 0)) throw std::invalid_argument("arc_mean: zero-measure arc");
  return arc_integral(f, I) / m;
}

/// t -> tau(m f(t)) as a scalar (dim 1) CircleFun; m defaults to identity.
inline CircleFun trace_function(const CircleFun& f, const Matrix& mult) {
  auto tr = [&](const Matrix& x) {
    Matrix s(1, 1);
    s(0, 0) = (mult * x).trace();
    return s;
  };
  if (f.band_limited_repr()) {
    std::vector<Matrix> out;
    out.reserve(2 * f.degree() + 1);
    for (int n = -f.degree(); n <= f.degree(); ++n) out.push_back(tr(f.coeff(n)));
    return CircleFun::band_limited(f.degree(), std::move(out));
  }
  std::vector<CircleFun::Cell> cs;
  for (const auto& c : f.cells()) cs.push_back({c.lo, c.hi, tr(c.value)});
  return CircleFun::piecewise(std::move(cs));
}

inline CircleFun trace_function(const CircleFun& f) {
  return trace_function(f, Matrix::Identity(f.dim(), f.dim()));
}

}  // namespace ncharm
