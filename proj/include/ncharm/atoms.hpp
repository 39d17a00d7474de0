#pragma once

// M_c-atoms: validation against the three defining clauses, deterministic
// random generation, atomic decompositions and two-sided H^1_c bounds.
//
// The true H^1_c norm is an infimum over all decompositions and is never
// computed; the API brackets it between a duality-based lower bound and a
// decomposition-based upper bound.

#include "ncharm/norms.hpp"
#include "ncharm/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ncharm {

inline constexpr double kAtomMeanTol = 1e-12;
inline constexpr double kAtomSizeTol = 1e-12;

struct Atom {
  Arc support;
  CircleFun fun;
};

struct AtomCheck {
  bool support_ok = false;
  bool mean_ok = false;
  bool size_ok = false;
  bool l1_consequence_ok = false;  // \int ||a(t)||_1 dm <= 1
  double mean_defect = 0.0;        // ||\int a dm||_op
  double size_margin = 0.0;        // |I|^{-1/2} - ||a||_{L^1_c}
  double l1_value = 0.0;           // \int ||a(t)||_1 dm

  bool ok() const { return support_ok && mean_ok && size_ok && l1_consequence_ok; }
  std::string violated() const {
    std::string v;
    if (!support_ok) v += "(i)";
    if (!mean_ok) v += "(ii)";
    if (!size_ok) v += "(iii)";
    if (!l1_consequence_ok) v += "(3.1)";
    return v;
  }
};

/// \int ||f(t)||_1 dm. Exact for piecewise data; spectrally accurate
/// trapezoid sum otherwise (the integrand is smooth and periodic).
inline double boundary_l1m_norm(const CircleFun& f, int quad_nodes = 512) {
  if (!f.band_limited_repr()) {
    double s = 0.0;
    for (const auto& c : f.cells()) s += trace_norm(c.value) * (c.hi - c.lo);
    return s / kTwoPi;
  }
  double s = 0.0;
  for (int j = 0; j < quad_nodes; ++j)
    s += trace_norm(f.eval(kTwoPi * j / quad_nodes));
  return s / quad_nodes;
}

inline AtomCheck validate_atom(const Atom& a) {
  AtomCheck r;
  const Arc& I = a.support;
  // (i) support containment: every cell mass outside I must vanish
  r.support_ok = true;
  if (a.fun.band_limited_repr()) {
    r.support_ok = I.full();  // band-limited data cannot vanish on an arc
  } else {
    const double scale = 1.0 + linf_c_norm(a.fun);
    for (const auto& c : a.fun.cells()) {
      const double inside = angular_overlap(I.lo(), I.hi(), c.lo, c.hi);
      const double outside = (c.hi - c.lo) - inside;
      if (outside > 1e-12 && op_norm(c.value) > 1e-12 * scale) {
        r.support_ok = false;
        break;
      }
    }
  }
  // (ii) zero mean over I (equals the full-circle mean when (i) holds)
  r.mean_defect = op_norm(a.fun.fourier_coeff(0));
  r.mean_ok = r.mean_defect <= kAtomMeanTol;
  // (iii) ||a||_{L^1_c} <= |I|^{-1/2}
  const double cap = 1.0 / std::sqrt(I.measure());
  const double n1 = lp_c_norm(a.fun, 1.0);
  r.size_margin = cap - n1;
  r.size_ok = n1 <= (1.0 + kAtomSizeTol) * cap;
  // consequence: an M_c-atom is an L^1(M)-valued 2-atom
  r.l1_value = boundary_l1m_norm(a.fun);
  r.l1_consequence_ok = r.l1_value <= 1.0 + 1e-10;
  return r;
}

/// Piecewise-constant function equal to (f - sub) on I and 0 elsewhere.
/// f must be piecewise-constant.
inline CircleFun restrict_to_arc(const CircleFun& f, const Arc& I, const Matrix& sub) {
  const int d = f.dim();
  std::vector<double> bp;
  for (const auto& c : f.cells()) bp.push_back(c.lo);
  if (!I.full()) {
    bp.push_back(wrap_angle(I.lo()));
    bp.push_back(wrap_angle(I.hi()));
  }
  bp.push_back(0.0);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-14; }),
           bp.end());
  std::vector<CircleFun::Cell> cells;
  for (size_t i = 0; i < bp.size(); ++i) {
    const double lo = bp[i];
    const double hi = (i + 1 < bp.size()) ? bp[i + 1] : kTwoPi;
    if (!(hi > lo + 1e-14)) continue;
    const double mid = 0.5 * (lo + hi);
    const bool inside =
        I.full() || angular_overlap(I.lo(), I.hi(), mid - 1e-13, mid + 1e-13) > 0;
    cells.push_back({lo, hi, inside ? Matrix(f.eval(mid) - sub) : Matrix::Zero(d, d)});
  }
  return CircleFun::piecewise(std::move(cells));
}

/// Deterministic random atom on I with the given number of interior cells,
/// normalized so that ||a||_{L^1_c} = |I|^{-1/2} exactly.
inline Atom random_atom(std::uint64_t seed, int d, const Arc& I, int cells) {
  if (cells < 2) throw std::invalid_argument("random_atom: need at least 2 cells");
  Rng rng(seed);
  std::vector<Matrix> values;
  values.reserve(cells);
  Matrix mean = Matrix::Zero(d, d);
  for (int j = 0; j < cells; ++j) {
    values.push_back(rng.gaussian_matrix(d));
    mean += values.back();
  }
  mean /= static_cast<double>(cells);
  for (Matrix& v : values) v -= mean;  // equal cell lengths: plain mean

  const double lo = I.lo();
  const double width = I.hi() - I.lo();
  auto pick = [&](double theta) -> Matrix {
    const double u = wrap_angle(theta - lo);
    if (u >= width) return Matrix::Zero(d, d);
    int j = static_cast<int>(u / (width / cells));
    j = std::min(j, cells - 1);
    return values[static_cast<size_t>(j)];
  };
  std::vector<double> bp;
  for (int j = 0; j <= cells; ++j) bp.push_back(wrap_angle(lo + width * j / cells));
  bp.push_back(0.0);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-14; }),
           bp.end());
  std::vector<CircleFun::Cell> pc;
  for (size_t i = 0; i < bp.size(); ++i) {
    const double a = bp[i];
    const double b = (i + 1 < bp.size()) ? bp[i + 1] : kTwoPi;
    if (!(b > a + 1e-14)) continue;
    pc.push_back({a, b, pick(0.5 * (a + b))});
  }
  CircleFun f = CircleFun::piecewise(std::move(pc));
  const double n1 = lp_c_norm(f, 1.0);
  if (!(n1 > 0)) throw std::runtime_error("random_atom: degenerate draw");
  return Atom{I, f.scaled(1.0 / (n1 * std::sqrt(I.measure())))};
}

struct Decomposition {
  struct Term {
    Complex lambda;
    bool is_atom = false;       // else: constant with ||.||_1 <= 1
    CircleFun piece;
    Arc support{0.0, 2.0};      // atoms only; full circle by default
  };
  std::vector<Term> terms;

  double coefficient_l1() const {
    double s = 0.0;
    for (const Term& t : terms) s += std::abs(t.lambda);
    return s;
  }
};

/// Sum of lambda_k * piece_k, in the common representation of the terms.
inline CircleFun reconstruct(const Decomposition& dec, int dim) {
  const bool any_pw = std::any_of(dec.terms.begin(), dec.terms.end(),
                                  [](const auto& t) { return !t.piece.band_limited_repr(); });
  CircleFun sum = any_pw
      ? CircleFun::piecewise({{0.0, kTwoPi, Matrix::Zero(dim, dim)}})
      : CircleFun::constant(Matrix::Zero(dim, dim));
  for (const auto& t : dec.terms) {
    CircleFun p = t.piece.scaled(t.lambda);
    if (any_pw && p.band_limited_repr()) {
      if (p.degree() != 0)
        throw std::invalid_argument("reconstruct: mixed representations");
      p = CircleFun::piecewise({{0.0, kTwoPi, p.coeff(0)}});
    }
    sum = sum.plus(p);
  }
  return sum;
}

struct H1Bound {
  double bound = 0.0;
  Decomposition decomposition;
};

/// One-level decomposition: mean as an L^1(M) constant plus a single
/// full-circle atom. Valid for both representations.
inline H1Bound h1c_upper_global(const CircleFun& f) {
  H1Bound out;
  const Matrix mean = f.fourier_coeff(0);
  const double m1 = trace_norm(mean);
  if (m1 > 0)
    out.decomposition.terms.push_back({Complex(m1, 0.0), false,
                                       CircleFun::constant(Matrix(mean / m1))});
  const CircleFun g = f.minus_const(mean);
  const double n1 = lp_c_norm(g, 1.0);
  if (n1 > 1e-15 * (1.0 + m1))
    out.decomposition.terms.push_back({Complex(n1, 0.0), true, g.scaled(1.0 / n1),
                                       Arc{0.0, 2.0}});
  out.bound = out.decomposition.coefficient_l1();
  return out;
}

/// Dyadic scheme: at level k, split f - mean into mean-zero pieces on 2^k
/// equal arcs plus a piecewise-constant remainder handled globally; returns
/// the best bound over levels 0..max_level. Levels above 0 need piecewise
/// input; band-limited input collapses to the global scheme.
inline H1Bound h1c_upper_bound(const CircleFun& f, int max_level = 0) {
  H1Bound best = h1c_upper_global(f);
  if (f.band_limited_repr()) return best;
  const int d = f.dim();
  for (int k = 1; k <= max_level; ++k) {
    const int n = 1 << k;
    Decomposition dec;
    std::vector<CircleFun::Cell> rem_cells;
    for (int j = 0; j < n; ++j) {
      const double lo = kTwoPi * j / n;
      const double hi = kTwoPi * (j + 1) / n;
      const double hw = 0.5 * (hi - lo);
      const Arc I{0.5 * (lo + hi), 2.0 * std::sin(0.5 * hw)};
      const Matrix fI = arc_mean(f, I);
      const CircleFun piece = restrict_to_arc(f, I, fI);
      const double n1 = lp_c_norm(piece, 1.0);
      if (n1 > 1e-14) {
        const double lam = n1 * std::sqrt(I.measure());
        dec.terms.push_back({Complex(lam, 0.0), true, piece.scaled(1.0 / lam), I});
      }
      rem_cells.push_back({lo, hi, fI});
    }
    const H1Bound tail = h1c_upper_global(CircleFun::piecewise(std::move(rem_cells)));
    for (const auto& t : tail.decomposition.terms) dec.terms.push_back(t);
    const double bound = dec.coefficient_l1();
    if (bound < best.bound) best = {bound, std::move(dec)};
  }
  (void)d;
  return best;
}

/// An atom is its own decomposition with coefficient 1.
inline H1Bound h1c_upper_bound(const Atom& a) {
  H1Bound out;
  out.decomposition.terms.push_back({Complex(1.0, 0.0), true, a.fun, a.support});
  out.bound = 1.0;
  return out;
}

/// tau(\int g^* f dm), the anti-duality pairing of Eq 5.2.
inline Complex duality_pairing(const CircleFun& f, const CircleFun& g) {
  return l2_pairing(g, f).trace();
}

/// Certified lower bound max_g |tau(\int g^* f dm)| / ||g||_{BMO_c}.
inline double h1c_lower_bound(const CircleFun& f,
                              const std::vector<CircleFun>& witnesses,
                              const NormSearchGrid& grid) {
  double best = 0.0;
  bool any = false;
  for (const CircleFun& g : witnesses) {
    const double b = bmo_c_norm(g, grid);
    if (!(b > 1e-14)) continue;
    any = true;
    best = std::max(best, std::abs(duality_pairing(f, g)) / b);
  }
  if (!any) throw std::invalid_argument("h1c_lower_bound: all witnesses degenerate");
  return best;
}

}  // namespace ncharm
