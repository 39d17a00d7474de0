#pragma once

// Verification harness: deterministic corpora, the duality pairing check,
// and ratio studies that turn two-sided norm equivalences into empirical
// [min, max] ratio envelopes with witnesses.

#include "ncharm/atoms.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace ncharm {

enum class CorpusKind { analytic_bandlimited, general_bandlimited, piecewise, atoms };

inline const char* corpus_kind_name(CorpusKind k) {
  switch (k) {
    case CorpusKind::analytic_bandlimited: return "analytic-bandlimited";
    case CorpusKind::general_bandlimited: return "general-bandlimited";
    case CorpusKind::piecewise: return "piecewise";
    case CorpusKind::atoms: return "atoms";
  }
  return "?";
}

struct CorpusSpec {
  CorpusKind kind = CorpusKind::analytic_bandlimited;
  int count = 100;
  int dim = 2;
  int degree = 8;  // band-limited degree, or cell/arc count otherwise
  std::uint64_t seed = 1;

  void validate() const {
    if (count <= 0) throw std::invalid_argument("corpus: count must be positive");
    if (dim < 1 || dim > 16) throw std::invalid_argument("corpus: dim out of range");
    if (degree < 1 || degree > 64)
      throw std::invalid_argument("corpus: degree out of range");
  }
};

struct Corpus {
  CorpusSpec spec;
  std::vector<CircleFun> items;
  std::vector<Atom> atoms;  // populated for the atoms kind only
};

/// Coefficient entries are i.i.d. complex Gaussian scaled by 1/(1+|n|).
inline CircleFun random_bandlimited(Rng rng, int d, int degree, bool analytic) {
  std::vector<Matrix> coeffs(2 * degree + 1, Matrix::Zero(d, d));
  for (int n = -degree; n <= degree; ++n) {
    if (analytic && n < 0) continue;
    coeffs[static_cast<size_t>(n + degree)] =
        rng.gaussian_matrix(d) / (1.0 + std::abs(n));
  }
  return CircleFun::band_limited(degree, std::move(coeffs));
}

inline CircleFun random_piecewise(Rng rng, int d, int cells) {
  std::vector<CircleFun::Cell> cs;
  for (int j = 0; j < cells; ++j)
    cs.push_back({kTwoPi * j / cells, kTwoPi * (j + 1) / cells,
                  rng.gaussian_matrix(d)});
  return CircleFun::piecewise(std::move(cs));
}

inline Corpus corpus_generate(const CorpusSpec& spec) {
  spec.validate();
  Corpus c;
  c.spec = spec;
  const Rng root(spec.seed);
  for (int k = 0; k < spec.count; ++k) {
    Rng item = root.fork(static_cast<std::uint64_t>(k));
    switch (spec.kind) {
      case CorpusKind::analytic_bandlimited:
        c.items.push_back(random_bandlimited(item, spec.dim, spec.degree, true));
        break;
      case CorpusKind::general_bandlimited:
        c.items.push_back(random_bandlimited(item, spec.dim, spec.degree, false));
        break;
      case CorpusKind::piecewise:
        c.items.push_back(random_piecewise(item, spec.dim, spec.degree));
        break;
      case CorpusKind::atoms: {
        // random support arc with at least a few percent of the circle
        const double center = item.uniform() * kTwoPi;
        const double radius = 0.05 + 1.9 * item.uniform();
        Atom a = random_atom(item.next_u64(), spec.dim, Arc{center, radius},
                             2 + static_cast<int>(item.uniform() * spec.degree));
        c.items.push_back(a.fun);
        c.atoms.push_back(std::move(a));
        break;
      }
    }
  }
  return c;
}

struct RatioReport {
  std::string x_name, y_name;
  std::vector<double> x, y;       // per item; NaN if the item was flagged
  std::vector<int> excluded;      // below the value floor or failed
  double ratio_min = 0.0, ratio_max = 0.0, ratio_median = 0.0;
  int witness_min = -1, witness_max = -1;
  std::string metadata;

  bool within(double lo, double hi) const {
    return witness_max >= 0 && ratio_min >= lo && ratio_max <= hi;
  }
};

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

using NormFunctional = std::function<double(const CircleFun&)>;

/// Envelope of Y/X over paired per-item values. Items with X below
/// 1e-12 x median(X) or with non-finite entries are excluded.
inline RatioReport envelope_from_values(const std::string& x_name,
                                        const std::string& y_name,
                                        std::vector<double> xs,
                                        std::vector<double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("envelope_from_values: size mismatch");
  RatioReport r;
  r.x_name = x_name;
  r.y_name = y_name;
  r.x = std::move(xs);
  r.y = std::move(ys);
  std::vector<double> valid_x;
  for (size_t k = 0; k < r.x.size(); ++k)
    if (std::isfinite(r.x[k]) && std::isfinite(r.y[k])) valid_x.push_back(r.x[k]);
  const double floor = 1e-12 * median_of(valid_x);
  std::vector<double> ratios;
  for (size_t k = 0; k < r.x.size(); ++k) {
    if (!std::isfinite(r.x[k]) || !std::isfinite(r.y[k])) {
      r.excluded.push_back(static_cast<int>(k));
      continue;
    }
    if (!(r.x[k] > floor)) {
      r.excluded.push_back(static_cast<int>(k));
      continue;
    }
    const double q = r.y[k] / r.x[k];
    ratios.push_back(q);
    if (r.witness_min < 0 || q < r.ratio_min) {
      r.ratio_min = q;
      r.witness_min = static_cast<int>(k);
    }
    if (r.witness_max < 0 || q > r.ratio_max) {
      r.ratio_max = q;
      r.witness_max = static_cast<int>(k);
    }
  }
  r.ratio_median = median_of(ratios);
  return r;
}

/// Evaluates Y/X per corpus item and records the envelope. Functional
/// failures flag the item and the study continues.
inline RatioReport ratio_study(const std::string& x_name, const NormFunctional& fx,
                               const std::string& y_name, const NormFunctional& fy,
                               const std::vector<CircleFun>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("ratio_study: empty corpus");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> xs, ys;
  for (const CircleFun& f : corpus) {
    try {
      const double x = fx(f);
      const double y = fy(f);
      xs.push_back(x);
      ys.push_back(y);
    } catch (const std::exception&) {
      xs.push_back(nan);
      ys.push_back(nan);
    }
  }
  return envelope_from_values(x_name, y_name, std::move(xs), std::move(ys));
}

struct DualityCheck {
  double pairing_abs = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound - |pairing|
  bool ok = false;
};

/// Eq 5.1 direction: |tau(\int g^* f dm)| <= ||g||_BMO_c ||f||_{H^1_c},
/// with the H^1 side replaced by its decomposition upper bound.
inline DualityCheck check_duality_bound(const CircleFun& f, double h1c_upper,
                                        const CircleFun& g,
                                        const NormSearchGrid& grid,
                                        double tol = 1e-9) {
  DualityCheck c;
  c.pairing_abs = std::abs(duality_pairing(f, g));
  c.bound = bmo_c_norm(g, grid) * h1c_upper;
  c.slack = c.bound - c.pairing_abs;
  c.ok = c.pairing_abs <= (1.0 + tol) * c.bound + 1e-300;
  return c;
}

}  // namespace ncharm
