#include "ncharm/studies.hpp"

#include <doctest.h>

using namespace ncharm;

namespace {

CircleFun scalar_mode(int n) {
  Matrix one(1, 1);
  one(0, 0) = 1.0;
  const int N = std::abs(n);
  std::vector<Matrix> c(2 * N + 1, Matrix::Zero(1, 1));
  c[static_cast<size_t>(n + N)] = one;
  return CircleFun::band_limited(N, std::move(c));
}

}  // namespace

TEST_CASE("pairing examples") {
  const CircleFun e1 = scalar_mode(1);
  CHECK(std::abs(duality_pairing(e1, e1) - 1.0) < 1e-15);
  CHECK(std::abs(duality_pairing(e1, scalar_mode(2))) < 1e-15);

  Rng rng(1);
  const Matrix a = rng.gaussian_matrix(2);
  const Matrix b = rng.gaussian_matrix(2);
  std::vector<Matrix> ca(3, Matrix::Zero(2, 2)), cb(3, Matrix::Zero(2, 2));
  ca[2] = a;
  cb[2] = b;
  const CircleFun f = CircleFun::band_limited(1, std::move(ca));
  const CircleFun g = CircleFun::band_limited(1, std::move(cb));
  CHECK(std::abs(duality_pairing(f, g) - (b.adjoint() * a).trace()) < 1e-13);
  // conjugate symmetry
  CHECK(std::abs(duality_pairing(f, g) - std::conj(duality_pairing(g, f))) < 1e-13);
}

TEST_CASE("corpus generation contract") {
  CorpusSpec spec;
  spec.kind = CorpusKind::analytic_bandlimited;
  spec.count = 20;
  spec.dim = 2;
  spec.degree = 8;
  spec.seed = 99;
  const Corpus c1 = corpus_generate(spec);
  const Corpus c2 = corpus_generate(spec);
  REQUIRE(c1.items.size() == 20);
  for (size_t k = 0; k < 20; ++k) {
    CHECK(c1.items[k].dim() == 2);
    CHECK(c1.items[k].degree() <= 8);
    CHECK(c1.items[k].analytic());
    for (int n = -8; n <= 8; ++n)
      CHECK((c1.items[k].coeff(n) - c2.items[k].coeff(n)).norm() == 0.0);
  }
  CorpusSpec bad = spec;
  bad.dim = 20;
  CHECK_THROWS_AS(corpus_generate(bad), std::invalid_argument);
  bad = spec;
  bad.count = 0;
  CHECK_THROWS_AS(corpus_generate(bad), std::invalid_argument);
}

TEST_CASE("ratio_study basics") {
  CorpusSpec spec;
  spec.kind = CorpusKind::general_bandlimited;
  spec.count = 12;
  spec.dim = 2;
  spec.degree = 4;
  spec.seed = 3;
  const Corpus c = corpus_generate(spec);

  // X = Y: all ratios 1
  const NormFunctional l2 = [](const CircleFun& f) { return lp_c_norm(f, 2.0); };
  const RatioReport same = ratio_study("x", l2, "y", l2, c.items);
  CHECK(same.ratio_min == doctest::Approx(1.0));
  CHECK(same.ratio_max == doctest::Approx(1.0));
  CHECK(same.excluded.empty());

  // identity study: Eq 2.16 LHS vs RHS within 1 +/- 1e-9
  const NormFunctional lhs = [](const CircleFun& f) {
    return gram(f.minus_const(f.fourier_coeff(0))).trace().real();
  };
  const NormFunctional rhs = [](const CircleFun& f) {
    return disk_integral_log([&](Complex z) { return grad_sq(f, z); }, f.dim(),
                             4 * f.degree() + 8)
        .trace()
        .real();
  };
  const RatioReport ident = ratio_study("lhs", lhs, "rhs", rhs, c.items);
  CHECK(ident.within(1.0 - 1e-9, 1.0 + 1e-9));

  // functional failure flags the item and the study continues
  int calls = 0;
  const NormFunctional flaky = [&calls](const CircleFun& f) {
    if (++calls == 3) throw std::runtime_error("boom");
    return lp_c_norm(f, 2.0);
  };
  const RatioReport flagged = ratio_study("x", flaky, "y", l2, c.items);
  CHECK(flagged.excluded.size() == 1);
  CHECK(flagged.excluded[0] == 2);
  CHECK(flagged.witness_max >= 0);
}

TEST_CASE("value floor excludes degenerate items") {
  std::vector<double> xs = {1.0, 2.0, 1e-20, 3.0};
  std::vector<double> ys = {2.0, 4.0, 5.0, 6.0};
  const RatioReport r = envelope_from_values("x", "y", xs, ys);
  REQUIRE(r.excluded.size() == 1);
  CHECK(r.excluded[0] == 2);
  CHECK(r.ratio_min == doctest::Approx(2.0));
  CHECK(r.ratio_max == doctest::Approx(2.0));
}

TEST_CASE("check_duality_bound examples") {
  const NormSearchGrid grid = NormSearchGrid::standard(128, 9, 8, 16);

  // an atom against a constant: the pairing vanishes
  const Atom atom = random_atom(5, 2, Arc{1.2, 0.6}, 4);
  const CircleFun cg = CircleFun::constant(Matrix::Identity(2, 2));
  CHECK(std::abs(duality_pairing(atom.fun, cg)) < 1e-12);
  const DualityCheck c0 =
      check_duality_bound(atom.fun, h1c_upper_bound(atom).bound, cg, grid);
  CHECK(c0.ok);

  // against a single mode: positive slack
  std::vector<Matrix> ce(3, Matrix::Zero(2, 2));
  ce[2] = Matrix::Identity(2, 2);
  const CircleFun g = CircleFun::band_limited(1, std::move(ce));
  const DualityCheck c1 =
      check_duality_bound(atom.fun, h1c_upper_bound(atom).bound, g, grid);
  CHECK(c1.ok);
  CHECK(c1.slack >= 0.0);

  // f = 0: equality at zero
  const CircleFun zero = CircleFun::constant(Matrix::Zero(2, 2));
  const DualityCheck c2 = check_duality_bound(zero, 0.0, g, grid);
  CHECK(c2.ok);
  CHECK(c2.pairing_abs == doctest::Approx(0.0));
}

TEST_CASE("split witness square functions are finite") {
  // f = g + h with g analytic and h an adjoint of an analytic function
  Rng rng(7);
  const CircleFun g = random_bandlimited(rng.fork(0), 2, 4, true);
  const CircleFun h = random_bandlimited(rng.fork(1), 2, 4, true).adjoint_fun();
  const ConeQuadrature quad = ConeQuadrature::build(2.0, 1.0, 48, 96);
  const double ac_g = area_l1_norm(g, quad, 16);
  const double ar_h = area_l1_norm(h.adjoint_fun(), quad, 16);
  CHECK(std::isfinite(ac_g));
  CHECK(std::isfinite(ar_h));
  CHECK(ac_g > 0.0);
  CHECK(ar_h > 0.0);
}

TEST_CASE("studies registry") {
  CHECK(study_names().size() == 9);
  StudyConfig cfg;
  cfg.study = "no-such-study";
  CHECK_THROWS_AS(run_study(cfg), std::invalid_argument);
}

TEST_CASE("quick study smoke: identity-2.16 small corpus") {
  StudyConfig cfg;
  cfg.study = "identity-2.16";
  cfg.count = 5;
  cfg.dim = 2;
  cfg.degree = 4;
  cfg.seed = 17;
  const StudyResult res = run_study(cfg);
  CHECK(res.pass);
  CHECK(res.report["pass"].get<bool>());
  CHECK(!res.csv.empty());

  // determinism: identical config gives byte-identical tabular output
  const StudyResult res2 = run_study(cfg);
  CHECK(res.csv == res2.csv);
}
