#include <gtest/gtest.h>

#include "ellipt/errors.hpp"
#include "ellipt/genus.hpp"

using namespace ellipt;

namespace {

Scalar r(long a, long b = 1) { return Scalar::rational(a, b); }

QExp N(int k) { return QExp::integer(k); }

TestRecipe even_recipe(int g, int pairs, int zx, int zw, int vb, unsigned seed) {
  TestRecipe t;
  t.generators = g;
  t.pairs = pairs;
  t.zero_x = zx;
  t.zero_w = zw;
  t.v_blocks = vb;
  t.seed = seed;
  return t;
}

TestRecipe odd_recipe(int g, int pairs, int zx, int zw, unsigned seed) {
  TestRecipe t = even_recipe(g, pairs, zx, zw, 0, seed);
  t.odd = true;
  t.twist = true;
  return t;
}

template <class S>
S flip_half_q(const S& s) {
  S out(s.order());
  for (const auto& [k, c] : s.terms())
    out.add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second), (k.first / 12) % 2 ? -c : c);
  return out;
}

}  // namespace

// The generated models have root sets closed under negation, so the genus
// integrand is even in the roots: even models need even d, odd models odd d,
// for a nonzero top-degree part.
TEST(Genus, DualPathsAgreeOnGeneratedEvenModels) {
  const std::vector<TestRecipe> recipes = {
      even_recipe(1, 1, 0, 0, 0, 1), even_recipe(2, 1, 0, 0, 0, 2), even_recipe(2, 1, 0, 0, 1, 3),
      even_recipe(2, 1, 2, 1, 0, 4), even_recipe(2, 2, 0, 0, 1, 5), even_recipe(3, 1, 2, 0, 1, 6),
      even_recipe(2, 1, 0, 2, 1, 7)};
  int nonzero = 0;
  for (const auto& t : recipes) {
    const ManifoldModel m = make_test_model(t);
    for (int a = 1; a <= 3; ++a) {
      GenusResult g;
      ASSERT_NO_THROW(g = ell_even(m, a, N(2), GenusPath::Both)) << "seed " << t.seed << " a=" << a;
      ASSERT_TRUE(g.residual.has_value());
      EXPECT_TRUE(g.residual->is_zero());
      EXPECT_EQ(g.paths.size(), 2u);
      if (!g.series.is_zero()) ++nonzero;
    }
  }
  EXPECT_GE(nonzero, 12);
}

TEST(Genus, DualPathsAgreeOnGeneratedOddModels) {
  // Root-symmetric models carry transgression data only from degree 7 on,
  // so odd d >= 3 gives nonzero genera.
  const std::vector<TestRecipe> recipes = {odd_recipe(1, 1, 1, 0, 11), odd_recipe(2, 1, 1, 0, 12),
                                           odd_recipe(2, 1, 1, 1, 13), odd_recipe(2, 1, 1, 2, 14),
                                           odd_recipe(3, 1, 1, 0, 15), odd_recipe(2, 1, 0, 0, 16)};
  int nonzero = 0;
  for (const auto& t : recipes) {
    const ManifoldModel m = make_test_model(t);
    for (const char* fam : {"ell", "ellg1", "ellg2", "ellg3"}) {
      GenusResult g;
      ASSERT_NO_THROW(g = genus_by_name(m, fam, N(2), GenusPath::Both)) << "seed " << t.seed << " " << fam;
      EXPECT_TRUE(g.residual->is_zero());
      if (!g.series.is_zero()) ++nonzero;
    }
  }
  EXPECT_GE(nonzero, 8);
}

TEST(Genus, PairedRootsOddModelToOrderThree) {
  // TM = {t, -t, 0}, W = {t, -t}, synthetic transgression data.
  const ManifoldModel m = make_test_model(odd_recipe(1, 1, 0, 0, 21));
  ASSERT_EQ(m.dimension, 5);
  for (const char* fam : {"ell", "ellg1", "ellg2", "ellg3"})
    EXPECT_TRUE(genus_by_name(m, fam, N(3), GenusPath::Both).residual->is_zero()) << fam;
}

TEST(Genus, SinglePathsReturnTheSameSeries) {
  const ManifoldModel m = make_test_model(even_recipe(2, 1, 0, 0, 1, 31));
  const auto b = ell_even(m, 2, N(2), GenusPath::Bundle);
  const auto t = ell_even(m, 2, N(2), GenusPath::Theta);
  EXPECT_EQ(b.series, t.series);
  EXPECT_FALSE(b.residual.has_value());
  EXPECT_EQ(b.paths, std::vector<std::string>{"bundle"});
  EXPECT_EQ(t.paths, std::vector<std::string>{"theta"});
}

TEST(Genus, BundleSeriesLeadingTermIsExteriorAlgebraOfWDual) {
  // Rank-2 W: q^0 coefficient y^{-1} (1 - y (e^{-w1} + e^{-w2}) + y^2 e^{-w1-w2}).
  const ManifoldModel m = make_test_model(even_recipe(2, 1, 1, 0, 0, 41));
  ASSERT_EQ(m.l(), 2);
  const BasisPtr& b = m.basis;
  const CohomClass e1 = (-root_class(b, m.w->positive[0])).exp();
  const CohomClass e2 = (-root_class(b, m.w->positive[1])).exp();
  const CohomClass one = CohomClass::scalar(b, Scalar(1));
  const std::map<int, CohomClass> expect = {{-2, one}, {0, -(e1 + e2)}, {2, e1 * e2}};
  for (bool prime : {false, true}) {
    const ClassSeries s = bundle_series(m, prime, N(2));
    const auto lvl = s.at_q(QExp());
    ASSERT_EQ(lvl.size(), 3u);
    for (const auto& [y, c] : lvl) {
      ASSERT_TRUE(expect.count(y.n2)) << y.n2;
      EXPECT_EQ(c, expect.at(y.n2));
    }
  }
}

TEST(Genus, BundleSeriesWithoutWIsYFree) {
  ManifoldModel m = make_test_model(even_recipe(2, 1, 0, 0, 0, 42));
  m.w = BundleModel{BundleRole::W, {}, {}};
  const ClassSeries s = bundle_series(m, false, N(2));
  EXPECT_TRUE(s.y_free());
  // q^1: c^{2d+1} contributes -(2d+1), S_q(TM (x) C) contributes ch(TM (x) C).
  const BasisPtr& b = m.basis;
  CohomClass ch_tmc(b);
  for (const auto& x : m.tm.positive) {
    ch_tmc += root_class(b, x).exp();
    ch_tmc += (-root_class(b, x)).exp();
  }
  const CohomClass expect = ch_tmc - CohomClass::scalar(b, Scalar(2 * m.d() + 1));
  const auto lvl = s.at_q(N(1));
  ASSERT_EQ(lvl.size(), 1u);
  EXPECT_EQ(lvl[0].second, expect);
  EXPECT_EQ(s.at_q(QExp())[0].second, CohomClass::scalar(b, Scalar(1)));
}

TEST(Genus, YSupportAndYqLaw) {
  for (unsigned seed : {51u, 52u, 53u}) {
    const ManifoldModel m = make_test_model(even_recipe(2, 1, 2, seed % 2, 1, seed));
    const int l = m.l();
    for (int a = 1; a <= 3; ++a) {
      const auto s = ell_even(m, a, N(4), GenusPath::Bundle).series;
      ASSERT_FALSE(s.is_zero());
      EXPECT_TRUE(y_support_ok(s, l));
      EXPECT_TRUE(yq_law_ok(s, l, N(4))) << "seed " << seed << " a=" << a;
      // Negative controls: a half-step y shift breaks the support, a
      // perturbed low coefficient breaks the y -> yq law.
      EXPECT_FALSE(y_support_ok(s.shifted(QExp(), YExp::from_halves(1)), l));
      QYSeries<Scalar> bad = s;
      bad.add_term(QExp(), YExp::from_halves(-l), Scalar(1));
      EXPECT_FALSE(yq_law_ok(bad, l, N(4)));
    }
  }
  // Odd models as well.
  const ManifoldModel o = make_test_model(odd_recipe(2, 1, 1, 0, 54));
  const auto s = ell_odd(o, N(4), GenusPath::Bundle).series;
  EXPECT_TRUE(y_support_ok(s, o.l()));
  EXPECT_TRUE(yq_law_ok(s, o.l(), N(4)));
}

TEST(Genus, YqWindowValues) {
  EXPECT_EQ(yq_window(0, N(3)), QExp::from_24ths(73));
  // Windows grow with the order and never exceed n + 1/24.
  for (int l = 1; l <= 4; ++l) {
    QExp prev = QExp();
    for (int n = 1; n <= 6; ++n) {
      const QExp w = yq_window(l, N(n));
      EXPECT_LE(w, N(n) + QExp::from_24ths(1));
      EXPECT_GE(w, prev);
      prev = w;
    }
  }
}

TEST(Genus, EmptyVGivesUntwistedGenus) {
  const ManifoldModel m = make_test_model(even_recipe(2, 1, 2, 0, 0, 61));
  ASSERT_FALSE(m.v.has_value());
  const auto e1 = ell_even(m, 1, N(3)).series;
  const auto e2 = ell_even(m, 2, N(3)).series;
  const auto e3 = ell_even(m, 3, N(3)).series;
  EXPECT_EQ(e2, e3);
  EXPECT_EQ(e1, e2);
  const auto direct = integrate(times_class(bundle_series(m, true, N(3)), todd(m.basis, m.x_roots())), m);
  EXPECT_EQ(e1, direct);
  EXPECT_FALSE(e1.is_zero());
}

TEST(Genus, NoWGivesYFreeGenus) {
  ManifoldModel m = make_test_model(even_recipe(2, 1, 2, 0, 0, 62));
  m.w.reset();
  const auto s = ell_even(m, 1, N(3)).series;
  EXPECT_TRUE(s.y_free());
  EXPECT_FALSE(s.is_zero());
}

TEST(Genus, ZeroDataGivesZero) {
  ManifoldModel m = make_test_model(odd_recipe(2, 1, 1, 0, 71));
  ASSERT_FALSE(ell_odd(m, N(2)).series.is_zero());
  m.e->components.clear();
  for (const char* fam : {"ell", "ellg1", "ellg2", "ellg3"})
    EXPECT_TRUE(genus_by_name(m, fam, N(3), GenusPath::Both).series.is_zero()) << fam;
  ManifoldModel z = make_test_model(even_recipe(2, 1, 1, 0, 1, 72));
  z.functional.clear();
  for (int a = 1; a <= 3; ++a) EXPECT_TRUE(ell_even(z, a, N(2)).series.is_zero());
}

TEST(Genus, LinearInTheFunctional) {
  ManifoldModel m1 = make_test_model(odd_recipe(2, 1, 1, 0, 81));
  ManifoldModel m2 = m1, m12 = m1;
  m2.functional = random_functional(m1.basis, 99);
  for (const auto& [k, v] : m2.functional) m12.functional[k] += v;
  const auto a = ell_odd(m1, N(2)).series, b = ell_odd(m2, N(2)).series, c = ell_odd(m12, N(2)).series;
  EXPECT_FALSE(a.is_zero());
  EXPECT_FALSE(b.is_zero());
  EXPECT_EQ(a + b, c);
}

TEST(Genus, ProductLawWithEvenFactor) {
  for (unsigned seed : {91u, 92u}) {
    const ManifoldModel e = make_test_model(even_recipe(1, 1, 0, 0, 0, seed));
    const ManifoldModel o = make_test_model(odd_recipe(1, 1, 1, 0, seed + 10));
    const ManifoldModel p = product_model(e, o);
    EXPECT_EQ(p.dimension, e.dimension + o.dimension);
    const QExp n = N(2);
    const auto lhs = ell_odd(p, n, GenusPath::Both).series;
    const auto rhs = series_mul(ell_even_ahat(e, n), ell_odd(o, n).series, n);
    EXPECT_FALSE(rhs.is_zero());
    EXPECT_EQ(lhs, rhs) << "seed " << seed;
  }
}

TEST(Genus, ThetaPhase) {
  EXPECT_EQ(theta_phase(0), Scalar(1));
  EXPECT_EQ(theta_phase(1), -Scalar::i());
  EXPECT_EQ(theta_phase(2), Scalar(-1));
  EXPECT_EQ(theta_phase(3), Scalar::i());
  EXPECT_EQ(theta_phase(-1), Scalar::i());
  EXPECT_EQ(theta_phase(5), -Scalar::i());
}

TEST(Genus, EvenTransformationLaws) {
  const ManifoldModel m = make_test_model(even_recipe(2, 1, 2, 0, 1, 5));
  const auto rep = check_genus_laws(m, N(10), 128, 3);
  EXPECT_TRUE(rep.passed()) << render_human(rep);
  EXPECT_EQ(rep.count(CheckStatus::Fail), 0u);
  EXPECT_GE(rep.count(CheckStatus::Pass), 18u);
  const auto e2 = ell_even(m, 2, N(4)).series;
  ASSERT_FALSE(e2.is_zero());
  EXPECT_EQ(flip_half_q(e2), ell_even(m, 3, N(4)).series);
}

TEST(Genus, OddTransformationLaws) {
  const ManifoldModel m = make_test_model(odd_recipe(2, 1, 1, 0, 5));
  const auto rep = check_genus_laws(m, N(6), 128, 2);
  EXPECT_TRUE(rep.passed()) << render_human(rep);
  EXPECT_GE(rep.count(CheckStatus::Pass), 12u);
}

TEST(Genus, FamilyCompatibilityErrors) {
  const ManifoldModel even = make_test_model(even_recipe(2, 1, 0, 0, 0, 101));
  const ManifoldModel odd = make_test_model(odd_recipe(2, 1, 0, 0, 102));
  EXPECT_THROW(ell_odd(even, N(1)), InvalidModel);
  EXPECT_THROW(ell_even(odd, 1, N(1)), InvalidModel);
  EXPECT_THROW(ell_even(even, 4, N(1)), InvalidModel);
  EXPECT_THROW(phi_genus(odd, 1, N(1)), InvalidModel);
  ManifoldModel no_e = odd;
  no_e.e.reset();
  EXPECT_THROW(ell_odd(no_e, N(1)), MissingBundle);
  EXPECT_THROW(genus_by_name(even, "ell7", N(1), GenusPath::Both), ParseError);
  EXPECT_THROW(parse_path("sideways"), ParseError);
  EXPECT_EQ(parse_path("both"), GenusPath::Both);
  EXPECT_EQ(path_name(GenusPath::Theta), "theta");
}

TEST(Phi, ZeroDimensionalModelGivesFunctional) {
  ManifoldModel m;
  m.dimension = 0;
  m.basis = std::make_shared<const GeneratorBasis>(0, 0);
  m.functional[0] = r(7, 3);
  for (int a = 1; a <= 3; ++a) {
    const auto s = phi_genus(m, a, N(2)).series;
    ASSERT_EQ(s.size(), 1u);
    const RationalY* c = s.find(QExp(), YExp());
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(*c, RationalY(r(7, 3)));
  }
}

TEST(Phi, TauShiftExchangesWAndWStar) {
  const ManifoldModel m = make_test_model(even_recipe(2, 1, 0, 0, 0, 111));
  const auto w = phi_genus(m, 2, N(3)).series;
  const auto ws = phi_genus(m, 3, N(3)).series;
  ASSERT_FALSE(w.is_zero());
  EXPECT_EQ(flip_half_q(w), ws);
  EXPECT_EQ(flip_half_q(ws), w);
  const auto l = phi_genus(m, 1, N(3)).series;
  EXPECT_EQ(flip_half_q(l), l);
}

TEST(Phi, LeadingCoefficientForOnePair) {
  // x_1 = a t, x_2 = -a t, functional t^2 -> f. At q^0 each factor is
  // (pi x / sin pi x) cos(pi (x + z)) / cos(pi z), and the product over the
  // pair is u^2 cot^2 u - u^2 tan^2(pi z) with u = pi a t. Its t^2 part is
  // pi^2 a^2 (-2/3 - tan^2 pi z) = pi^2 a^2 (y^2 - 10 y + 1) / (3 (y + 1)^2).
  for (long a : {1L, 2L, -3L}) {
    ManifoldModel m;
    m.dimension = 4;
    m.basis = std::make_shared<const GeneratorBasis>(1, 2);
    m.tm.positive = {{Scalar(a)}, {Scalar(-a)}};
    const long f = 5;
    m.functional[m.basis->index_of({2})] = Scalar(f);
    validate(m);
    const auto s = phi_genus(m, 1, N(1)).series;
    const RationalY* c = s.find(QExp(), YExp());
    ASSERT_NE(c, nullptr);
    const RationalY num = RationalY::laurent({{YExp(), Scalar(1)}, {YExp::integer(1), Scalar(-10)}, {YExp::integer(2), Scalar(1)}});
    const RationalY den = RationalY::laurent({{YExp(), Scalar(1)}, {YExp::integer(1), Scalar(2)}, {YExp::integer(2), Scalar(1)}});
    const RationalY expect = num / den * RationalY(Scalar::pi().pow(2) * r(a * a * f, 3));
    EXPECT_EQ(*c, expect) << "a=" << a << ": " << c->str();
    // Denominator is a power of y^{1/2} + y^{-1/2}, i.e. of (s^2 + 1) in s = y^{1/2}.
    SPoly base = SPoly::constant(Scalar(1));
    bool found = false;
    for (int k = 0; k <= 4 && !found; ++k) {
      found = c->denominator() == base;
      base = base * SPoly({Scalar(1), Scalar(), Scalar(1)});
    }
    EXPECT_TRUE(found);
  }
}

TEST(Phi, ModularLaws) {
  const ManifoldModel m = make_test_model(even_recipe(1, 1, 0, 0, 0, 2));
  const auto rep = check_phi_laws(m, N(10), 128, 3);
  EXPECT_TRUE(rep.passed()) << render_human(rep);
  EXPECT_EQ(rep.count(CheckStatus::Pass), 12u);
}

TEST(Phi, OddVariants) {
  const ManifoldModel o = make_test_model(odd_recipe(2, 1, 1, 0, 121));
  const auto p1 = phi_genus_odd(o, 1, N(2));
  const auto p2 = phi_genus_odd(o, 2, N(2));
  const auto p3 = phi_genus_odd(o, 3, N(2));
  EXPECT_FALSE(p1.notes.empty());
  EXPECT_FALSE(p2.series.is_zero());
  EXPECT_EQ(flip_half_q(p2.series), p3.series);
  ManifoldModel unsplit = o;
  unsplit.tm_split.reset();
  EXPECT_THROW(phi_genus_odd(unsplit, 1, N(2)), UnsplitTangent);
  const ManifoldModel even = make_test_model(even_recipe(2, 1, 0, 0, 0, 122));
  EXPECT_THROW(phi_genus_odd(even, 1, N(2)), InvalidModel);
}
