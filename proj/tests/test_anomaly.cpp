#include <gtest/gtest.h>

#include <set>

#include "ellipt/anomaly.hpp"
#include "ellipt/errors.hpp"

using namespace ellipt;

namespace {

Scalar r(long a, long b = 1) { return Scalar::rational(a, b); }
Scalar pi_k(int k, long a = 1, long b = 1) { return Scalar::pi_power(k, GaussRat(mpq_class(a, b))); }

QExp N(int k) { return QExp::integer(k); }
const QExp kHalf = QExp::rational(1, 2);

bool is_relation_family_odd(const TheoremCase& c) { return c.family != "ell2"; }

// First skew model on which the case applies.
std::optional<ManifoldModel> skew_for(const TheoremCase& c) {
  for (int d = 3; d <= 12; ++d)
    for (int zw = 0; zw <= 2; ++zw) {
      const bool odd = is_relation_family_odd(c);
      const int l = 3 + zw;
      if (!c.applies(d, l)) continue;
      return make_skew_model(odd, d, zw, 1, 3);
    }
  return std::nullopt;
}

int nontrivial(const VerificationReport& rep) {
  int n = 0;
  for (const auto& e : rep.entries)
    if (e.id.find(".int") == std::string::npos && e.detail.find("trivially") == std::string::npos) ++n;
  return n;
}

bool any_nonzero(const CoefficientFamily& f) {
  for (const auto& a : f.a)
    if (!a.is_zero()) return true;
  return false;
}

}  // namespace

// exp(-4 pi^2 l G_2 z^2) with G_2 = -1/24 + q + 3q^2 + ...: the q^0 and q^1
// parts through z^4 are
//   A_0 = 1 + (l/6) pi^2 z^2 + (l^2/72) pi^4 z^4,
//   A_1 = -4 l pi^2 z^2 - (2 l^2/3) pi^4 z^4.
TEST(Anomaly, G2TwistLeadingParts) {
  for (int l = 1; l <= 6; ++l) {
    const ZJet a = g2_twist_jet(l, 4, N(3));
    auto at = [&](int n, int k) {
      const Scalar* c = a[n].find(N(k), YExp());
      return c ? *c : Scalar();
    };
    EXPECT_EQ(at(0, 0), r(1));
    EXPECT_EQ(at(0, 1), Scalar());
    EXPECT_EQ(at(1, 0), Scalar());
    EXPECT_EQ(at(3, 1), Scalar());
    EXPECT_EQ(at(2, 0), pi_k(2, l, 6)) << "l=" << l;
    EXPECT_EQ(at(4, 0), pi_k(4, l * l, 72)) << "l=" << l;
    EXPECT_EQ(at(2, 1), pi_k(2, -4 * l)) << "l=" << l;
    EXPECT_EQ(at(4, 1), pi_k(4, -2 * l * l, 3)) << "l=" << l;
    // q^2: G_2 coefficient sigma_1(2) = 3; z^4 gets (1/2)(2 A A'' + A'^2) with
    // A = l pi^2/6, A' = -4 l pi^2, A'' = -12 l pi^2.
    EXPECT_EQ(at(2, 2), pi_k(2, -12 * l));
    EXPECT_EQ(at(4, 2), pi_k(4, l * l, 1) * (r(-12, 6) + r(8)));
  }
}

TEST(Anomaly, ExtractionMatchesDirectZExpansion) {
  // a_0 = sum_y c, a_1 = sum_y 2 pi i beta c, a_2 = sum_y (2 pi i beta)^2/2 c
  // + (l pi^2/6 - 4 l pi^2 q) sum_y c, read off the genus directly.
  const ManifoldModel m = make_skew_model(true, 6, 0, 0, 3);  // weight 4
  const GenusResult g = genus_by_name(m, "ell", N(2), GenusPath::Bundle);
  ASSERT_FALSE(g.series.is_zero());
  const CoefficientFamily f = coefficient_family(m, "ell", 2, N(2));
  EXPECT_EQ(f.weight, m.d() + 1 - m.l());
  EXPECT_EQ(f.group, ModularGroup::SL2Z);
  EXPECT_EQ(f.l, 3);
  const int l = m.l();
  std::map<int, Scalar> s0, s1, s2;
  for (const auto& [k, c] : g.series.terms()) {
    const Scalar beta = r(k.second, 2);
    s0[k.first] += c;
    s1[k.first] += Scalar::two_pi_i() * beta * c;
    s2[k.first] += Scalar::two_pi_i().pow(2) * beta.pow(2) * r(1, 2) * c;
  }
  for (int k = 0; k <= 1; ++k) {
    const int k24 = 24 * k;
    EXPECT_EQ(f.coeff(0, N(k)), s0[k24]);
    EXPECT_EQ(f.coeff(1, N(k)), s1[k24]);
  }
  EXPECT_EQ(f.coeff(2, N(0)), s2[0] + pi_k(2, l, 6) * s0[0]);
  EXPECT_EQ(f.coeff(2, N(1)), s2[24] + pi_k(2, l, 6) * s0[24] + pi_k(2, -4 * l) * s0[0]);
  EXPECT_NE(f.coeff(0, N(0)), Scalar());
}

TEST(Anomaly, ExtractionOfZeroAndBounds) {
  const CoefficientFamily z = extract_coefficients(QYSeries<Scalar>(N(2)), 3, 4, N(2));
  ASSERT_EQ(z.nz(), 4);
  for (const auto& a : z.a) EXPECT_TRUE(a.is_zero());
  EXPECT_EQ(z.order, N(2));
  EXPECT_THROW(z.coeff(5, N(0)), InvalidModel);
  EXPECT_THROW(z.coeff(0, QExp::rational(49, 24)), InvalidModel);
  EXPECT_THROW(z.coeff(-1, N(0)), InvalidModel);
  EXPECT_NO_THROW(z.coeff(4, N(2)));
}

TEST(Anomaly, FamilyMetadata) {
  const ManifoldModel odd = make_skew_model(true, 5, 0, 0, 3);
  const ManifoldModel even = make_skew_model(false, 5, 0, 1, 3);
  const CoefficientFamily g2 = coefficient_family(odd, "ellg2", 1, N(1));
  EXPECT_EQ(g2.group, ModularGroup::Gamma0Upper_2);
  EXPECT_EQ(g2.weight, 3);
  EXPECT_EQ(coefficient_family(odd, "ellg1", 1, N(1)).group, ModularGroup::Gamma0_2);
  EXPECT_EQ(coefficient_family(odd, "ellg3", 1, N(1)).group, ModularGroup::GammaTheta);
  const CoefficientFamily e2 = coefficient_family(even, "ell2", 1, N(1));
  EXPECT_EQ(e2.group, ModularGroup::Gamma0Upper_2);
  EXPECT_EQ(e2.weight, 2);
  EXPECT_EQ(coefficient_family(even, "ell1", 1, N(1)).group, ModularGroup::Gamma0_2);
  EXPECT_THROW(coefficient_family(odd, "ell4", 1, N(1)), ParseError);
  EXPECT_THROW(coefficient_family(odd, "ell2", 1, N(1)), InvalidModel);
}

TEST(Anomaly, RegistryShape) {
  const auto& cs = theorem_cases();
  EXPECT_EQ(cs.size(), 33u);
  std::set<std::string> ids;
  for (const auto& c : cs) {
    EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_FALSE(c.relations.empty()) << c.id;
    EXPECT_FALSE(c.statement.empty()) << c.id;
  }
  EXPECT_EQ(theorem_case("3.7.2").integrality.size(), 1u);
  EXPECT_EQ(theorem_case("3.7.2").integrality[0].second, 504);
  EXPECT_EQ(theorem_case("4.5.1").relations.size(), 4u);
  EXPECT_EQ(theorem_case("4.5.1").min_order(), QExp::rational(3, 2));
  EXPECT_EQ(theorem_case("3.7.5").min_order(), N(1));
  EXPECT_EQ(theorem_case("3.6.5").max_n(), 4);
  EXPECT_THROW(theorem_case("9.9.9"), InvalidModel);
}

TEST(Anomaly, HypothesesFollowTheWeightConditions) {
  // w = d + 1 - l for the odd cases, d - l for the even ones.
  const TheoremCase& v1 = theorem_case("3.6.1");
  EXPECT_TRUE(v1.applies(4, 2));   // w = 3 odd
  EXPECT_TRUE(v1.applies(1, 0));   // w = 2
  EXPECT_FALSE(v1.applies(3, 0));  // w = 4
  EXPECT_FALSE(v1.applies(2, 3));  // w = 0
  EXPECT_TRUE(v1.applies(1, 4));   // w = -2
  const TheoremCase& v4 = theorem_case("3.6.4");
  EXPECT_FALSE(v4.applies(1, 5));  // w = -3
  EXPECT_TRUE(v4.applies(1, 6));   // w = -4 even
  EXPECT_TRUE(theorem_case("3.7.4").applies(11, 2));
  EXPECT_FALSE(theorem_case("3.7.4").applies(11, 3));
  EXPECT_TRUE(theorem_case("4.5.2").applies(2, 4));   // d-l = -2 even
  EXPECT_FALSE(theorem_case("4.5.2").applies(3, 2));  // d-l = 1, d+1-l = 2
  EXPECT_TRUE(theorem_case("4.5.2").applies(1, 4));   // d+1-l = -2
  EXPECT_TRUE(theorem_case("4.6.4").applies(5, 4));
  EXPECT_TRUE(theorem_case("4.10.1").applies(5, 3));
  EXPECT_FALSE(theorem_case("4.10.1").applies(5, 4));
  EXPECT_TRUE(theorem_case("4.11.6").applies(7, 3));
}

// Every relation case on a root-asymmetric model: own functional plus three
// random ones. The listed ids carry nonzero coefficients; the others are
// checked but their coefficients vanish on these models (for d - l = 1, 2
// the anomaly conditions kill the low-degree integrand).
TEST(Anomaly, RelationTheoremsHoldOnSkewModels) {
  const std::set<std::string> expect_nontrivial = {"3.7.1", "3.7.2", "3.7.3", "3.7.4", "3.7.5", "3.7.6",
                                                   "3.7.7", "3.7.8", "4.6.2", "4.6.5", "4.6.6", "4.11.2",
                                                   "4.11.3", "4.11.5", "4.11.6"};
  int checked = 0;
  for (const auto& c : theorem_cases()) {
    if (c.vanishing) continue;
    const auto m = skew_for(c);
    ASSERT_TRUE(m.has_value()) << c.id;
    VerificationReport rep;
    ASSERT_NO_THROW(rep = verify_theorem(*m, c, 3, 5)) << c.id;
    EXPECT_TRUE(rep.passed()) << c.id << "\n" << render_human(rep);
    EXPECT_EQ(rep.count(CheckStatus::Fail), 0u) << c.id;
    if (expect_nontrivial.count(c.id)) EXPECT_GT(nontrivial(rep), 0) << c.id;
    ++checked;
  }
  EXPECT_EQ(checked, 20);
}

TEST(Anomaly, RotatedWGivesEvidenceForTheWeightSixRelation) {
  // With W = +-x every skew model gives a_{0,2} = 0 at d - l = 6; the rotated
  // W-roots do not cancel against the x-roots.
  const ManifoldModel plain = make_skew_model(false, 9, 0, 1, 12);
  const ManifoldModel rot = make_skew_model(false, 9, 0, 1, 12, true);
  const VerificationReport a = verify_theorem(plain, theorem_case("4.6.3"), 3, 5);
  const VerificationReport b = verify_theorem(rot, theorem_case("4.6.3"), 3, 5);
  EXPECT_TRUE(a.passed());
  EXPECT_TRUE(b.passed()) << render_human(b);
  EXPECT_EQ(nontrivial(a), 0);
  EXPECT_GT(nontrivial(b), 0);
  const CoefficientFamily f = coefficient_family(rot, "ell2", 0, N(1));
  EXPECT_FALSE(f.coeff(0, N(0)).is_zero());
  EXPECT_EQ(f.coeff(0, N(1)), r(32) * f.coeff(0, kHalf) - r(504) * f.coeff(0, N(0)));
}

TEST(Anomaly, WeightTwoAndOneLeadingCoefficientsAreForcedToVanish) {
  // At d - l = 2 (n = 0) and d - l = 1 (n = 1) the leading coefficient pairs
  // e(W) with a class of degree 2 built from p1(M) - p1(W) and p1(V), or of
  // degree 1 built from c1; the anomaly conditions make it zero, and the
  // weight-2 / weight-1 relations leave the other coefficients zero too.
  for (bool rotate : {false, true}) {
    const ManifoldModel dl2 = make_skew_model(false, 5, 0, 1, 21, rotate);
    const ManifoldModel dl1 = make_skew_model(false, 4, 0, 1, 22, rotate);
    const CoefficientFamily f2 = coefficient_family(dl2, "ell2", 0, N(1));
    const CoefficientFamily f1 = coefficient_family(dl1, "ell2", 1, N(1));
    for (const QExp k : {N(0), kHalf, N(1)}) {
      EXPECT_EQ(f2.coeff(0, k), Scalar()) << rotate;
      EXPECT_EQ(f1.coeff(1, k), Scalar()) << rotate;
    }
  }
}

TEST(Anomaly, VanishingPropositionsHoldOnSkewAndPairedModels) {
  // Each case runs on up to three applicable models; at least one of them
  // must carry a nonzero coefficient series a_0..a_4 so the check is not
  // vacuous.
  for (const auto& c : theorem_cases()) {
    if (!c.vanishing) continue;
    int runs = 0, nonzero = 0;
    for (int d = 3; d <= 10 && runs < 3; ++d)
      for (int zw = 0; zw <= 2 && runs < 3; ++zw) {
        const bool odd = is_relation_family_odd(c);
        if (!c.applies(d, 3 + zw)) continue;
        const ManifoldModel m = make_skew_model(odd, d, zw, 1, 7 + d);
        const VerificationReport rep = verify_theorem(m, c, 3, 11);
        EXPECT_TRUE(rep.passed()) << c.id << " d=" << d << "\n" << render_human(rep);
        if (any_nonzero(coefficient_family(m, c.family, 4, c.min_order()))) ++nonzero;
        ++runs;
      }
    EXPECT_GE(runs, 1) << c.id;
    EXPECT_GE(nonzero, 1) << c.id;
  }
  // Paired-roots models too.
  TestRecipe t;
  t.pairs = 1;
  t.zero_x = 2;
  t.v_blocks = 1;
  const ManifoldModel even = make_test_model(t);  // d = 4, l = 2
  for (const char* id : {"4.5.2", "4.5.4"}) EXPECT_TRUE(verify_theorem(even, theorem_case(id)).passed()) << id;
  t.odd = true;
  t.twist = true;
  t.v_blocks = 0;
  t.zero_x = 3;
  const ManifoldModel odd = make_test_model(t);  // d = 5, l = 2
  for (const char* id : {"3.6.2", "3.6.4", "4.10.2"})
    EXPECT_TRUE(verify_theorem(odd, theorem_case(id)).passed()) << id;
}

TEST(Anomaly, HypothesisAndKindErrors) {
  const ManifoldModel odd = make_skew_model(true, 5, 0, 0, 3);  // d+1-l = 3
  EXPECT_THROW(verify_theorem(odd, theorem_case("3.7.1")), HypothesisNotMet);
  EXPECT_THROW(verify_theorem(odd, theorem_case("4.6.5")), HypothesisNotMet);  // even case
  // Breaking p1(M) = p1(W): double one W root.
  ManifoldModel bad = odd;
  bad.w->positive[0] = LinearForm{Scalar(2), Scalar(0)};
  bad.w->positive[2] = LinearForm{Scalar(-2), Scalar(-1)};
  ASSERT_FALSE(check_constraints(bad).get("p1(M)=p1(W)"));
  EXPECT_THROW(verify_theorem(bad, theorem_case("3.7.5")), HypothesisNotMet);
  const CoefficientFamily f = coefficient_family(odd, "ell", 2, N(2));
  EXPECT_THROW(verify_relation(f, theorem_case("3.7.1")), HypothesisNotMet);
  EXPECT_THROW(verify_relation(f, theorem_case("3.6.1")), InvalidModel);
  EXPECT_THROW(verify_vanishing(f, theorem_case("3.7.5")), InvalidModel);
  EXPECT_THROW(verify_relation(f, theorem_case("4.11.2")), HypothesisNotMet);  // family mismatch
  const CoefficientFamily shallow = coefficient_family(odd, "ell", 0, N(1));
  EXPECT_THROW(verify_relation(shallow, theorem_case("3.7.5")), InsufficientCoefficients);
}

TEST(Anomaly, FaultInjectionIsCaught) {
  const ManifoldModel m = make_skew_model(true, 6, 0, 0, 3);  // d+1-l = 4
  const TheoremCase& c = theorem_case("3.7.1");
  CoefficientFamily f = coefficient_family(m, "ell", 1, N(2));
  ASSERT_TRUE(verify_relation(f, c).passed());
  const Scalar a01 = f.coeff(0, N(1));
  ASSERT_FALSE(a01.is_zero());
  f.a[0].add_term(N(1), YExp(), a01 * r(1, 240));
  const VerificationReport bad = verify_relation(f, c);
  EXPECT_FALSE(bad.passed());
  EXPECT_EQ(bad.count(CheckStatus::Fail), 1u);
}

TEST(Anomaly, IntegralityIsReportedOnlyForIntegerLeadingCoefficients) {
  const ManifoldModel m = make_skew_model(true, 6, 0, 0, 3);
  const TheoremCase& c = theorem_case("3.7.1");
  const VerificationReport rep = verify_theorem(m, c, 2, 1);
  int seen = 0;
  for (const auto& e : rep.entries) {
    if (e.id.find(".int") == std::string::npos) continue;
    ++seen;
    EXPECT_NE(e.status, CheckStatus::Fail) << e.detail;
  }
  EXPECT_EQ(seen, 3);
  // An integer a_0^0 with a_0^1 = 240 a_0^0 passes; a_0^1 = 240 a_0^0 + 1
  // breaks the relation.
  CoefficientFamily f = extract_coefficients(QYSeries<Scalar>(N(2)), 2, 4, N(2));
  f.family = "Ell";
  f.d = 5;
  f.l = 2;
  f.a[0].add_term(N(0), YExp(), r(3));
  f.a[0].add_term(N(1), YExp(), r(720));
  const VerificationReport ok = verify_relation(f, c);
  EXPECT_TRUE(ok.passed()) << render_human(ok);
  EXPECT_EQ(ok.count(CheckStatus::Info), 0u);
}

TEST(Anomaly, ModularityFitsOverSl2zAndLevelTwo) {
  // Odd genus: a_n of weight d + 1 - l + n over SL(2, Z).
  const ManifoldModel odd = make_skew_model(true, 6, 0, 0, 3);  // weight 4 + n
  const CoefficientFamily f = coefficient_family(odd, "ell", 2, N(5));
  const VerificationReport rep = verify_modularity(f);
  EXPECT_TRUE(rep.passed()) << render_human(rep);
  EXPECT_EQ(rep.entries.size(), 3u);
  // Gamma^0(2) twist of the odd genus in half-integral steps.
  const CoefficientFamily g = coefficient_family(odd, "ellg2", 1, N(3));
  const VerificationReport rg = verify_modularity(g);
  EXPECT_TRUE(rg.passed()) << render_human(rg);
  // Even genus twisted by Q_2(V).
  const ManifoldModel even = make_skew_model(false, 7, 0, 1, 3);  // weight 4 + n
  const CoefficientFamily e = coefficient_family(even, "ell2", 1, N(3));
  const VerificationReport re = verify_modularity(e);
  EXPECT_TRUE(re.passed()) << render_human(re);
  // Groups without a registered ring give Info entries.
  const VerificationReport ri = verify_modularity(coefficient_family(odd, "ellg1", 1, N(3)));
  EXPECT_EQ(ri.count(CheckStatus::Info), ri.entries.size());
}

TEST(Anomaly, ModularityFitRejectsCorruptedCoefficient) {
  const ManifoldModel odd = make_skew_model(true, 6, 0, 0, 3);
  CoefficientFamily f = coefficient_family(odd, "ell", 0, N(5));
  ASSERT_TRUE(verify_modularity(f).passed());
  f.a[0].add_term(N(4), YExp(), r(1));
  const VerificationReport rep = verify_modularity(f);
  EXPECT_FALSE(rep.passed());
  EXPECT_NE(rep.entries[0].residual.find("q^4"), std::string::npos) << rep.entries[0].residual;
  CoefficientFamily s = coefficient_family(odd, "ell", 0, N(2));
  EXPECT_THROW(verify_modularity(s), InsufficientCoefficients);
}

TEST(Anomaly, ClosedFormulasMatchExtraction) {
  std::map<std::string, int> nonzero;
  for (int odd = 0; odd <= 1; ++odd)
    for (int d = 3; d <= 8; ++d)
      for (int zw = 0; zw <= 2; ++zw) {
        const ManifoldModel m = make_skew_model(odd, d, zw, 1, 3);
        for (const auto& id : closed_formula_ids()) {
          const bool odd_formula = id.rfind("3.", 0) == 0 || id == "4.27" || id == "4.28";
          if (odd_formula != static_cast<bool>(odd)) continue;
          const VerificationReport rep = closed_formula_check(m, id);
          EXPECT_EQ(rep.count(CheckStatus::Fail), 0u) << id << " d=" << d << "\n" << render_human(rep);
          for (const auto& e : rep.entries)
            if (e.status == CheckStatus::Pass && e.detail.find("extracted 0") == std::string::npos &&
                e.id.find("printed") == std::string::npos)
              ++nonzero[e.id];
        }
      }
  for (const char* id : {"3.17.a0^0", "3.17.a0^1", "3.18.a1^0", "3.19.a1^1.derived", "3.20.a2^0", "3.21.a3^0",
                         "3.22.a4^0", "4.10.a0^1/2", "4.10.a1^1/2", "4.10.a2^1/2", "4.10.a3^1/2", "4.10.a4^1/2",
                         "4.11.a1^1.derived", "4.27.a0^1/2", "4.27.a1^1/2", "4.27.a2^1/2", "4.28.a1^1",
                         "4.28.a2^1"})
    EXPECT_GT(nonzero[id], 0) << id;
}

TEST(Anomaly, PrintedTyposAreDetectedAsInformational) {
  // The printed third term of the a_4 formula disagrees whenever a_0^0 != 0.
  bool seen_322 = false, seen_321 = false;
  for (int d = 3; d <= 8; ++d)
    for (int zw = 0; zw <= 2; ++zw) {
      const ManifoldModel m = make_skew_model(true, d, zw, 0, 3);
      for (const char* id : {"3.21", "3.22"})
        for (const auto& e : closed_formula_check(m, id).entries)
          if (e.id.find("printed") != std::string::npos && e.status == CheckStatus::Info)
            (id[3] == '2' ? seen_322 : seen_321) = true;
    }
  EXPECT_TRUE(seen_321);
  EXPECT_TRUE(seen_322);
}

TEST(Anomaly, ClosedFormulaErrors) {
  const ManifoldModel odd = make_skew_model(true, 4, 0, 0, 3);
  const ManifoldModel even = make_skew_model(false, 4, 0, 1, 3);
  ManifoldModel nov = make_skew_model(false, 4, 0, 0, 3);
  EXPECT_THROW(closed_formula_check(even, "3.18"), InvalidModel);
  EXPECT_THROW(closed_formula_check(odd, "4.10"), InvalidModel);
  EXPECT_THROW(closed_formula_check(even, "4.27"), InvalidModel);
  nov.v.reset();
  EXPECT_THROW(closed_formula_check(nov, "4.11"), MissingBundle);
  // A rank-0 V is a valid twist: 2^r = 1 and ch V - 2r = 0.
  nov.v = BundleModel{BundleRole::V, {}, {}};
  for (const char* id : {"4.10", "4.11"}) {
    const VerificationReport rep = closed_formula_check(nov, id);
    EXPECT_EQ(rep.count(CheckStatus::Fail), 0u) << id << "\n" << render_human(rep);
  }
  EXPECT_THROW(closed_formula_check(odd, "3.99"), ParseError);
  EXPECT_EQ(closed_formula_ids().size(), 10u);
}
