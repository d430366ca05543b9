#include <gtest/gtest.h>

#include <random>

#include "ellipt/numeric.hpp"
#include "ellipt/rational_y.hpp"
#include "ellipt/series.hpp"
#include "ellipt/zjet.hpp"

using namespace ellipt;

namespace {

using S = QYSeries<Scalar>;

Scalar pi() { return Scalar::pi(); }
Scalar q(long a, long b) { return Scalar::rational(a, b); }

Scalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-5, 5), k(0, 3), den(1, 4);
  Scalar s;
  for (int j = 0; j < 2; ++j)
    s += Scalar::pi_power(k(rng), GaussRat(mpq_class(d(rng), den(rng)), mpq_class(d(rng), den(rng))));
  if (rng() % 3 == 0) {
    Scalar dd = Scalar::pi_power(k(rng), GaussRat(1)) + Scalar(d(rng) == 0 ? 1 : 2);
    s /= dd;
  }
  return s;
}

S random_series(std::mt19937& rng, QExp order) {
  std::uniform_int_distribution<int> qe(0, 8), ye(-3, 3), c(-4, 4);
  S s(order);
  for (int t = 0; t < 6; ++t)
    s.add_term(QExp::from_24ths(6 * qe(rng)), YExp::from_halves(ye(rng)), Scalar(c(rng)));
  return s;
}

S one_minus_q() {
  S s;
  s.add_term(QExp(), YExp(), Scalar(1));
  s.add_term(QExp::integer(1), YExp(), Scalar(-1));
  return s;
}

}  // namespace

TEST(Scalar, Examples) {
  EXPECT_EQ((pi() / Scalar(2)) * (Scalar(2) / pi()), Scalar(1));
  EXPECT_EQ(Scalar::i() * Scalar::i(), Scalar(-1));
  EXPECT_EQ((Scalar(2) * pi().pow(2)) / (Scalar(4) * pi()), pi() / Scalar(2));
  EXPECT_THROW(Scalar(1) / Scalar(0), DivisionByZero);
}

TEST(Scalar, CanonicalFormIsRepresentational) {
  Scalar a = (pi() + Scalar(1)) / (Scalar(2) * pi() + Scalar(2));
  EXPECT_EQ(a, q(1, 2));
  Scalar b = Scalar(1) / (Scalar::i() * pi() + Scalar(3));
  EXPECT_TRUE(b.denominator().lead() == GaussRat(1));
  EXPECT_EQ(b * (Scalar::i() * pi() + Scalar(3)), Scalar(1));
}

TEST(Scalar, RingAxiomsRandomized) {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
}

TEST(Scalar, Formatting) {
  EXPECT_EQ(Scalar(0).str(), "0");
  EXPECT_EQ(q(-3, 2).str(), "-3/2");
  EXPECT_EQ((q(1, 6) * pi().pow(2)).str(), "1/6 pi^2");
  EXPECT_EQ((Scalar::i() * pi()).str(), "i pi");
}

TEST(Exponents, Lattices) {
  EXPECT_EQ(QExp::rational(1, 8).n24, 3);
  EXPECT_EQ(QExp::rational(2, 48).n24, 1);
  EXPECT_THROW(QExp::rational(1, 5), BadExponent);
  EXPECT_THROW(YExp::rational(1, 3), BadExponent);
  EXPECT_EQ(QExp::rational(3, 6).str(), "1/2");
}

TEST(Series, GeometricInverse) {
  S geo(QExp::integer(10));
  for (int n = 0; n <= 10; ++n) geo.add_term(QExp::integer(n), YExp(), Scalar(1));
  S p = series_mul(one_minus_q(), geo, QExp::integer(10));
  EXPECT_EQ(to_string(p), "1");
  S inv = series_invert(one_minus_q(), QExp::integer(6));
  EXPECT_EQ(to_string(inv), "1 + q + q^2 + q^3 + q^4 + q^5 + q^6");
  EXPECT_EQ(inv.order(), QExp::integer(6));
}

TEST(Series, EtaTruncation) {
  // q^{1/24} prod_{j<=6} (1 - q^j) brute force.
  S prod = S::monomial(Scalar(1));
  for (int j = 1; j <= 6; ++j) {
    S f;
    f.add_term(QExp(), YExp(), Scalar(1));
    f.add_term(QExp::integer(j), YExp(), Scalar(-1));
    prod = series_mul(prod, f, QExp::integer(6));
  }
  S eta = series_mul(S::monomial(Scalar(1), QExp::from_24ths(1)), prod,
                     QExp::integer(6) + QExp::from_24ths(1));
  EXPECT_EQ(to_string(eta), "q^{1/24} - q^{25/24} - q^{49/24} + q^{121/24}");
}

TEST(Series, HalfPowersCancel) {
  S a = S::monomial(Scalar(1), QExp(), YExp::from_halves(1));
  S b = S::monomial(Scalar(1), QExp(), YExp::from_halves(-1));
  EXPECT_EQ(to_string(a * b), "1");
}

TEST(Series, InvertYPlusQ) {
  S a;
  a.add_term(QExp(), YExp::integer(1), Scalar(1));
  a.add_term(QExp::integer(1), YExp(), Scalar(1));
  S inv = series_invert(a, QExp::integer(2));
  EXPECT_EQ(to_string(inv), "y^-1 - q y^-2 + q^2 y^-3");
  S two(QExp::integer(1));
  two.add_term(QExp(), YExp::integer(1), Scalar(1));
  two.add_term(QExp(), YExp::integer(-1), Scalar(1));
  EXPECT_THROW(series_invert(two, QExp::integer(1)), NonInvertibleLeadingTerm);
}

TEST(Series, Theta2NullInverse) {
  // theta_2(0) = prod (1 - q^j)(1 - q^{j-1/2})^2, brute force to q^2.
  const QExp n = QExp::integer(2);
  S t = S::monomial(Scalar(1));
  for (int j = 1; j <= 3; ++j) {
    S f;
    f.add_term(QExp(), YExp(), Scalar(1));
    f.add_term(QExp::integer(j), YExp(), Scalar(-1));
    S g;
    g.add_term(QExp(), YExp(), Scalar(1));
    g.add_term(QExp::from_24ths(24 * j - 12), YExp(), Scalar(-1));
    t = series_mul(series_mul(t, f, n), series_mul(g, g, n), n);
  }
  EXPECT_EQ(to_string(t), "1 - 2 q^{1/2} + 2 q^2");
  S inv = series_invert(t, n);
  EXPECT_EQ(to_string(inv.truncated(QExp::rational(1, 2))), "1 + 2 q^{1/2}");
  EXPECT_EQ(to_string(series_mul(t, inv, n)), "1");
}

TEST(Series, TwoSidedInverseRandomized) {
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    S a = random_series(rng, QExp::integer(3));
    a.add_term(QExp(), YExp(), Scalar(1) - (a.find(QExp(), YExp()) ? *a.find(QExp(), YExp()) : Scalar()));
    // keep the q^0 part a single monomial
    S b(QExp::integer(3));
    for (const auto& [k, c] : a.terms())
      if (k.first > 0 || k.second == 0)
        b.add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second), c);
    if (b.at_q(QExp()).size() != 1) continue;
    S inv = series_invert(b, QExp::integer(3));
    EXPECT_EQ(to_string(series_mul(b, inv, QExp::integer(3))), "1");
    EXPECT_EQ(to_string(series_mul(inv, b, QExp::integer(3))), "1");
  }
}

TEST(Series, RingAxiomsAndTruncationCoherence) {
  std::mt19937 rng(7);
  const QExp n = QExp::integer(4), m = QExp::integer(2);
  for (int t = 0; t < 60; ++t) {
    S a = random_series(rng, n), b = random_series(rng, n), c = random_series(rng, n);
    EXPECT_EQ(series_mul(a, b, n), series_mul(b, a, n));
    EXPECT_EQ(series_mul(series_mul(a, b, n), c, n), series_mul(a, series_mul(b, c, n), n));
    EXPECT_EQ(series_mul(a, b + c, n), series_mul(a, b, n) + series_mul(a, c, n));
    EXPECT_EQ(series_mul(a, b, n).truncated(m), series_mul(a.truncated(m), b.truncated(m), m));
  }
}

TEST(Series, ValidityOrderTracking) {
  S a(QExp::integer(2));
  a.add_term(QExp::integer(1), YExp(), Scalar(1));
  S b(QExp::integer(2));
  b.add_term(QExp::integer(1), YExp(), Scalar(1));
  // q (1 + O(q)) * q (1 + O(q)) is known to q^3.
  EXPECT_EQ(series_mul(a, b).order(), QExp::integer(3));
}

TEST(Series, TauShift) {
  S a;
  a.add_term(QExp::rational(1, 2), YExp(), Scalar(1));
  a.add_term(QExp::rational(1, 4), YExp(), Scalar(1));
  EXPECT_EQ(to_string(tau_plus_one(a)), "i q^{1/4} - q^{1/2}");
  S b = S::monomial(Scalar(1), QExp::rational(1, 8));
  EXPECT_THROW(tau_plus_one(b), BadExponent);
}

TEST(ZJetTest, ExpAndYToZ) {
  const int nz = 6;
  S y0 = S::monomial(Scalar(1));
  EXPECT_EQ(y_to_z(y0, nz)[0], y0);
  S yh = S::monomial(Scalar(1), QExp(), YExp::from_halves(1));
  ZJet j = y_to_z(yh, nz);
  EXPECT_EQ(to_string(j[1]), "i pi");
  EXPECT_EQ(to_string(j[2]), "-1/2 pi^2");

  S odd;
  odd.add_term(QExp(), YExp::integer(1), Scalar(1));
  odd.add_term(QExp(), YExp::integer(-1), Scalar(-1));
  ZJet jo = y_to_z(odd, nz);
  EXPECT_EQ(to_string(jo[1]), "4i pi");
  for (int m = 0; m <= nz; m += 2) EXPECT_TRUE(jo[m].is_zero());

  ZJet z(nz, kExact);
  z[1] = S::monomial(Scalar(1));
  ZJet e = series_exp(z) * series_exp(-z);
  EXPECT_EQ(to_string(e[0]), "1");
  for (int m = 1; m <= nz; ++m) EXPECT_TRUE(e[m].is_zero());
  ZJet zero(nz, kExact);
  EXPECT_EQ(to_string(series_exp(zero)[0]), "1");
  ZJet bad = ZJet::constant(y0, nz);
  EXPECT_THROW(series_exp(bad), NonNilpotentArgument);
}

TEST(ZJetTest, YToZIsHomomorphism) {
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    S a = random_series(rng, QExp::integer(2)), b = random_series(rng, QExp::integer(2));
    const int nz = 4;
    EXPECT_EQ(y_to_z(series_mul(a, b), nz), jet_mul(y_to_z(a, nz), y_to_z(b, nz), kExact));
  }
}

TEST(Numeric, GeometricAndZero) {
  S geo(QExp::integer(30));
  for (int n = 0; n <= 30; ++n) geo.add_term(QExp::integer(n), YExp(), Scalar(1));
  PrecisionScope p(128);
  NumericValue v = numeric_eval_q(geo, Complex(Real("0.1")), 128);
  Real err = (v.value - Complex(Real(1) / Real("0.9"))).abs();
  EXPECT_LT(err, Real("1e-29"));
  EXPECT_LE(err, v.tail * 2);
  NumericValue z = numeric_eval_q(S(QExp::integer(5)), Complex(0.1), 128);
  EXPECT_EQ(z.value.abs(), 0);
  EXPECT_EQ(z.tail, 0);
  EXPECT_THROW(numeric_eval_q(geo, Complex(1.0), 128), DivergentPoint);
}

TEST(Numeric, ExactScalar) {
  PrecisionScope p(128);
  Scalar s = (Scalar(3) * pi().pow(2) + Scalar::i()) / (pi() + Scalar(1));
  Complex v = to_complex(s);
  Real pr = pi_real();
  Complex want = Complex(3 * pr * pr, Real(1)) / Complex(pr + 1);
  EXPECT_LT((v - want).abs(), Real("1e-35"));
}

TEST(RationalYTest, Arithmetic) {
  RationalY y = RationalY::y_power(YExp::integer(1));
  RationalY one(1);
  RationalY a = one / (one - y);
  EXPECT_EQ(a * (one - y), one);
  EXPECT_EQ((y - one) / (y * y - one), one / (y + one));
  RationalY s = RationalY::y_power(YExp::from_halves(1));
  EXPECT_EQ(s * s, y);
  EXPECT_EQ(y.inverse() * y, one);
}
