#include <gtest/gtest.h>

#include <chrono>

#include "ellipt/modforms.hpp"
#include "ellipt/theta.hpp"
#include "ellipt/transform.hpp"

using namespace ellipt;

namespace {

using S = QYSeries<Scalar>;
const QExp Q0 = QExp();

S half_series(std::initializer_list<std::pair<int, long>> terms, QExp order) {
  // terms: (exponent in halves, integer coefficient)
  S s(order);
  for (auto [h, c] : terms) s.add_term(QExp::from_24ths(12 * h), YExp(), Scalar(c));
  return s;
}

// Independent oracle: eta^3 = sum_{n>=0} (-1)^n (2n+1) q^{1/8 + n(n+1)/2}.
S eta_cubed_oracle(QExp n) {
  S s(n);
  for (int k = 0;; ++k) {
    QExp e = QExp::from_24ths(3 + 12 * k * (k + 1));
    if (e > n) break;
    s.add_term(e, YExp(), Scalar((k % 2 ? -1 : 1) * (2 * k + 1)));
  }
  return s;
}

// Independent oracle: theta2(0) = sum_{n in Z} (-1)^n q^{n^2/2}.
S theta2_null_oracle(QExp n) {
  S s(n);
  for (int k = -50; k <= 50; ++k) s.add_term(QExp::from_24ths(12 * k * k), YExp(), Scalar(k % 2 ? -1 : 1));
  return s;
}

}  // namespace

TEST(Eisenstein, PrintedExpansions) {
  auto t0 = std::chrono::steady_clock::now();
  EXPECT_EQ(to_string(eisenstein(4, QExp::integer(2))), "1 + 240 q + 2160 q^2");
  EXPECT_EQ(to_string(eisenstein(6, QExp::integer(2))), "1 - 504 q - 16632 q^2");
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
  EXPECT_EQ(*g2(QExp::integer(1)).find(Q0, YExp()), Scalar::rational(-1, 24));
  EXPECT_THROW(eisenstein(3, QExp::integer(1)), BadWeight);
  EXPECT_THROW(eisenstein(0, QExp::integer(1)), BadWeight);
}

TEST(Bernoulli, Recurrence) {
  EXPECT_EQ(bernoulli(0), Scalar(1));
  EXPECT_EQ(bernoulli(1), Scalar::rational(-1, 2));
  EXPECT_EQ(bernoulli(2), Scalar::rational(1, 6));
  EXPECT_EQ(bernoulli(4), Scalar::rational(-1, 30));
  EXPECT_EQ(bernoulli(12), Scalar::rational(-691, 2730));
  EXPECT_EQ(bernoulli(13), Scalar(0));
}

TEST(DeltaEps, PrintedFourierLists) {
  const QExp one = QExp::integer(1);
  EXPECT_EQ(to_string(delta_eps(1, DeltaEps::Delta, one)), "1/4 + 6 q");
  EXPECT_EQ(to_string(delta_eps(1, DeltaEps::Eps, one)), "1/16 - q");
  EXPECT_EQ(to_string(delta_eps(2, DeltaEps::Delta, one).scaled(Scalar(8))), "-1 - 24 q^{1/2} - 24 q");
  EXPECT_EQ(to_string(delta_eps(2, DeltaEps::Eps, one)), "q^{1/2} + 8 q");
}

TEST(DeltaEps, TImages) {
  const QExp n = QExp::integer(4);
  EXPECT_EQ(tau_plus_one(delta_eps(2, DeltaEps::Delta, n)), delta_eps(3, DeltaEps::Delta, n));
  EXPECT_EQ(tau_plus_one(delta_eps(2, DeltaEps::Eps, n)), delta_eps(3, DeltaEps::Eps, n));
}

TEST(Theta, LeadingTermsAndNulls) {
  S t = theta_series(ThetaKind::Theta, QExp::rational(1, 8));
  EXPECT_EQ(to_string(t), "i q^{1/8} y^{-1/2} - i q^{1/8} y^{1/2}");
  EXPECT_TRUE(theta_null(ThetaKind::Theta, QExp::integer(5)).is_zero());
  // Brute force against the sum formula; the q and q^{3/2} coefficients vanish.
  S t2 = theta_null(ThetaKind::Theta2, QExp::integer(2));
  EXPECT_EQ(to_string(t2), "1 - 2 q^{1/2} + 2 q^2");
  EXPECT_EQ(theta_null(ThetaKind::Theta2, QExp::integer(12)), theta2_null_oracle(QExp::integer(12)));
  for (auto k : {ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3})
    EXPECT_TRUE(theta_null(k, QExp::integer(3)).y_free());
  EXPECT_EQ(to_string(theta_prime_zero(QExp::rational(1, 8))), "2 pi q^{1/8}");
}

TEST(Theta, Theta3IsTheta2WithSignFlips) {
  const QExp n = QExp::integer(5);
  S t2 = theta_series(ThetaKind::Theta2, n), t3 = theta_series(ThetaKind::Theta3, n);
  S flipped(n);
  for (const auto& [k, c] : t2.terms()) {
    // q^{j-1/2} terms carry odd y-powers; flip them.
    const bool odd_half = (k.first % 24) != 0;
    flipped.add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second), odd_half ? -c : c);
  }
  EXPECT_EQ(flipped, t3);
  EXPECT_EQ(tau_plus_one(t2), t3);
  EXPECT_EQ(tau_plus_one(t3), t2);
}

TEST(Theta, JacobiIdentityAndEtaCubed) {
  auto t0 = std::chrono::steady_clock::now();
  const QExp n = QExp::integer(20);
  S lhs = theta_prime_zero(n);
  S rhs = series_mul(series_mul(theta_null(ThetaKind::Theta1, n), theta_null(ThetaKind::Theta2, n), n),
                     theta_null(ThetaKind::Theta3, n), n)
              .scaled(Scalar::pi());
  EXPECT_TRUE((lhs - rhs).is_zero());
  EXPECT_EQ(lhs.order(), n);
  S eta3 = eta_power(3, n).scaled(Scalar(2) * Scalar::pi());
  EXPECT_TRUE((lhs - eta3).is_zero());
  EXPECT_TRUE((lhs - eta_cubed_oracle(n).scaled(Scalar(2) * Scalar::pi())).is_zero());
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5.0);
}

TEST(Eta, Expansions) {
  EXPECT_EQ(to_string(eta(QExp::from_24ths(1))), "q^{1/24}");
  S e24 = eta_power(24, QExp::integer(3));
  EXPECT_EQ(to_string(e24), "q - 24 q^2 + 252 q^3");
  EXPECT_EQ(to_string(eta_power(0, QExp::integer(3))), "1");
  S inv = eta_power(-3, QExp::integer(2));
  EXPECT_EQ(to_string(series_mul(inv, eta_power(3, QExp::integer(4)), QExp::integer(2))), "1");
}

TEST(ModularFit, Examples) {
  const QExp n = QExp::integer(8);
  S e4 = eisenstein(4, n);
  auto r = modular_fit(series_mul(e4, e4, n), 8, ModularGroup::SL2Z);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.basis.size(), 1u);
  EXPECT_EQ(r.basis[0], "E4^2");
  EXPECT_EQ(r.coefficients[0], Scalar(1));

  // Weight 4: q^1 coefficient must be 240 a^0.
  S good = half_series({{0, 3}, {2, 720}}, n), bad = half_series({{0, 3}, {2, 721}}, n);
  for (int m = 2; m <= 8; ++m) {
    const Scalar c = *e4.find(QExp::integer(m), YExp()) * Scalar(3);
    good.add_term(QExp::integer(m), YExp(), c);
    bad.add_term(QExp::integer(m), YExp(), c);
  }
  EXPECT_TRUE(modular_fit(good, 4, ModularGroup::SL2Z).ok());
  auto rb = modular_fit(bad, 4, ModularGroup::SL2Z);
  ASSERT_FALSE(rb.ok());
  EXPECT_EQ(*rb.residual, QExp::integer(1));

  auto rc = modular_fit(half_series({{0, 1}}, QExp::integer(4)), 2, ModularGroup::SL2Z);
  ASSERT_FALSE(rc.ok());
  EXPECT_EQ(*rc.residual, Q0);

  const QExp h = QExp::integer(5);
  S de = series_mul(delta_eps(2, DeltaEps::Delta, h), delta_eps(2, DeltaEps::Eps, h), h);
  auto rd = modular_fit(de, 6, ModularGroup::Gamma0Upper_2);
  ASSERT_TRUE(rd.ok());
  for (std::size_t j = 0; j < rd.basis.size(); ++j)
    EXPECT_EQ(rd.coefficients[j], rd.basis[j] == "delta2 eps2" ? Scalar(1) : Scalar(0));

  EXPECT_THROW(modular_fit(e4, 4, ModularGroup::Gamma0_2), UnsupportedGroup);
  EXPECT_THROW(modular_fit(e4, 4, ModularGroup::GammaTheta), UnsupportedGroup);
  EXPECT_THROW(modular_fit(eisenstein(4, QExp::integer(2)), 12, ModularGroup::SL2Z), InsufficientCoefficients);
}

TEST(TransformLaws, AllThetaLawsAtFiveSamples) {
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& law : theta_laws()) {
    auto rep = check_transformation(law, default_samples(law.action, 5, 17), QExp::integer(40), 128);
    ASSERT_EQ(rep.entries.size(), 5u);
    if (!law.informational) {
      EXPECT_TRUE(rep.passed()) << render_human(rep);
    } else {
      // The typeset variants with a dropped factor must not hold.
      for (const auto& e : rep.entries) EXPECT_NE(e.detail.find("does not hold"), std::string::npos) << e.id;
    }
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 60.0);
}

TEST(TransformLaws, SpecificPoints) {
  PrecisionScope p(128);
  Sample a{Complex(Real("0.3"), Real("0.1")), Complex(Real("0.2"), Real("1.1"))};
  auto ra = check_transformation(find_law(theta_laws(), "2.12T"), {a}, QExp::integer(30), 128);
  EXPECT_TRUE(ra.passed());
  Sample b{Complex(0), Complex(Real("0.1"), Real(1))};
  auto rb = check_transformation(find_law(theta_laws(), "2.26a"), {b}, QExp::integer(40), 128);
  EXPECT_TRUE(rb.passed()) << render_human(rb);
  Sample fixed{Complex(Real("0.2"), Real("0.05")), Complex(Real(0), Real(1))};
  auto rc = check_transformation(find_law(theta_laws(), "2.15S"), {fixed}, QExp::integer(40), 128);
  EXPECT_TRUE(rc.passed());
  Sample out{Complex(0), Complex(Real(0), Real("0.2"))};
  EXPECT_THROW(check_transformation(find_law(theta_laws(), "2.15S"), {out}, QExp::integer(40), 128),
               SamplePointOutOfDomain);
}
