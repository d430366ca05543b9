#include "ellipt/theta.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

namespace ellipt {

namespace {

using S = QYSeries<Scalar>;

// (1 + sign * y^b q^a), exact.
S binomial(int sign, YExp b, QExp a) {
  S f;
  f.add_term(QExp(), YExp(), Scalar(1));
  f.add_term(a, b, Scalar(sign));
  return f;
}

S product_part(ThetaKind kind, QExp n) {
  S p = S::monomial(Scalar(1));
  p.set_order(n);
  const bool half = kind == ThetaKind::Theta2 || kind == ThetaKind::Theta3;
  const int sign = (kind == ThetaKind::Theta || kind == ThetaKind::Theta2) ? -1 : 1;
  for (int j = 1; 24 * j - (half ? 12 : 0) <= n.n24; ++j) {
    const QExp e = half ? QExp::from_24ths(24 * j - 12) : QExp::integer(j);
    if (QExp::integer(j) <= n) p = series_mul(p, binomial(-1, YExp(), QExp::integer(j)), n);
    p = series_mul(p, binomial(sign, YExp::integer(1), e), n);
    p = series_mul(p, binomial(sign, YExp::integer(-1), e), n);
  }
  return p;
}

S compute_theta(ThetaKind kind, QExp n) {
  if (kind == ThetaKind::Theta2 || kind == ThetaKind::Theta3) return product_part(kind, n);
  // 2 q^{1/8} sin(pi v) = -i q^{1/8} (y^{1/2} - y^{-1/2}),
  // 2 q^{1/8} cos(pi v) =    q^{1/8} (y^{1/2} + y^{-1/2}).
  const QExp eighth = QExp::from_24ths(3);
  S pre;
  if (kind == ThetaKind::Theta) {
    pre.add_term(eighth, YExp::from_halves(1), -Scalar::i());
    pre.add_term(eighth, YExp::from_halves(-1), Scalar::i());
  } else {
    pre.add_term(eighth, YExp::from_halves(1), Scalar(1));
    pre.add_term(eighth, YExp::from_halves(-1), Scalar(1));
  }
  return series_mul(pre, product_part(kind, n - eighth), n);
}

struct ThetaCache {
  std::shared_mutex mu;
  std::map<std::pair<int, int>, S> entries;
};

ThetaCache& cache() {
  static ThetaCache c;
  return c;
}

}  // namespace

ThetaKind parse_theta_kind(const std::string& name) {
  if (name == "t" || name == "theta") return ThetaKind::Theta;
  if (name == "t1" || name == "theta1") return ThetaKind::Theta1;
  if (name == "t2" || name == "theta2") return ThetaKind::Theta2;
  if (name == "t3" || name == "theta3") return ThetaKind::Theta3;
  throw ParseError("unknown theta kind '" + name + "'");
}

std::string theta_kind_name(ThetaKind k) {
  switch (k) {
    case ThetaKind::Theta: return "t";
    case ThetaKind::Theta1: return "t1";
    case ThetaKind::Theta2: return "t2";
    case ThetaKind::Theta3: return "t3";
  }
  return "?";
}

S theta_series(ThetaKind kind, QExp n) {
  auto& c = cache();
  const std::pair<int, int> key{static_cast<int>(kind), n.n24};
  {
    std::shared_lock lock(c.mu);
    auto it = c.entries.find(key);
    if (it != c.entries.end()) return it->second;
  }
  S value = compute_theta(kind, n);
  std::unique_lock lock(c.mu);
  return c.entries.emplace(key, std::move(value)).first->second;
}

S theta_null(ThetaKind kind, QExp n) { return at_y_one(theta_series(kind, n)); }

S d_dv(const S& a) {
  S r(a.order());
  for (const auto& [k, c] : a.terms())
    r.add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second),
               c * Scalar::pi_power(1, GaussRat(0, k.second)));
  return r;
}

S theta_prime_zero(QExp n) { return at_y_one(d_dv(theta_series(ThetaKind::Theta, n))); }

S euler_product(QExp n) {
  S p = S::monomial(Scalar(1));
  p.set_order(n);
  for (int j = 1; QExp::integer(j) <= n; ++j)
    p = series_mul(p, binomial(-1, YExp(), QExp::integer(j)), n);
  return p;
}

S eta(QExp n) {
  const QExp e = QExp::from_24ths(1);
  return euler_product(n - e).shifted(e, YExp());
}

S eta_power(int k, QExp n) {
  if (k == 0) return S::monomial(Scalar(1));
  // eta^k = q^{k/24} c^k; c^k needs order n - k/24.
  const QExp shift = QExp::from_24ths(k);
  const QExp inner = n - shift;
  S c = euler_product(std::max(inner, QExp()));
  return series_pow(c, k, inner).shifted(shift, YExp());
}

}  // namespace ellipt
