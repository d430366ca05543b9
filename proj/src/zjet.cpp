#include "ellipt/zjet.hpp"

namespace ellipt {

ZJet::ZJet(int nz, QExp order) : c_(static_cast<std::size_t>(nz) + 1, QYSeries<Scalar>(order)) {}

ZJet::ZJet(std::vector<QYSeries<Scalar>> coeffs) : c_(std::move(coeffs)) {}

ZJet ZJet::constant(const QYSeries<Scalar>& a, int nz) {
  std::vector<QYSeries<Scalar>> c(static_cast<std::size_t>(nz) + 1, QYSeries<Scalar>(a.order()));
  c[0] = a;
  return ZJet(std::move(c));
}

ZJet ZJet::operator-() const {
  ZJet r = *this;
  for (auto& s : r.c_) s = -s;
  return r;
}

ZJet& ZJet::operator+=(const ZJet& o) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t m = 0; m < n; ++m) c_[m] += o.c_[m];
  return *this;
}

ZJet jet_mul(const ZJet& a, const ZJet& b, QExp n) {
  const int nz = std::min(a.nz(), b.nz());
  std::vector<QYSeries<Scalar>> c;
  for (int m = 0; m <= nz; ++m) {
    QYSeries<Scalar> acc(n);
    bool first = true;
    for (int i = 0; i <= m; ++i) {
      auto p = series_mul(a.c_[i], b.c_[m - i], n);
      if (first) {
        acc = p;
        first = false;
      } else {
        acc += p;
      }
    }
    c.push_back(std::move(acc));
  }
  return ZJet(std::move(c));
}

ZJet ZJet::scaled(const Scalar& s) const {
  ZJet r = *this;
  for (auto& x : r.c_) x = x.scaled(s);
  return r;
}

ZJet series_exp(const ZJet& a, QExp n) {
  if (!a[0].is_zero())
    throw NonNilpotentArgument("exp needs a jet with zero z^0 coefficient");
  const int nz = a.nz();
  // sum_{k <= nz} a^k / k!; a^k starts at z^k.
  ZJet one(nz, kExact);
  one[0] = QYSeries<Scalar>::monomial(Scalar(1));
  ZJet result = one, power = one;
  for (int k = 1; k <= nz; ++k) {
    power = jet_mul(power, a, n).scaled(Scalar::rational(1, k));
    result += power;
  }
  for (int m = 0; m <= nz; ++m) result[m] = result[m].truncated(n);
  return result;
}

ZJet y_to_z(const QYSeries<Scalar>& a, int nz) {
  ZJet r(nz, a.order());
  for (const auto& [k, c] : a.terms()) {
    const QExp q = QExp::from_24ths(k.first);
    // (2 pi i * (n2/2))^m / m! = (pi i n2)^m / m!
    const Scalar base = Scalar::pi_power(1, GaussRat(0, k.second));
    Scalar term = c;
    for (int m = 0; m <= nz; ++m) {
      if (m > 0) term = term * base * Scalar::rational(1, m);
      r[m].add_term(q, YExp(), term);
      if (k.second == 0) break;
    }
  }
  return r;
}

}  // namespace ellipt
