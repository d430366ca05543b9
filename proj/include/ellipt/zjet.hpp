#pragma once

#include <vector>

#include "ellipt/series.hpp"

namespace ellipt {

// Truncated power series sum_{m <= nz} a_m(q) z^m with q-series coefficients.
class ZJet {
 public:
  ZJet() = default;
  // All-zero jet whose coefficients are valid to the given q-order.
  ZJet(int nz, QExp order);
  explicit ZJet(std::vector<QYSeries<Scalar>> coeffs);

  static ZJet constant(const QYSeries<Scalar>& a, int nz);

  int nz() const { return static_cast<int>(c_.size()) - 1; }
  const QYSeries<Scalar>& operator[](int m) const { return c_.at(m); }
  QYSeries<Scalar>& operator[](int m) { return c_.at(m); }
  const std::vector<QYSeries<Scalar>>& coeffs() const { return c_; }

  ZJet operator-() const;
  ZJet& operator+=(const ZJet& o);
  friend ZJet operator+(ZJet a, const ZJet& b) { return a += b; }
  friend ZJet operator-(ZJet a, const ZJet& b) { return a += -b; }
  // Cauchy product in z, each coefficient truncated at n.
  friend ZJet jet_mul(const ZJet& a, const ZJet& b, QExp n);
  friend ZJet operator*(const ZJet& a, const ZJet& b) { return jet_mul(a, b, kExact); }
  ZJet scaled(const Scalar& s) const;

  friend bool operator==(const ZJet& a, const ZJet& b) { return a.c_ == b.c_; }

 private:
  std::vector<QYSeries<Scalar>> c_;
};

ZJet jet_mul(const ZJet& a, const ZJet& b, QExp n);

// exp of a jet with vanishing z^0 part; NonNilpotentArgument otherwise.
ZJet series_exp(const ZJet& a, QExp n = kExact);

// Substitute y = e^{2 pi i z}: y^k -> sum_m (2 pi i k)^m z^m / m!.
ZJet y_to_z(const QYSeries<Scalar>& a, int nz);

}  // namespace ellipt
