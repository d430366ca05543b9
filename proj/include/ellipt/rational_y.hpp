#pragma once

#include <map>
#include <string>

#include "ellipt/numeric.hpp"
#include "ellipt/series.hpp"
#include "ellipt/upoly.hpp"

namespace ellipt {

using SPoly = UPoly<Scalar>;  // polynomial in s = y^{1/2}

// Rational function of y^{1/2} over Scalar, kept as s^e N(s)/D(s) with
// N(0), D(0) nonzero, D monic and gcd(N, D) = 1. Canonical, so == compares
// representations.
class RationalY {
 public:
  RationalY() = default;
  RationalY(const Scalar& c);  // NOLINT
  RationalY(long n) : RationalY(Scalar(n)) {}  // NOLINT
  RationalY(SPoly num, SPoly den, int shift = 0);

  // Laurent polynomial sum c_b y^b.
  static RationalY laurent(const std::map<YExp, Scalar>& terms);
  static RationalY y_power(YExp b) { return RationalY(SPoly::constant(Scalar(1)), SPoly::constant(Scalar(1)), b.n2); }

  bool is_zero() const { return num_.is_zero(); }
  int shift() const { return shift_; }
  const SPoly& numerator() const { return num_; }
  const SPoly& denominator() const { return den_; }

  RationalY operator-() const;
  friend RationalY operator+(const RationalY& a, const RationalY& b);
  friend RationalY operator-(const RationalY& a, const RationalY& b) { return a + (-b); }
  friend RationalY operator*(const RationalY& a, const RationalY& b);
  friend RationalY operator/(const RationalY& a, const RationalY& b);
  friend bool operator==(const RationalY& a, const RationalY& b) {
    return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalY& a, const RationalY& b) { return !(a == b); }

  RationalY inverse() const;
  // Value at y^{1/2} = s.
  Complex eval(const Complex& s) const;
  std::string str() const;

 private:
  void normalize();
  SPoly num_;
  SPoly den_ = SPoly::constant(Scalar(1));
  int shift_ = 0;
};

template <>
struct CoeffTraits<RationalY> {
  static RationalY one_like(const RationalY&) { return RationalY(1); }
  static RationalY zero_like(const RationalY&) { return RationalY(); }
  static void check_same_ring(const RationalY&, const RationalY&) {}
  static bool is_invertible(const RationalY& c) { return !c.is_zero(); }
  static RationalY inverse(const RationalY& c) { return c.inverse(); }
};

// Lift a Scalar series to RationalY coefficients, folding each q-level's
// y-dependence into one rational coefficient at y^0.
QYSeries<RationalY> fold_y(const QYSeries<Scalar>& a);

// Evaluate a series with RationalY coefficients at (v, tau).
NumericValue numeric_eval(const QYSeries<RationalY>& a, const EvalPoint& p, unsigned bits);

std::string to_string(const QYSeries<RationalY>& a);

}  // namespace ellipt
