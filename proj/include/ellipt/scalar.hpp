#pragma once

#include <gmpxx.h>

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>

#include "ellipt/upoly.hpp"

namespace ellipt {

// Gaussian rational a + b i with a, b in Q.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long n) : re_(n) {}  // NOLINT: implicit on purpose
  GaussRat(mpq_class re, mpq_class im = 0);

  static GaussRat i() { return GaussRat(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussRat conj() const { return GaussRat(re_, -im_); }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussRat operator-() const { return GaussRat(-re_, -im_); }
  friend GaussRat operator+(const GaussRat& a, const GaussRat& b);
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b);
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b);
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b);
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) {
    return !(a == b);
  }

  std::string str() const;

 private:
  mpq_class re_, im_;
};

using PiPoly = UPoly<GaussRat>;

// Element of Q(i)(pi): a reduced fraction of polynomials in pi with Gaussian
// rational coefficients. The denominator is monic; an empty denominator
// stands for 1, so integers and pi-monomials over 1 allocate only the
// numerator. Canonical form makes == a representational comparison.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : Scalar(GaussRat(n)) {}  // NOLINT
  Scalar(int n) : Scalar(GaussRat(n)) {}   // NOLINT
  Scalar(const GaussRat& a);               // NOLINT
  Scalar(const mpq_class& a) : Scalar(GaussRat(a)) {}  // NOLINT
  Scalar(PiPoly num, PiPoly den);

  static Scalar pi() { return pi_power(1); }
  static Scalar i() { return Scalar(GaussRat::i()); }
  static Scalar rational(long p, long q) { return Scalar(mpq_class(p, q)); }
  // c * pi^k, k may be negative.
  static Scalar pi_power(int k, const GaussRat& c = GaussRat(1));
  // 2 pi i, the factor that turns a stored Chern root into a class.
  static Scalar two_pi_i() { return pi_power(1, GaussRat(0, 2)); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_zero() && num_.is_one(); }
  const PiPoly& numerator() const { return num_; }
  PiPoly denominator() const;
  // If the value is c * pi^k, return c and set k.
  std::optional<GaussRat> as_monomial(int* k) const;
  // If the value is a Gaussian rational, return it.
  std::optional<GaussRat> as_gauss_rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) {
    return !(a == b);
  }

  Scalar inverse() const;
  Scalar pow(int k) const;
  std::complex<double> to_complex_double() const;

  // Human-readable form such as "1", "-3/2 pi^2", "(1+2i) pi", "pi/(pi+1)".
  std::string str() const;

 private:
  void normalize();
  PiPoly num_;
  PiPoly den_;  // empty means 1
};

std::ostream& operator<<(std::ostream& os, const GaussRat& a);
std::ostream& operator<<(std::ostream& os, const Scalar& a);

}  // namespace ellipt
