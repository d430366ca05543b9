#pragma once

#include <map>
#include <boost/multiprecision/mpfr.hpp>
#include <string>

#include "ellipt/series.hpp"
#include "ellipt/zjet.hpp"

namespace ellipt {

using Real = boost::multiprecision::mpfr_float;

// Sets the working precision of newly created Reals for the current scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits_;
};

unsigned bits_to_digits10(unsigned bits);

// Copy of x carried at the given working precision.
struct Complex;
Complex at_precision(const Complex& z, unsigned bits);

struct Complex {
  Real re, im;

  Complex() : re(0), im(0) {}
  Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  Complex(double r, double i = 0) : re(r), im(i) {}  // NOLINT

  static Complex I() { return Complex(Real(0), Real(1)); }

  Complex operator-() const { return Complex(-re, -im); }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b);
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex conj() const { return {re, -im}; }
  Real abs() const;
  std::string str(int digits = 20) const;
};

Real pi_real();
Complex cexp(const Complex& z);
Complex csqrt(const Complex& z);  // principal branch
Complex cpow_int(const Complex& z, int k);
// z^a for real a with the principal branch of log.
Complex cpow(const Complex& z, const Real& a);

Complex to_complex(const Scalar& s);

// A numeric value with a heuristic truncation-tail estimate (see tail_estimate).
struct NumericValue {
  Complex value;
  Real tail;
  unsigned bits = 0;
};

// Tail of a q-series from the magnitudes of its retained levels
// (keyed by q-exponent in 24ths) and its validity order. The levels beyond
// the order are extrapolated geometrically from the last retained level with
// per-24th ratio rho = max(|q|^{1/24}, growth between the last two levels),
// giving mag * rho^gap / (1 - rho^step). Coefficients that grow with the level
// (y-powers away from |y| = 1) are therefore not underestimated.
// Returns +inf when the extrapolated ratio reaches 1.
Real tail_estimate(const std::map<int, Real>& level_mags, int order_n24, const Real& absq);

// Evaluation point: q = e^{2 pi i tau}, y = e^{2 pi i v}.
struct EvalPoint {
  Complex tau;
  Complex v;
};

// Evaluate a truncated Scalar series. DivergentPoint when Im(tau) <= 0.
// `dv` differentiates that many times in v before evaluating.
NumericValue numeric_eval(const QYSeries<Scalar>& a, const EvalPoint& p, unsigned bits,
                          int dv = 0);
// Evaluate at a nome q0 directly; every q-exponent must be an integer.
NumericValue numeric_eval_q(const QYSeries<Scalar>& a, const Complex& q0, unsigned bits);
// Evaluate sum z^m a_m(tau) for a jet.
NumericValue numeric_eval(const ZJet& a, const Complex& tau, const Complex& z, unsigned bits);

}  // namespace ellipt
