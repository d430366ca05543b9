#include "ellipt/numeric.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ellipt {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits_(Real::default_precision()) {
  if (bits < 64) bits = 64;
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits_); }

Complex at_precision(const Complex& z, unsigned bits) {
  const unsigned d = bits_to_digits10(bits);
  Real re, im;
  re.precision(d);
  im.precision(d);
  mpfr_set(re.backend().data(), z.re.backend().data(), MPFR_RNDN);
  mpfr_set(im.backend().data(), z.im.backend().data(), MPFR_RNDN);
  return Complex(re, im);
}

Complex operator/(const Complex& a, const Complex& b) {
  const Real n = b.re * b.re + b.im * b.im;
  if (n == 0) throw DivisionByZero("complex division by zero");
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Real Complex::abs() const { return boost::multiprecision::sqrt(re * re + im * im); }

std::string Complex::str(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << re << (im < 0 ? " - " : " + ") << boost::multiprecision::abs(im) << "i";
  return os.str();
}

Real pi_real() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Complex cexp(const Complex& z) {
  const Real m = boost::multiprecision::exp(z.re);
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

Complex csqrt(const Complex& z) {
  const Real r = z.abs();
  if (r == 0) return Complex();
  Real a = boost::multiprecision::sqrt((r + z.re) / 2);
  Real b = boost::multiprecision::sqrt((r - z.re) / 2);
  if (z.im < 0) b = -b;
  return {a, b};
}

Complex cpow_int(const Complex& z, int k) {
  if (k < 0) return Complex(1) / cpow_int(z, -k);
  Complex r(1), b = z;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

Complex cpow(const Complex& z, const Real& a) {
  const Real r = z.abs();
  if (r == 0) return Complex();
  const Real arg = boost::multiprecision::atan2(z.im, z.re);
  return cexp(Complex(a * boost::multiprecision::log(r), a * arg));
}

namespace {

Complex eval_pi_poly(const PiPoly& p, const Real& pi) {
  Complex acc;
  for (int i = p.degree(); i >= 0; --i) {
    const GaussRat c = p.coeff(i);
    acc = acc * Complex(pi) +
          Complex(Real(c.re().get_mpq_t()), Real(c.im().get_mpq_t()));
  }
  return acc;
}

}  // namespace

Complex to_complex(const Scalar& s) {
  const Real pi = pi_real();
  return eval_pi_poly(s.numerator(), pi) / eval_pi_poly(s.denominator(), pi);
}

NumericValue numeric_eval(const QYSeries<Scalar>& a, const EvalPoint& p, unsigned bits, int dv) {
  PrecisionScope scope(bits);
  if (p.tau.im <= 0) throw DivergentPoint("Im(tau) must be positive, |q| < 1");
  const Real pi = pi_real();
  const Complex two_pi_i(Real(0), 2 * pi);
  NumericValue out;
  out.bits = bits;
  out.tail = 0;
  if (a.is_zero()) return out;

  const Real absq = boost::multiprecision::exp(-2 * pi * p.tau.im);
  std::map<int, Real> mags;
  for (const auto& [k, c] : a.terms()) {
    const Real qe = Real(k.first) / 24;
    const Real ye = Real(k.second) / 2;
    Complex t = to_complex(c) * cexp(two_pi_i * (p.tau * Complex(qe) + p.v * Complex(ye)));
    if (dv > 0) t = t * cpow_int(two_pi_i * Complex(ye), dv);
    out.value += t;
    mags[k.first] += t.abs();
  }
  if (!a.is_exact()) out.tail = tail_estimate(mags, a.order().n24, absq);
  return out;
}

Real tail_estimate(const std::map<int, Real>& level_mags, int order_n24, const Real& absq) {
  if (level_mags.empty()) return Real(0);
  auto last = std::prev(level_mags.end());
  Real rho = boost::multiprecision::pow(absq, Real(1) / 24);
  int step = 24;
  if (last != level_mags.begin()) {
    auto prev = std::prev(last);
    const int gap = last->first - prev->first;
    step = std::min(step, gap);
    if (prev->second > 0 && last->second > 0) {
      const Real growth = boost::multiprecision::pow(last->second / prev->second, Real(1) / gap);
      if (growth > rho) rho = growth;
    }
  }
  if (rho >= 1) return std::numeric_limits<Real>::infinity();
  // The first missing level sits at or above the order.
  return last->second * boost::multiprecision::pow(rho, Real(order_n24 - last->first)) /
         (1 - boost::multiprecision::pow(rho, Real(step)));
}

NumericValue numeric_eval_q(const QYSeries<Scalar>& a, const Complex& q0, unsigned bits) {
  PrecisionScope scope(bits);
  const Real absq = q0.abs();
  if (absq >= 1) throw DivergentPoint("|q| must be below 1");
  NumericValue out;
  out.bits = bits;
  out.tail = 0;
  if (a.is_zero()) return out;
  int last = 0;
  Real last_mag = 0;
  for (const auto& [k, c] : a.terms()) {
    if (k.first % 24 != 0 || k.second != 0)
      throw BadExponent("direct nome evaluation needs integer q-powers and no y");
    const int n = k.first / 24;
    Complex t = to_complex(c) * cpow_int(q0, n);
    out.value += t;
    if (n != last) last_mag = 0;
    last = n;
    last_mag += t.abs();
  }
  if (!a.is_exact()) {
    const int gap = a.order().n24 / 24 - last + 1;
    out.tail = last_mag * boost::multiprecision::pow(absq, gap) / (1 - absq);
  }
  return out;
}

NumericValue numeric_eval(const ZJet& a, const Complex& tau, const Complex& z, unsigned bits) {
  PrecisionScope scope(bits);
  NumericValue out;
  out.bits = bits;
  out.tail = 0;
  Complex zm(1);
  for (int m = 0; m <= a.nz(); ++m) {
    NumericValue v = numeric_eval(a[m], EvalPoint{tau, Complex(0)}, bits);
    out.value += v.value * zm;
    out.tail += v.tail * zm.abs();
    zm = zm * z;
  }
  return out;
}

}  // namespace ellipt
