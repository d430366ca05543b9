#include "ellipt/scalar.hpp"

#include <ostream>
#include <sstream>

namespace ellipt {

GaussRat::GaussRat(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRat operator+(const GaussRat& a, const GaussRat& b) {
  GaussRat r;
  r.re_ = a.re_ + b.re_;
  r.im_ = a.im_ + b.im_;
  return r;
}

GaussRat operator-(const GaussRat& a, const GaussRat& b) {
  GaussRat r;
  r.re_ = a.re_ - b.re_;
  r.im_ = a.im_ - b.im_;
  return r;
}

GaussRat operator*(const GaussRat& a, const GaussRat& b) {
  GaussRat r;
  if (a.is_real() && b.is_real()) {
    r.re_ = a.re_ * b.re_;
    return r;
  }
  r.re_ = a.re_ * b.re_ - a.im_ * b.im_;
  r.im_ = a.re_ * b.im_ + a.im_ * b.re_;
  return r;
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
  if (b.is_zero()) throw DivisionByZero("Gaussian rational division by zero");
  if (b.is_real()) {
    GaussRat r;
    r.re_ = a.re_ / b.re_;
    r.im_ = a.im_ / b.re_;
    return r;
  }
  const mpq_class n = b.norm();
  GaussRat c = a * b.conj();
  c.re_ /= n;
  c.im_ /= n;
  return c;
}

std::string GaussRat::str() const {
  if (is_zero()) return "0";
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1)
    imag = "i";
  else if (im_ == -1)
    imag = "-i";
  else
    imag = im_.get_str() + "i";
  if (sgn(re_) == 0) return imag;
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag;
}

Scalar::Scalar(const GaussRat& a) {
  if (!a.is_zero()) num_ = PiPoly::constant(a);
}

Scalar::Scalar(PiPoly num, PiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("zero denominator");
  normalize();
}

Scalar Scalar::pi_power(int k, const GaussRat& c) {
  Scalar s;
  if (c.is_zero()) return s;
  if (k >= 0) {
    s.num_ = PiPoly::monomial(c, k);
  } else {
    s.num_ = PiPoly::constant(c);
    s.den_ = PiPoly::monomial(GaussRat(1), -k);
  }
  return s;
}

PiPoly Scalar::denominator() const {
  return den_.is_zero() ? PiPoly::constant(GaussRat(1)) : den_;
}

std::optional<GaussRat> Scalar::as_monomial(int* k) const {
  if (is_zero()) {
    *k = 0;
    return GaussRat(0);
  }
  if (!num_.is_monomial()) return std::nullopt;
  if (den_.is_zero()) {
    *k = num_.degree();
    return num_.lead();
  }
  if (!den_.is_monomial() || num_.degree() != 0) return std::nullopt;
  *k = -den_.degree();
  return num_.lead();
}

std::optional<GaussRat> Scalar::as_gauss_rational() const {
  if (is_zero()) return GaussRat(0);
  if (den_.is_zero() && num_.degree() == 0) return num_.lead();
  return std::nullopt;
}

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_ = PiPoly();
    return;
  }
  if (den_.is_zero()) return;
  PiPoly g = gcd(num_, den_);
  if (!g.is_one()) {
    if (g.is_monomial()) {
      num_ = num_.shifted(-g.degree());
      den_ = den_.shifted(-g.degree());
    } else {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
  }
  if (!(den_.lead() == GaussRat(1))) {
    const GaussRat inv = GaussRat(1) / den_.lead();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  if (den_.is_one()) den_ = PiPoly();
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_zero() && o.den_.is_zero()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  const PiPoly d1 = denominator(), d2 = o.denominator();
  num_ = num_ * d2 + o.num_ * d1;
  den_ = d1 * d2;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  num_ = num_ * o.num_;
  if (den_.is_zero() && o.den_.is_zero()) return *this;
  den_ = denominator() * o.denominator();
  normalize();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of the zero scalar");
  return Scalar(denominator(), num_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar r(1), b = *this;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

namespace {

std::complex<double> eval_poly(const PiPoly& p) {
  std::complex<double> acc = 0, x = 3.14159265358979323846;
  for (int i = p.degree(); i >= 0; --i) {
    const GaussRat c = p.coeff(i);
    acc = acc * x + std::complex<double>(c.re().get_d(), c.im().get_d());
  }
  return acc;
}

// Render c * pi^k with a leading sign for composing sums.
std::string poly_term(const GaussRat& c, int k, bool first) {
  std::string coef;
  bool neg = false;
  GaussRat a = c;
  if (a.is_real() && sgn(a.re()) < 0) {
    neg = true;
    a = -a;
  } else if (sgn(a.re()) == 0 && sgn(a.im()) < 0) {
    neg = true;
    a = -a;
  }
  const bool compound = !a.is_real() && sgn(a.re()) != 0;
  if (k == 0) {
    coef = compound ? "(" + a.str() + ")" : a.str();
  } else {
    std::string pk = k == 1 ? "pi" : "pi^" + std::to_string(k);
    if (a == GaussRat(1))
      coef = pk;
    else
      coef = (compound ? "(" + a.str() + ")" : a.str()) + " " + pk;
  }
  if (first) return neg ? "-" + coef : coef;
  return (neg ? " - " : " + ") + coef;
}

std::string poly_str(const PiPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const GaussRat c = p.coeff(i);
    if (c.is_zero()) continue;
    s += poly_term(c, i, first);
    first = false;
  }
  return s;
}

int term_count(const PiPoly& p) {
  int n = 0;
  for (const auto& c : p.coeffs()) n += c.is_zero() ? 0 : 1;
  return n;
}

}  // namespace

std::complex<double> Scalar::to_complex_double() const {
  return eval_poly(num_) / eval_poly(denominator());
}

std::string Scalar::str() const {
  std::string n = poly_str(num_);
  if (den_.is_zero()) return n;
  std::string d = poly_str(den_);
  if (term_count(num_) > 1) n = "(" + n + ")";
  if (term_count(den_) > 1 || d.find(' ') != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const GaussRat& a) {
  return os << a.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& a) {
  return os << a.str();
}

}  // namespace ellipt
