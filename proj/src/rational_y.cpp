#include "ellipt/rational_y.hpp"

namespace ellipt {

RationalY::RationalY(const Scalar& c) {
  if (!c.is_zero()) num_ = SPoly::constant(c);
}

RationalY::RationalY(SPoly num, SPoly den, int shift)
    : num_(std::move(num)), den_(std::move(den)), shift_(shift) {
  if (den_.is_zero()) throw DivisionByZero("RationalY with zero denominator");
  normalize();
}

RationalY RationalY::laurent(const std::map<YExp, Scalar>& terms) {
  if (terms.empty()) return RationalY();
  const int lo = terms.begin()->first.n2;
  std::vector<Scalar> c(static_cast<std::size_t>(terms.rbegin()->first.n2 - lo) + 1, Scalar());
  for (const auto& [b, v] : terms) c[b.n2 - lo] = c[b.n2 - lo] + v;
  return RationalY(SPoly(std::move(c)), SPoly::constant(Scalar(1)), lo);
}

void RationalY::normalize() {
  if (num_.is_zero()) {
    den_ = SPoly::constant(Scalar(1));
    shift_ = 0;
    return;
  }
  const int ln = num_.low_order();
  if (ln > 0) {
    num_ = num_.shifted(-ln);
    shift_ += ln;
  }
  const int ld = den_.low_order();
  if (ld > 0) {
    den_ = den_.shifted(-ld);
    shift_ -= ld;
  }
  if (den_.degree() > 0) {
    SPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
  }
  const Scalar lead = den_.lead();
  if (!lead.is_one()) {
    const Scalar inv = lead.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RationalY RationalY::operator-() const {
  RationalY r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalY operator+(const RationalY& a, const RationalY& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int m = std::min(a.shift_, b.shift_);
  SPoly n1 = a.num_.shifted(a.shift_ - m), n2 = b.num_.shifted(b.shift_ - m);
  if (a.den_ == b.den_) return RationalY(n1 + n2, a.den_, m);
  return RationalY(n1 * b.den_ + n2 * a.den_, a.den_ * b.den_, m);
}

RationalY operator*(const RationalY& a, const RationalY& b) {
  if (a.is_zero() || b.is_zero()) return RationalY();
  return RationalY(a.num_ * b.num_, a.den_ * b.den_, a.shift_ + b.shift_);
}

RationalY RationalY::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero RationalY");
  return RationalY(den_, num_, -shift_);
}

RationalY operator/(const RationalY& a, const RationalY& b) { return a * b.inverse(); }

namespace {

Complex eval_spoly(const SPoly& p, const Complex& s) {
  Complex acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * s + to_complex(p.coeff(i));
  return acc;
}

std::string spoly_str(const SPoly& p, int shift) {
  QYSeries<Scalar> tmp;
  for (int i = 0; i <= p.degree(); ++i)
    tmp.add_term(QExp(), YExp::from_halves(i + shift), p.coeff(i));
  return to_string(tmp);
}

}  // namespace

Complex RationalY::eval(const Complex& s) const {
  return eval_spoly(num_, s) * cpow_int(s, shift_) / eval_spoly(den_, s);
}

std::string RationalY::str() const {
  if (den_.degree() == 0) return spoly_str(num_, shift_);
  return "(" + spoly_str(num_, shift_) + ")/(" + spoly_str(den_, 0) + ")";
}

QYSeries<RationalY> fold_y(const QYSeries<Scalar>& a) {
  QYSeries<RationalY> r(a.order());
  for (QExp lvl : a.q_levels()) {
    std::map<YExp, Scalar> t;
    for (auto& [b, c] : a.at_q(lvl)) t[b] = c;
    r.add_term(lvl, YExp(), RationalY::laurent(t));
  }
  return r;
}

NumericValue numeric_eval(const QYSeries<RationalY>& a, const EvalPoint& p, unsigned bits) {
  // Evaluate each coefficient at y^{1/2} = e^{pi i v}, then sum in q.
  PrecisionScope scope(bits);
  const Real pi = pi_real();
  const Complex s = cexp(Complex(Real(0), pi) * p.v);
  NumericValue out;
  out.bits = bits;
  out.tail = 0;
  if (p.tau.im <= 0) throw DivergentPoint("Im(tau) must be positive");
  const Real absq = boost::multiprecision::exp(-2 * pi * p.tau.im);
  std::map<int, Real> mags;
  for (const auto& [k, c] : a.terms()) {
    Complex t = c.eval(s) * cpow_int(s, k.second) *
                cexp(Complex(Real(0), 2 * pi) * p.tau * Complex(Real(k.first) / 24));
    out.value += t;
    mags[k.first] += t.abs();
  }
  if (!a.is_exact()) out.tail = tail_estimate(mags, a.order().n24, absq);
  return out;
}

std::string to_string(const QYSeries<RationalY>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : a.terms()) {
    const QExp q = QExp::from_24ths(k.first);
    std::string mono;
    if (q.n24 != 0)
      mono = q.den() == 1 ? (q.num() == 1 ? "q" : "q^" + std::to_string(q.num()))
                          : "q^{" + std::to_string(q.num()) + "/" + std::to_string(q.den()) + "}";
    if (k.second != 0) {
      const YExp y = YExp::from_halves(k.second);
      mono += (mono.empty() ? "" : " ") + std::string("y^{") + y.str() + "}";
    }
    std::string term = "[" + c.str() + "]" + (mono.empty() ? "" : " " + mono);
    out += (first ? "" : " + ") + term;
    first = false;
  }
  return out;
}

}  // namespace ellipt
