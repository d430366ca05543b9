#include "ellipt/series.hpp"

namespace ellipt {

QYSeries<Scalar> tau_plus_one(const QYSeries<Scalar>& a) {
  QYSeries<Scalar> r(a.order());
  static const GaussRat units[4] = {GaussRat(1), GaussRat::i(), GaussRat(-1),
                                    -GaussRat::i()};
  for (const auto& [k, c] : a.terms()) {
    if (k.first % 6 != 0)
      throw BadExponent("tau -> tau+1 needs q-exponents in (1/4)Z, got " +
                        QExp::from_24ths(k.first).str());
    const int quarter = ((k.first / 6) % 4 + 4) % 4;
    r.add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second),
               c * Scalar(units[quarter]));
  }
  return r;
}

QYSeries<Scalar> substitute_y_by_yq(const QYSeries<Scalar>& a, int k, QExp valid_to) {
  QYSeries<Scalar> r(valid_to);
  for (const auto& [key, c] : a.terms())
    r.add_term(QExp::from_24ths(key.first + k * key.second * 12),
               YExp::from_halves(key.second), c);
  return r;
}

QYSeries<Scalar> at_y_one(const QYSeries<Scalar>& a) {
  QYSeries<Scalar> r(a.order());
  for (const auto& [key, c] : a.terms())
    r.add_term(QExp::from_24ths(key.first), YExp(), c);
  return r;
}

namespace {

std::string exp_str(const char* var, long num, long den) {
  if (num == 0) return "";
  std::string s = var;
  if (den == 1) {
    if (num != 1) s += "^" + std::to_string(num);
  } else {
    s += "^{" + std::to_string(num) + "/" + std::to_string(den) + "}";
  }
  return s;
}

bool is_negative(const Scalar& s) {
  int k;
  auto m = s.as_monomial(&k);
  if (!m) return false;
  if (m->is_real()) return sgn(m->re()) < 0;
  if (sgn(m->re()) == 0) return sgn(m->im()) < 0;
  return false;
}

bool is_compound(const std::string& s) {
  // Sums need parentheses when followed by a monomial.
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '(' && s[i - 1] != '^' &&
        s[i - 1] != '{')
      return true;
  return false;
}

}  // namespace

std::string to_string(const QYSeries<Scalar>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : a.terms()) {
    const QExp q = QExp::from_24ths(k.first);
    const YExp y = YExp::from_halves(k.second);
    std::string mono = exp_str("q", q.num(), q.den());
    const std::string ys =
        exp_str("y", y.is_integer() ? y.n2 / 2 : y.n2, y.is_integer() ? 1 : 2);
    if (!ys.empty()) mono = mono.empty() ? ys : mono + " " + ys;
    const bool neg = is_negative(c);
    const Scalar mag = neg ? -c : c;
    std::string cs = mag.str();
    std::string term;
    if (mono.empty())
      term = is_compound(cs) && !first ? "(" + cs + ")" : cs;
    else if (mag.is_one())
      term = mono;
    else
      term = (is_compound(cs) ? "(" + cs + ")" : cs) + " " + mono;
    if (first)
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

}  // namespace ellipt
