#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ellipt/errors.hpp"
#include "ellipt/exponents.hpp"
#include "ellipt/scalar.hpp"

namespace ellipt {

// Coefficient-ring hooks used by QYSeries. Specialized for every ring that
// can sit in a series: Scalar here, CohomClass and RationalY in their headers.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Scalar> {
  static Scalar one_like(const Scalar&) { return Scalar(1); }
  static Scalar zero_like(const Scalar&) { return Scalar(); }
  static void check_same_ring(const Scalar&, const Scalar&) {}
  static bool is_invertible(const Scalar& c) { return !c.is_zero(); }
  static Scalar inverse(const Scalar& c) { return c.inverse(); }
  static Scalar from_scalar(const Scalar&, const Scalar& s) { return s; }
};

// Validity order of a series that is known exactly (a Laurent polynomial).
inline constexpr int kExactOrder24 = 1 << 28;
inline constexpr QExp kExact = QExp::from_24ths(kExactOrder24);

inline QExp order_add(QExp a, QExp b) {
  if (a.n24 >= kExactOrder24 || b.n24 >= kExactOrder24) return kExact;
  const long s = static_cast<long>(a.n24) + b.n24;
  return s >= kExactOrder24 ? kExact : QExp::from_24ths(static_cast<int>(s));
}

// Truncated formal series sum c_{a,b} q^a y^b with a in (1/24)Z, b in (1/2)Z.
// Every term with q-exponent <= order() is known; nothing beyond it is
// stored. Products and inverses propagate the validity order so the result
// never claims coefficients its inputs could not determine.
template <class C>
class QYSeries {
 public:
  using Key = std::pair<int, int>;  // (24 * q-exponent, 2 * y-exponent)
  using Map = std::map<Key, C>;

  QYSeries() : order_(kExact) {}
  explicit QYSeries(QExp order) : order_(order) {}

  static QYSeries monomial(const C& c, QExp q = QExp(), YExp y = YExp(),
                           QExp order = kExact) {
    QYSeries s(order);
    s.add_term(q, y, c);
    return s;
  }

  QExp order() const { return order_; }
  bool is_exact() const { return order_.n24 >= kExactOrder24; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Adds c q^q y^y; terms beyond the validity order are dropped.
  void add_term(QExp q, YExp y, const C& c) {
    if (q > order_ || c.is_zero()) return;
    Key k{q.n24, y.n2};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const C* find(QExp q, YExp y) const {
    auto it = terms_.find(Key{q.n24, y.n2});
    return it == terms_.end() ? nullptr : &it->second;
  }

  std::optional<QExp> min_q() const {
    if (terms_.empty()) return std::nullopt;
    return QExp::from_24ths(terms_.begin()->first.first);
  }
  std::optional<QExp> max_q() const {
    if (terms_.empty()) return std::nullopt;
    return QExp::from_24ths(terms_.rbegin()->first.first);
  }

  // Distinct q-exponents that carry a term, ascending.
  std::vector<QExp> q_levels() const {
    std::vector<QExp> out;
    for (const auto& [k, c] : terms_)
      if (out.empty() || out.back().n24 != k.first)
        out.push_back(QExp::from_24ths(k.first));
    return out;
  }

  // The y-Laurent polynomial at a fixed q-exponent.
  std::vector<std::pair<YExp, C>> at_q(QExp q) const {
    std::vector<std::pair<YExp, C>> out;
    for (auto it = terms_.lower_bound(Key{q.n24, std::numeric_limits<int>::min()});
         it != terms_.end() && it->first.first == q.n24; ++it)
      out.emplace_back(YExp::from_halves(it->first.second), it->second);
    return out;
  }

  bool y_free() const {
    for (const auto& [k, c] : terms_)
      if (k.second != 0) return false;
    return true;
  }

  QYSeries truncated(QExp m) const {
    QYSeries r(std::min(order_, m));
    for (const auto& [k, c] : terms_)
      if (k.first <= r.order_.n24) r.terms_.emplace(k, c);
    return r;
  }

  void set_order(QExp m) {
    order_ = m;
    terms_.erase(terms_.upper_bound(Key{m.n24, std::numeric_limits<int>::max()}),
                 terms_.end());
  }

  QYSeries operator-() const {
    QYSeries r(order_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  QYSeries& operator+=(const QYSeries& o) {
    check_ring(o);
    set_order(std::min(order_, o.order_));
    for (const auto& [k, c] : o.terms_)
      add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second), c);
    return *this;
  }
  QYSeries& operator-=(const QYSeries& o) { return *this += -o; }
  friend QYSeries operator+(QYSeries a, const QYSeries& b) { return a += b; }
  friend QYSeries operator-(QYSeries a, const QYSeries& b) { return a -= b; }

  // Multiply every coefficient by c (on the right).
  QYSeries scaled(const C& c) const {
    QYSeries r(order_);
    for (const auto& [k, a] : terms_) {
      C p = a * c;
      if (!p.is_zero()) r.terms_.emplace(k, std::move(p));
    }
    return r;
  }

  // Multiply by q^a y^b; the validity order moves with the q-shift.
  QYSeries shifted(QExp a, YExp b) const {
    QYSeries r(is_exact() ? kExact : order_ + a);
    for (const auto& [k, c] : terms_)
      r.terms_.emplace(Key{k.first + a.n24, k.second + b.n2}, c);
    return r;
  }

  // Apply f to every coefficient, producing a series over f's result ring.
  template <class F>
  auto map_coeffs(F&& f) const -> QYSeries<decltype(f(std::declval<const C&>()))> {
    using D = decltype(f(std::declval<const C&>()));
    QYSeries<D> r(order_);
    for (const auto& [k, c] : terms_)
      r.add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second), f(c));
    return r;
  }

  // Terms of equal exponents agree for all q-exponents <= m.
  bool agrees_with(const QYSeries& o, QExp m) const {
    auto a = truncated(m), b = o.truncated(m);
    return a.terms_ == b.terms_;
  }

  friend bool operator==(const QYSeries& a, const QYSeries& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const QYSeries& a, const QYSeries& b) { return !(a == b); }

  void check_ring(const QYSeries& o) const {
    if (!terms_.empty() && !o.terms_.empty())
      CoeffTraits<C>::check_same_ring(terms_.begin()->second, o.terms_.begin()->second);
  }

  // Representative coefficient for building one/zero in the same ring.
  const C* any_coeff() const {
    return terms_.empty() ? nullptr : &terms_.begin()->second;
  }

 private:
  QExp order_;
  Map terms_;
};

// Validity order of a*b before the caller's cap.
template <class C>
QExp product_order(const QYSeries<C>& a, const QYSeries<C>& b) {
  const QExp amin = a.min_q().value_or(kExact);
  const QExp bmin = b.min_q().value_or(kExact);
  return std::min(order_add(a.order(), bmin), order_add(b.order(), amin));
}

// Product truncated at min(n, what the inputs determine).
template <class C>
QYSeries<C> series_mul(const QYSeries<C>& a, const QYSeries<C>& b, QExp n = kExact) {
  a.check_ring(b);
  const QExp ord = std::min(n, product_order(a, b));
  QYSeries<C> r(ord);
  if (a.is_zero() || b.is_zero()) return r;
  std::map<std::pair<int, int>, C> acc;
  for (const auto& [ka, ca] : a.terms()) {
    if (ka.first + b.terms().begin()->first.first > ord.n24) break;
    for (const auto& [kb, cb] : b.terms()) {
      if (ka.first + kb.first > ord.n24) break;
      std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
      auto it = acc.find(k);
      if (it == acc.end())
        acc.emplace(k, ca * cb);
      else
        it->second = it->second + ca * cb;
    }
  }
  for (auto& [k, c] : acc)
    r.add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second), c);
  return r;
}

template <class C>
QYSeries<C> operator*(const QYSeries<C>& a, const QYSeries<C>& b) {
  return series_mul(a, b);
}

// Multiplicative inverse to order min(n, a.order() - 2 alpha), alpha being
// the lowest q-exponent of a. The q^alpha part must be one invertible
// monomial c y^beta.
template <class C>
QYSeries<C> series_invert(const QYSeries<C>& a, QExp n) {
  if (a.is_zero()) throw NonInvertibleLeadingTerm("series is zero to its order");
  const QExp alpha = *a.min_q();
  const auto lead = a.at_q(alpha);
  if (lead.size() != 1)
    throw NonInvertibleLeadingTerm("lowest q-order part is not a single y-monomial");
  const YExp beta = lead[0].first;
  const C& c = lead[0].second;
  if (!CoeffTraits<C>::is_invertible(c))
    throw NonInvertibleLeadingTerm("leading coefficient is not invertible");
  const C cinv = CoeffTraits<C>::inverse(c);

  // For a single exact monomial the inverse is exact.
  QExp target = std::min(order_add(n, alpha), a.is_exact() ? kExact : a.order() - alpha);
  if (target.n24 >= kExactOrder24) {
    if (a.size() == 1) return QYSeries<C>::monomial(cinv, -alpha, -beta);
    throw NonInvertibleLeadingTerm("inverse of an exact non-monomial needs a finite order");
  }

  // u = a c^{-1} q^{-alpha} y^{-beta} = 1 + r, with r supported in q > 0.
  std::map<int, std::vector<std::pair<int, C>>> r;  // q-level -> (y, coeff)
  for (const auto& [k, ck] : a.terms()) {
    if (k.first == alpha.n24) continue;
    const int q = k.first - alpha.n24;
    if (q > target.n24) break;
    r[q].emplace_back(k.second - beta.n2, ck * cinv);
  }

  // Levels of the inverse are the nonnegative combinations of r's levels.
  std::set<int> levels{0};
  for (auto it = levels.begin(); it != levels.end(); ++it)
    for (const auto& [s, terms] : r) {
      if (*it + s > target.n24) break;
      levels.insert(*it + s);
    }

  const C one = CoeffTraits<C>::one_like(c);
  std::map<int, std::map<int, C>> b;  // q-level -> y -> coeff of (1+r)^{-1}
  b[0].emplace(0, one);
  for (int lvl : levels) {
    if (lvl == 0) continue;
    std::map<int, C> acc;
    for (const auto& [s, rs] : r) {
      if (s > lvl) break;
      auto bi = b.find(lvl - s);
      if (bi == b.end()) continue;
      for (const auto& [ry, rc] : rs)
        for (const auto& [by, bc] : bi->second) {
          auto it = acc.find(ry + by);
          if (it == acc.end())
            acc.emplace(ry + by, -(rc * bc));
          else
            it->second = it->second - rc * bc;
        }
    }
    std::map<int, C> clean;
    for (auto& [y, v] : acc)
      if (!v.is_zero()) clean.emplace(y, std::move(v));
    if (!clean.empty()) b.emplace(lvl, std::move(clean));
  }

  QYSeries<C> out(target - alpha);
  for (const auto& [lvl, ys] : b)
    for (const auto& [y, v] : ys)
      out.add_term(QExp::from_24ths(lvl - alpha.n24), YExp::from_halves(y - beta.n2),
                   cinv * v);
  return out;
}

// a^k truncated at n; negative k goes through series_invert.
template <class C>
QYSeries<C> series_pow(const QYSeries<C>& a, int k, QExp n) {
  if (k < 0) return series_pow(series_invert(a, n), -k, n);
  const C* any = a.any_coeff();
  if (!any) {
    if (k == 0) throw NonInvertibleLeadingTerm("0^0 has no ring to live in");
    return QYSeries<C>(std::min(n, a.order()));
  }
  QYSeries<C> result = QYSeries<C>::monomial(CoeffTraits<C>::one_like(*any));
  QYSeries<C> base = a;
  while (k > 0) {
    if (k & 1) result = series_mul(result, base, n);
    k >>= 1;
    if (k) base = series_mul(base, base, n);
  }
  return result.truncated(n);
}

// The effect of tau -> tau + 1 on a Scalar series: q^a -> e^{2 pi i a} q^a.
// Only q-exponents in (1/4)Z have a root of unity inside Q(i).
QYSeries<Scalar> tau_plus_one(const QYSeries<Scalar>& a);

// Replace y by y q^k: q^a y^b -> q^{a + k b} y^b. Terms past a's order can
// land anywhere once their y-exponent is unknown, so the caller states the
// order up to which the shifted series is trusted.
QYSeries<Scalar> substitute_y_by_yq(const QYSeries<Scalar>& a, int k, QExp valid_to);

// Set y = 1 (sums over y at each q-level).
QYSeries<Scalar> at_y_one(const QYSeries<Scalar>& a);

// Render as "1 + 240 q + 2160 q^2 + O(q^3)"-style text. The O-term is the
// first lattice point past the validity order, omitted for exact series.
std::string to_string(const QYSeries<Scalar>& a);

}  // namespace ellipt
