#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ellipt/charclass.hpp"

namespace ellipt {

// Symbols of the twist algebra: Delta(E), Lambda^k(E~_C), S^k(E~_C), where
// E~_C = E_C - N is the reduced complexification.
struct TwistAtom {
  enum Kind { Delta, Lambda, Sym } kind = Delta;
  int k = 0;
  friend auto operator<=>(const TwistAtom&, const TwistAtom&) = default;
  std::string str() const;
};

// Formal integer polynomial in twist atoms; a monomial is a sorted list of
// atoms read as a tensor product.
class BundleExpression {
 public:
  using Monomial = std::vector<TwistAtom>;

  BundleExpression() = default;
  explicit BundleExpression(long c);
  static BundleExpression atom(TwistAtom a);
  static BundleExpression delta() { return atom({TwistAtom::Delta, 0}); }
  static BundleExpression lambda(int k);
  static BundleExpression sym(int k);

  const std::map<Monomial, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BundleExpression operator-() const;
  BundleExpression& operator+=(const BundleExpression& o);
  friend BundleExpression operator+(BundleExpression a, const BundleExpression& b) { return a += b; }
  friend BundleExpression operator-(BundleExpression a, const BundleExpression& b) { return a += -b; }
  friend BundleExpression operator*(const BundleExpression& a, const BundleExpression& b);
  BundleExpression scaled(const mpz_class& c) const;
  friend bool operator==(const BundleExpression&, const BundleExpression&) = default;

  // "Delta(E) (x) (E~_C + 2 L^2(E~_C) - E~_C (x) E~_C)" style.
  std::string str() const;

 private:
  void add(const Monomial& m, const mpz_class& c);
  std::map<Monomial, mpz_class> terms_;
};

template <>
struct CoeffTraits<BundleExpression> {
  static BundleExpression one_like(const BundleExpression&) { return BundleExpression(1); }
  static BundleExpression zero_like(const BundleExpression&) { return BundleExpression(); }
  static void check_same_ring(const BundleExpression&, const BundleExpression&) {}
  static bool is_invertible(const BundleExpression& e) {
    return e.terms().size() == 1 && e.terms().begin()->first.empty() &&
           abs(e.terms().begin()->second) == 1;
  }
  static BundleExpression inverse(const BundleExpression& e) { return e; }
};

using ExprSeries = QYSeries<BundleExpression>;

// Which twist: Q_1, Q_2, Q_3 or the combined Q = Q_1 (x) Q_2 (x) Q_3.
enum class TwistKind { Q1 = 1, Q2 = 2, Q3 = 3, Combined = 0 };
std::string twist_name(TwistKind k);
TwistKind parse_twist(const std::string& s);

//   Q_1 = Delta(E) (x) prod_n Lambda_{q^n}(E~_C)
//   Q_2 = prod_n Lambda_{-q^{n-1/2}}(E~_C)
//   Q_3 = prod_n Lambda_{q^{n-1/2}}(E~_C)
// truncated at q^n.
ExprSeries q_twist_expand(TwistKind k, QExp n);

// Characters and transgressions of the Adams operations psi^m(E_C) and of
// Delta(E). cs classes are sigma-classes.
struct TwistContext {
  BasisPtr basis;
  int rank = 0;  // N
  std::function<CohomClass(int)> ch_psi;  // ch(psi^m E_C)
  std::function<CohomClass(int)> cs_psi;  // transgression of ch(psi^m E_C)
  CohomClass ch_delta, cs_delta;
};

// cs(Delta) = ch(Delta) * sum_k beta_k (2k)! / 2^{2k+1} * c_{2k}, with
// log cosh x = sum_k beta_k x^{2k} and c_j the sigma-classes of the
// transgressed degree-2j character components.
CohomClass delta_transgression(const CohomClass& ch_delta, const std::map<int, CohomClass>& c);

// The context of the model's trivial bundle E with automorphism g: every
// character is the rank, cs(psi^m E_C) = sum_j m^j c_j, and cs(Delta) is
// derived as above unless overridden.
TwistContext trivial_context(const ManifoldModel& m);

// Transgression of an expression via the derivation rule
// cs(A (x) B) = cs(A) ch(B) + ch(A) cs(B), with Lambda_t and S_t rewritten in
// Adams operations by Newton's identities.
CohomClass cs_ch(const BundleExpression& e, const TwistContext& ctx);
// Character of an expression in the same context.
CohomClass ch_expr(const BundleExpression& e, const TwistContext& ctx);

// Raises HypothesisNotMet unless the model's degree-3 transgression
// c3(E_C, g, d) vanishes; MissingBundle when the model has no E.
void require_twist_hypotheses(const ManifoldModel& m);

// ch(Q_k(E), g^{Q_k(E)}, d, tau) to order n, as a sigma-class series.
ClassSeries cs_q_series(TwistKind k, const TwistContext& ctx, QExp n);
ClassSeries cs_q_series(TwistKind k, const ManifoldModel& m, QExp n);

}  // namespace ellipt
