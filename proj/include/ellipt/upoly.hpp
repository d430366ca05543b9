#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "ellipt/errors.hpp"

namespace ellipt {

// Dense univariate polynomial over a field F, coefficients stored from the
// constant term upward with no trailing zeros (the zero polynomial is empty).
// F must provide is_zero(), +, -, *, / and construction from an integer.
template <class F>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const F& a) { return monomial(a, 0); }
  static UPoly monomial(const F& a, int deg) {
    if (a.is_zero()) return UPoly();
    std::vector<F> c(static_cast<std::size_t>(deg) + 1, F(0));
    c[deg] = a;
    UPoly p;
    p.c_ = std::move(c);
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<F>& coeffs() const { return c_; }
  const F& lead() const { return c_.back(); }
  F coeff(int i) const {
    if (i < 0 || i > degree()) return F(0);
    return c_[i];
  }
  // Index of the lowest nonzero coefficient; -1 for the zero polynomial.
  int low_order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    return -1;
  }
  bool is_monomial() const {
    return !c_.empty() && low_order() == degree();
  }
  bool is_one() const { return c_.size() == 1 && c_[0] == F(1); }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<F> c(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return UPoly(std::move(c));
  }
  UPoly scaled(const F& a) const {
    if (a.is_zero()) return UPoly();
    UPoly r = *this;
    for (auto& x : r.c_) x = x * a;
    r.trim();
    return r;
  }
  // Multiply by X^k, k may be negative as long as no nonzero term is lost.
  UPoly shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    if (k > 0) {
      std::vector<F> c(static_cast<std::size_t>(k), F(0));
      c.insert(c.end(), c_.begin(), c_.end());
      return UPoly(std::move(c));
    }
    if (low_order() < -k) throw NotDivisible("negative shift drops terms");
    return UPoly(std::vector<F>(c_.begin() - k, c_.end()));
  }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    UPoly r = *this;
    if (r.degree() < d.degree()) return {UPoly(), r};
    std::vector<F> q(static_cast<std::size_t>(r.degree() - d.degree()) + 1,
                     F(0));
    const F inv_lead = F(1) / d.lead();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      const int shift = r.degree() - d.degree();
      const F t = r.lead() * inv_lead;
      q[shift] = t;
      for (int i = 0; i <= d.degree(); ++i)
        r.c_[i + shift] = r.c_[i + shift] - t * d.c_[i];
      r.c_.pop_back();  // leading term cancels exactly
      r.trim();
    }
    return {UPoly(std::move(q)), r};
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    return scaled(F(1) / lead());
  }

  friend UPoly gcd(UPoly a, UPoly b) {
    if (a.is_monomial() || b.is_monomial()) {
      if (a.is_zero()) return b.monic();
      if (b.is_zero()) return a.monic();
      int k = std::min(a.low_order(), b.low_order());
      return monomial(F(1), k);
    }
    while (!b.is_zero()) {
      UPoly r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;
};

}  // namespace ellipt
