#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ellipt/series.hpp"

namespace ellipt {

// Formal stand-in for H^{even}(M): polynomials in g degree-2 generators,
// truncated above total degree D (cohomological degree 2D). Monomials are
// enumerated once, ordered by total degree, with a multiplication table.
class GeneratorBasis {
 public:
  GeneratorBasis(int generators, int top_degree, std::vector<std::string> names = {});

  int generators() const { return g_; }
  int top_degree() const { return d_; }
  const std::vector<std::string>& names() const { return names_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  const std::vector<int>& exponents(int idx) const { return monomials_[idx]; }
  int degree(int idx) const { return degree_[idx]; }
  // Index of an exponent vector, -1 if its degree exceeds D.
  int index_of(const std::vector<int>& exps) const;
  // Index of the product monomial, -1 when it is truncated away.
  int product(int i, int j) const { return table_[static_cast<std::size_t>(i) * size() + j]; }
  // First index of each degree; degree_begin(D + 1) == size().
  int degree_begin(int k) const { return begin_[k]; }
  std::string monomial_name(int idx) const;

  friend bool operator==(const GeneratorBasis& a, const GeneratorBasis& b) {
    return a.g_ == b.g_ && a.d_ == b.d_;
  }

 private:
  int g_, d_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> monomials_;
  std::vector<int> degree_, begin_, table_;
};

using BasisPtr = std::shared_ptr<const GeneratorBasis>;

// Element even + sigma * odd, where sigma is a formal odd generator with
// sigma^2 = 0 (used only for transgressed classes). A product of two
// sigma-classes raises SigmaSquared.
class CohomClass {
 public:
  CohomClass() = default;
  explicit CohomClass(BasisPtr basis);

  static CohomClass scalar(BasisPtr basis, const Scalar& s);
  static CohomClass generator(BasisPtr basis, int i);
  // sum_k coeffs[k] * t_k.
  static CohomClass linear(BasisPtr basis, const std::vector<Scalar>& coeffs);
  static CohomClass monomial(BasisPtr basis, int idx, const Scalar& c);

  const BasisPtr& basis() const { return basis_; }
  bool is_zero() const;
  bool has_odd() const;
  const std::vector<Scalar>& even() const { return even_; }
  const std::vector<Scalar>& odd() const { return odd_; }
  Scalar coeff(int idx) const { return even_.empty() ? Scalar() : even_[idx]; }
  Scalar odd_coeff(int idx) const { return odd_.empty() ? Scalar() : odd_[idx]; }
  void set_coeff(int idx, const Scalar& c);
  void set_odd_coeff(int idx, const Scalar& c);

  // Parts by degree.
  CohomClass even_part() const;
  CohomClass odd_part() const;  // sigma * odd
  CohomClass degree_part(int k) const;  // even and odd components of degree k
  // sigma * this (the even part moves to the odd slot).
  CohomClass times_sigma() const;
  // The even degree-0 coefficient.
  Scalar constant_term() const { return coeff(0); }

  CohomClass operator-() const;
  CohomClass& operator+=(const CohomClass& o);
  CohomClass& operator-=(const CohomClass& o);
  friend CohomClass operator+(CohomClass a, const CohomClass& b) { return a += b; }
  friend CohomClass operator-(CohomClass a, const CohomClass& b) { return a -= b; }
  friend CohomClass operator*(const CohomClass& a, const CohomClass& b);
  CohomClass scaled(const Scalar& s) const;

  friend bool operator==(const CohomClass& a, const CohomClass& b);
  friend bool operator!=(const CohomClass& a, const CohomClass& b) { return !(a == b); }

  bool is_invertible() const { return !constant_term().is_zero(); }
  CohomClass inverse() const;
  // f(this) for f = sum coeffs[k] u^k; this must have no constant term.
  CohomClass apply_series(const std::vector<Scalar>& coeffs) const;
  CohomClass exp() const;

  std::string str() const;

 private:
  void check(const CohomClass& o) const;
  BasisPtr basis_;
  std::vector<Scalar> even_;  // size basis->size(), or empty when zero
  std::vector<Scalar> odd_;   // empty when zero
};

template <>
struct CoeffTraits<CohomClass> {
  static CohomClass one_like(const CohomClass& c) { return CohomClass::scalar(c.basis(), Scalar(1)); }
  static CohomClass zero_like(const CohomClass& c) { return CohomClass(c.basis()); }
  static void check_same_ring(const CohomClass& a, const CohomClass& b);
  static bool is_invertible(const CohomClass& c) { return c.is_invertible(); }
  static CohomClass inverse(const CohomClass& c) { return c.inverse(); }
};

using ClassSeries = QYSeries<CohomClass>;

// Lift a Scalar series to class coefficients (times the unit class).
ClassSeries lift(const QYSeries<Scalar>& s, const BasisPtr& basis);
// Multiply every coefficient of a class series by a class.
ClassSeries times_class(const ClassSeries& s, const CohomClass& c);

}  // namespace ellipt
