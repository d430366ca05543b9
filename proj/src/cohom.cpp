#include "ellipt/cohom.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace ellipt {

GeneratorBasis::GeneratorBasis(int generators, int top_degree, std::vector<std::string> names)
    : g_(generators), d_(top_degree), names_(std::move(names)) {
  if (g_ < 0 || d_ < 0) throw InvalidModel("generator count and top degree must be nonnegative");
  if (names_.empty())
    for (int i = 0; i < g_; ++i) names_.push_back("t" + std::to_string(i + 1));
  if (static_cast<int>(names_.size()) != g_) throw InvalidModel("generator name count mismatch");
  // Enumerate exponent vectors degree by degree, lexicographically within a degree.
  std::vector<int> e(g_, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == g_ - 1 || g_ == 0) {
      if (g_ > 0) e[pos] = left;
      if (g_ == 0 && left != 0) return;
      monomials_.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[pos] = a;
      rec(pos + 1, left - a);
    }
  };
  for (int k = 0; k <= d_; ++k) {
    begin_.push_back(static_cast<int>(monomials_.size()));
    if (g_ == 0 && k > 0) continue;
    rec(0, k);
  }
  begin_.push_back(static_cast<int>(monomials_.size()));
  for (const auto& m : monomials_) {
    int s = 0;
    for (int a : m) s += a;
    degree_.push_back(s);
  }
  const int n = size();
  std::map<std::vector<int>, int> idx;
  for (int i = 0; i < n; ++i) idx[monomials_[i]] = i;
  table_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (degree_[i] + degree_[j] > d_) continue;
      std::vector<int> p(g_);
      for (int k = 0; k < g_; ++k) p[k] = monomials_[i][k] + monomials_[j][k];
      table_[static_cast<std::size_t>(i) * n + j] = idx.at(p);
    }
}

int GeneratorBasis::index_of(const std::vector<int>& exps) const {
  if (static_cast<int>(exps.size()) != g_) throw InvalidModel("exponent vector has wrong length");
  int s = 0;
  for (int a : exps) {
    if (a < 0) throw InvalidModel("negative exponent");
    s += a;
  }
  if (s > d_) return -1;
  for (int i = begin_[s]; i < begin_[s + 1]; ++i)
    if (monomials_[i] == exps) return i;
  return -1;
}

std::string GeneratorBasis::monomial_name(int idx) const {
  std::string s;
  for (int k = 0; k < g_; ++k) {
    const int a = monomials_[idx][k];
    if (a == 0) continue;
    if (!s.empty()) s += " ";
    s += names_[k];
    if (a > 1) s += "^" + std::to_string(a);
  }
  return s.empty() ? "1" : s;
}

CohomClass::CohomClass(BasisPtr basis) : basis_(std::move(basis)) {}

CohomClass CohomClass::scalar(BasisPtr basis, const Scalar& s) {
  CohomClass c(std::move(basis));
  c.set_coeff(0, s);
  return c;
}

CohomClass CohomClass::monomial(BasisPtr basis, int idx, const Scalar& s) {
  CohomClass c(std::move(basis));
  if (idx >= 0) c.set_coeff(idx, s);
  return c;
}

CohomClass CohomClass::generator(BasisPtr basis, int i) {
  std::vector<int> e(basis->generators(), 0);
  e.at(i) = 1;
  const int idx = basis->index_of(e);
  return monomial(std::move(basis), idx, Scalar(1));
}

CohomClass CohomClass::linear(BasisPtr basis, const std::vector<Scalar>& coeffs) {
  if (static_cast<int>(coeffs.size()) != basis->generators())
    throw InvalidModel("linear form has " + std::to_string(coeffs.size()) + " coefficients, basis has " +
                       std::to_string(basis->generators()) + " generators");
  CohomClass c(basis);
  for (int i = 0; i < basis->generators(); ++i) {
    if (coeffs[i].is_zero()) continue;
    std::vector<int> e(basis->generators(), 0);
    e[i] = 1;
    const int idx = basis->index_of(e);
    if (idx >= 0) c.set_coeff(idx, coeffs[i]);
  }
  return c;
}

bool CohomClass::is_zero() const {
  for (const auto& s : even_)
    if (!s.is_zero()) return false;
  for (const auto& s : odd_)
    if (!s.is_zero()) return false;
  return true;
}

bool CohomClass::has_odd() const {
  for (const auto& s : odd_)
    if (!s.is_zero()) return true;
  return false;
}

void CohomClass::set_coeff(int idx, const Scalar& c) {
  if (even_.empty()) {
    if (c.is_zero()) return;
    even_.assign(basis_->size(), Scalar());
  }
  even_.at(idx) = c;
}

void CohomClass::set_odd_coeff(int idx, const Scalar& c) {
  if (odd_.empty()) {
    if (c.is_zero()) return;
    odd_.assign(basis_->size(), Scalar());
  }
  odd_.at(idx) = c;
}

CohomClass CohomClass::even_part() const {
  CohomClass r(basis_);
  r.even_ = even_;
  return r;
}

CohomClass CohomClass::odd_part() const {
  CohomClass r(basis_);
  r.odd_ = odd_;
  return r;
}

CohomClass CohomClass::times_sigma() const {
  if (has_odd()) throw SigmaSquared("sigma times a sigma-class");
  CohomClass r(basis_);
  r.odd_ = even_;
  return r;
}

CohomClass CohomClass::degree_part(int k) const {
  CohomClass r(basis_);
  if (!basis_ || k < 0 || k > basis_->top_degree()) return r;
  for (int i = basis_->degree_begin(k); i < basis_->degree_begin(k + 1); ++i) {
    r.set_coeff(i, coeff(i));
    r.set_odd_coeff(i, odd_coeff(i));
  }
  return r;
}

void CohomClass::check(const CohomClass& o) const {
  if (basis_ && o.basis_ && basis_ != o.basis_ && !(*basis_ == *o.basis_))
    throw MixedRing("classes over different generator bases");
}

void CoeffTraits<CohomClass>::check_same_ring(const CohomClass& a, const CohomClass& b) {
  if (a.basis() && b.basis() && a.basis() != b.basis() && !(*a.basis() == *b.basis()))
    throw MixedRing("class series over different generator bases");
}

CohomClass CohomClass::operator-() const {
  CohomClass r = *this;
  for (auto& s : r.even_) s = -s;
  for (auto& s : r.odd_) s = -s;
  return r;
}

namespace {

void add_into(std::vector<Scalar>& dst, const std::vector<Scalar>& src, int n) {
  if (src.empty()) return;
  if (dst.empty()) {
    dst = src;
    return;
  }
  for (int i = 0; i < n; ++i)
    if (!src[i].is_zero()) dst[i] += src[i];
}

void mul_into(const GeneratorBasis& b, std::vector<Scalar>& dst, const std::vector<Scalar>& x,
              const std::vector<Scalar>& y) {
  if (x.empty() || y.empty()) return;
  const int n = b.size();
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    const int di = b.degree(i);
    const int jend = b.degree_begin(b.top_degree() - di + 1);
    for (int j = 0; j < jend; ++j) {
      if (y[j].is_zero()) continue;
      if (dst.empty()) dst.assign(n, Scalar());
      dst[b.product(i, j)] += x[i] * y[j];
    }
  }
}

}  // namespace

CohomClass& CohomClass::operator+=(const CohomClass& o) {
  check(o);
  if (!basis_) {
    *this = o;
    return *this;
  }
  if (!o.basis_) return *this;
  add_into(even_, o.even_, basis_->size());
  add_into(odd_, o.odd_, basis_->size());
  return *this;
}

CohomClass& CohomClass::operator-=(const CohomClass& o) { return *this += -o; }

CohomClass operator*(const CohomClass& a, const CohomClass& b) {
  a.check(b);
  if (!a.basis_) return CohomClass(b.basis_);
  if (!b.basis_) return CohomClass(a.basis_);
  if (a.has_odd() && b.has_odd()) throw SigmaSquared("product of two sigma-classes");
  CohomClass r(a.basis_);
  const GeneratorBasis& bs = *a.basis_;
  mul_into(bs, r.even_, a.even_, b.even_);
  mul_into(bs, r.odd_, a.odd_, b.even_);
  mul_into(bs, r.odd_, a.even_, b.odd_);
  return r;
}

CohomClass CohomClass::scaled(const Scalar& s) const {
  if (s.is_zero()) return CohomClass(basis_);
  CohomClass r = *this;
  for (auto& x : r.even_) x *= s;
  for (auto& x : r.odd_) x *= s;
  return r;
}

bool operator==(const CohomClass& a, const CohomClass& b) {
  const int n = a.basis_ ? a.basis_->size() : (b.basis_ ? b.basis_->size() : 0);
  for (int i = 0; i < n; ++i)
    if (a.coeff(i) != b.coeff(i) || a.odd_coeff(i) != b.odd_coeff(i)) return false;
  return true;
}

CohomClass CohomClass::apply_series(const std::vector<Scalar>& coeffs) const {
  if (!constant_term().is_zero()) throw NonNilpotentArgument("series argument has a constant term");
  CohomClass r(basis_);
  if (coeffs.empty()) return r;
  r = scalar(basis_, coeffs[0]);
  CohomClass p = scalar(basis_, Scalar(1));
  const int top = basis_->top_degree();
  for (int k = 1; k <= top && k < static_cast<int>(coeffs.size()); ++k) {
    p = p * (*this);
    if (p.is_zero()) break;
    if (!coeffs[k].is_zero()) r += p.scaled(coeffs[k]);
  }
  return r;
}

CohomClass CohomClass::exp() const {
  std::vector<Scalar> c{Scalar(1)};
  for (int k = 1; k <= basis_->top_degree(); ++k) c.push_back(c.back() * Scalar::rational(1, k));
  return apply_series(c);
}

CohomClass CohomClass::inverse() const {
  const Scalar a0 = constant_term();
  if (a0.is_zero()) throw NonInvertibleLeadingTerm("class with zero constant term is not a unit");
  // (a0 (1 + n))^{-1} = a0^{-1} sum (-n)^k; the sigma part is nilpotent too.
  CohomClass n = scaled(a0.inverse());
  n.set_coeff(0, Scalar());
  const int top = basis_->top_degree() + 1;
  std::vector<Scalar> c;
  for (int k = 0; k <= top; ++k) c.push_back(Scalar(k % 2 ? -1 : 1));
  // apply_series truncates at the even top degree; the sigma part needs one
  // more step, handled by splitting n = ne + sigma no.
  CohomClass ne = n.even_part(), no = n.odd_part();
  CohomClass inv_e = ne.apply_series(c);
  CohomClass r = inv_e - inv_e * inv_e * no;
  return r.scaled(a0.inverse());
}

std::string CohomClass::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const std::vector<Scalar>& v, bool sigma) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << v[i].str() << ")";
      const std::string m = basis_->monomial_name(static_cast<int>(i));
      if (m != "1") os << " " << m;
      if (sigma) os << " sigma";
    }
  };
  emit(even_, false);
  emit(odd_, true);
  return os.str();
}

ClassSeries lift(const QYSeries<Scalar>& s, const BasisPtr& basis) {
  return s.map_coeffs([&](const Scalar& c) { return CohomClass::scalar(basis, c); });
}

ClassSeries times_class(const ClassSeries& s, const CohomClass& c) {
  ClassSeries r(s.order());
  for (const auto& [k, a] : s.terms())
    r.add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second), a * c);
  return r;
}

}  // namespace ellipt
