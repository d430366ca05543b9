#include "ellipt/oddtwist.hpp"

#include <algorithm>
#include <sstream>

namespace ellipt {

std::string TwistAtom::str() const {
  switch (kind) {
    case Delta: return "Delta(E)";
    case Lambda: return k == 1 ? "E~_C" : "L^" + std::to_string(k) + "(E~_C)";
    case Sym: return k == 1 ? "E~_C" : "S^" + std::to_string(k) + "(E~_C)";
  }
  return "?";
}

BundleExpression::BundleExpression(long c) {
  if (c != 0) terms_[{}] = c;
}

BundleExpression BundleExpression::atom(TwistAtom a) {
  if ((a.kind == TwistAtom::Lambda || a.kind == TwistAtom::Sym) && a.k == 0) return BundleExpression(1);
  // S^1 and Lambda^1 are the same bundle; store it once.
  if (a.kind == TwistAtom::Sym && a.k == 1) a.kind = TwistAtom::Lambda;
  BundleExpression e;
  e.terms_[{a}] = 1;
  return e;
}

BundleExpression BundleExpression::lambda(int k) { return atom({TwistAtom::Lambda, k}); }
BundleExpression BundleExpression::sym(int k) { return atom({TwistAtom::Sym, k}); }

void BundleExpression::add(const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BundleExpression BundleExpression::operator-() const {
  BundleExpression r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

BundleExpression& BundleExpression::operator+=(const BundleExpression& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

BundleExpression operator*(const BundleExpression& a, const BundleExpression& b) {
  BundleExpression r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      BundleExpression::Monomial m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      r.add(m, ca * cb);
    }
  return r;
}

BundleExpression BundleExpression::scaled(const mpz_class& c) const {
  BundleExpression r;
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

namespace {

std::string monomial_str(const BundleExpression::Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += " (x) ";
    s += m[i].str();
  }
  return s;
}

std::string sum_str(const std::vector<std::pair<BundleExpression::Monomial, mpz_class>>& ts) {
  std::string s;
  bool first = true;
  for (const auto& [m, c] : ts) {
    mpz_class a = abs(c);
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    first = false;
    const std::string body = monomial_str(m);
    if (m.empty())
      s += a.get_str();
    else if (a == 1)
      s += body;
    else
      s += a.get_str() + " " + body;
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::string BundleExpression::str() const {
  if (terms_.empty()) return "0";
  // Factor out Delta(E) when every monomial carries exactly one.
  bool all_delta = true;
  for (const auto& [m, c] : terms_)
    all_delta &= std::count_if(m.begin(), m.end(), [](const TwistAtom& a) { return a.kind == TwistAtom::Delta; }) == 1;
  std::vector<std::pair<Monomial, mpz_class>> ts;
  // Order: constant first, then by total atom weight.
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    if (all_delta) mm.erase(std::find_if(mm.begin(), mm.end(), [](const TwistAtom& a) { return a.kind == TwistAtom::Delta; }));
    ts.emplace_back(mm, c);
  }
  auto weight = [](const Monomial& m) {
    int w = 0;
    for (const auto& a : m) w += a.k;
    return w;
  };
  std::stable_sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
    if (weight(a.first) != weight(b.first)) return weight(a.first) < weight(b.first);
    return a.first.size() < b.first.size();
  });
  const std::string body = sum_str(ts);
  if (!all_delta) return body;
  if (ts.size() == 1 && ts[0].first.empty() && ts[0].second == 1) return "Delta(E)";
  if (ts.size() == 1 && ts[0].first.size() <= 1 && abs(ts[0].second) == 1)
    return (ts[0].second < 0 ? "-" : "") + std::string("Delta(E)") +
           (ts[0].first.empty() ? "" : " (x) " + monomial_str(ts[0].first));
  return "Delta(E) (x) (" + body + ")";
}

std::string twist_name(TwistKind k) {
  switch (k) {
    case TwistKind::Q1: return "Q1";
    case TwistKind::Q2: return "Q2";
    case TwistKind::Q3: return "Q3";
    case TwistKind::Combined: return "Q";
  }
  return "?";
}

TwistKind parse_twist(const std::string& s) {
  if (s == "1" || s == "Q1") return TwistKind::Q1;
  if (s == "2" || s == "Q2") return TwistKind::Q2;
  if (s == "3" || s == "Q3") return TwistKind::Q3;
  if (s == "combined" || s == "Q" || s == "0") return TwistKind::Combined;
  throw ParseError("unknown twist '" + s + "' (expected 1, 2, 3 or combined)");
}

namespace {

// Lambda_{c q^a}(E~_C) = sum_k c^k q^{k a} Lambda^k(E~_C), truncated at n.
ExprSeries lambda_factor(long c, QExp a, QExp n) {
  ExprSeries f(n);
  mpz_class ck = 1;
  for (int k = 0; (k * a).n24 <= n.n24; ++k) {
    f.add_term(k * a, YExp(), BundleExpression::lambda(k).scaled(ck));
    ck *= c;
  }
  return f;
}

ExprSeries product_of(long c, QExp first, QExp n) {
  ExprSeries r = ExprSeries::monomial(BundleExpression(1));
  for (QExp a = first; a.n24 <= n.n24; a = a + QExp::integer(1)) r = series_mul(r, lambda_factor(c, a, n), n);
  return r.truncated(n);
}

}  // namespace

ExprSeries q_twist_expand(TwistKind k, QExp n) {
  const QExp half = QExp::rational(1, 2);
  switch (k) {
    case TwistKind::Q1:
      return product_of(1, QExp::integer(1), n).scaled(BundleExpression::delta());
    case TwistKind::Q2: return product_of(-1, half, n);
    case TwistKind::Q3: return product_of(1, half, n);
    case TwistKind::Combined:
      return series_mul(series_mul(q_twist_expand(TwistKind::Q1, n), q_twist_expand(TwistKind::Q2, n), n),
                        q_twist_expand(TwistKind::Q3, n), n);
  }
  throw ParseError("unknown twist kind");
}

namespace {

using TSeries = std::vector<CohomClass>;  // coefficients of t^k

// exp(G) for G = sum_{k>=1} g_k t^k: k f_k = sum_j j g_j f_{k-j}.
TSeries t_exp(const TSeries& g, const BasisPtr& b) {
  const int K = static_cast<int>(g.size()) - 1;
  TSeries f(K + 1, CohomClass(b));
  f[0] = CohomClass::scalar(b, Scalar(1));
  for (int k = 1; k <= K; ++k) {
    CohomClass s(b);
    for (int j = 1; j <= k; ++j) s += (g[j] * f[k - j]).scaled(Scalar(j));
    f[k] = s.scaled(Scalar::rational(1, k));
  }
  return f;
}

TSeries t_mul(const TSeries& a, const TSeries& b, const BasisPtr& basis) {
  const int K = static_cast<int>(a.size()) - 1;
  TSeries r(K + 1, CohomClass(basis));
  for (int i = 0; i <= K; ++i)
    for (int j = 0; i + j <= K; ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Characters and transgressions of all atoms up to index K.
class AtomTable {
 public:
  AtomTable(const TwistContext& ctx, int K) : ctx_(ctx) {
    const auto& b = ctx.basis;
    TSeries gl(K + 1, CohomClass(b)), gs(K + 1, CohomClass(b)), dl(K + 1, CohomClass(b)),
        ds(K + 1, CohomClass(b));
    for (int m = 1; m <= K; ++m) {
      const CohomClass p = ctx.ch_psi(m) - CohomClass::scalar(b, Scalar(ctx.rank));
      const CohomClass c = ctx.cs_psi(m);
      const Scalar inv = Scalar::rational(1, m);
      const Scalar sgn = Scalar(m % 2 ? 1 : -1);
      gl[m] = p.scaled(sgn * inv);
      dl[m] = c.scaled(sgn * inv);
      gs[m] = p.scaled(inv);
      ds[m] = c.scaled(inv);
    }
    lam_ch_ = t_exp(gl, b);
    sym_ch_ = t_exp(gs, b);
    lam_cs_ = t_mul(lam_ch_, dl, b);
    sym_cs_ = t_mul(sym_ch_, ds, b);
  }

  const CohomClass& ch(const TwistAtom& a) const {
    switch (a.kind) {
      case TwistAtom::Delta: return ctx_.ch_delta;
      case TwistAtom::Lambda: return lam_ch_.at(a.k);
      case TwistAtom::Sym: return sym_ch_.at(a.k);
    }
    throw InvalidModel("bad atom");
  }
  const CohomClass& cs(const TwistAtom& a) const {
    switch (a.kind) {
      case TwistAtom::Delta: return ctx_.cs_delta;
      case TwistAtom::Lambda: return lam_cs_.at(a.k);
      case TwistAtom::Sym: return sym_cs_.at(a.k);
    }
    throw InvalidModel("bad atom");
  }

  CohomClass ch_expr(const BundleExpression& e) const {
    const auto& b = ctx_.basis;
    CohomClass r(b);
    for (const auto& [m, c] : e.terms()) {
      CohomClass p = CohomClass::scalar(b, Scalar(mpq_class(c)));
      for (const auto& a : m) p = p * ch(a);
      r += p;
    }
    return r;
  }

  CohomClass cs_expr(const BundleExpression& e) const {
    const auto& b = ctx_.basis;
    CohomClass r(b);
    for (const auto& [m, c] : e.terms()) {
      const std::size_t n = m.size();
      if (n == 0) continue;
      // prefix[i] = ch(a_0..a_{i-1}), suffix[i] = ch(a_i..a_{n-1}).
      std::vector<CohomClass> prefix(n + 1, CohomClass::scalar(b, Scalar(1))), suffix = prefix;
      for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * ch(m[i]);
      for (std::size_t i = n; i-- > 0;) suffix[i] = ch(m[i]) * suffix[i + 1];
      CohomClass s(b);
      for (std::size_t i = 0; i < n; ++i) s += prefix[i] * cs(m[i]) * suffix[i + 1];
      r += s.scaled(Scalar(mpq_class(c)));
    }
    return r;
  }

 private:
  const TwistContext& ctx_;
  TSeries lam_ch_, sym_ch_, lam_cs_, sym_cs_;
};

int max_atom_index(const BundleExpression& e) {
  int K = 0;
  for (const auto& [m, c] : e.terms())
    for (const auto& a : m) K = std::max(K, a.k);
  return K;
}

}  // namespace

CohomClass delta_transgression(const CohomClass& ch_delta, const std::map<int, CohomClass>& c) {
  const BasisPtr& b = ch_delta.basis();
  int jmax = 0;
  for (const auto& [j, cj] : c)
    if (!cj.is_zero()) jmax = std::max(jmax, j);
  if (jmax < 2) return CohomClass(b);
  // log cosh x through x^{jmax}.
  const int n = jmax;
  std::vector<Scalar> ch(n + 1), lg(n + 1);
  Scalar f(1);
  for (int k = 0; k <= n; ++k) {
    if (k) f = f * Scalar(k);
    if (k % 2 == 0) ch[k] = Scalar(1) / f;
  }
  for (int k = 1; k <= n; ++k) {
    Scalar s = ch[k] * Scalar(k);
    for (int j = 1; j < k; ++j) s -= lg[j] * ch[k - j] * Scalar(j);
    lg[k] = s * Scalar::rational(1, k);
  }
  CohomClass sum(b);
  for (const auto& [j, cj] : c) {
    if (j % 2 || cj.is_zero()) continue;
    Scalar fact(1);
    for (int i = 2; i <= j; ++i) fact = fact * Scalar(i);
    sum += cj.scaled(lg[j] * fact / Scalar(2).pow(j + 1));
  }
  return ch_delta * sum;
}

TwistContext trivial_context(const ManifoldModel& m) {
  if (!m.e) throw MissingBundle("model has no transgression data for E");
  const auto& e = *m.e;
  TwistContext ctx;
  ctx.basis = m.basis;
  ctx.rank = e.rank;
  std::map<int, CohomClass> c;
  for (const auto& [j, p] : e.components)
    if (!p.is_zero()) c[j] = p.times_sigma();
  const BasisPtr b = m.basis;
  const int N = e.rank;
  ctx.ch_psi = [b, N](int) { return CohomClass::scalar(b, Scalar(N)); };
  ctx.cs_psi = [b, c](int mm) {
    CohomClass s(b);
    for (const auto& [j, cj] : c) s += cj.scaled(Scalar(mm).pow(j));
    return s;
  };
  ctx.ch_delta = CohomClass::scalar(b, Scalar(2).pow(N / 2));
  ctx.cs_delta = e.delta_override ? *e.delta_override : delta_transgression(ctx.ch_delta, c);
  return ctx;
}

CohomClass cs_ch(const BundleExpression& e, const TwistContext& ctx) {
  return AtomTable(ctx, max_atom_index(e)).cs_expr(e);
}

CohomClass ch_expr(const BundleExpression& e, const TwistContext& ctx) {
  return AtomTable(ctx, max_atom_index(e)).ch_expr(e);
}

void require_twist_hypotheses(const ManifoldModel& m) {
  if (!m.e) throw MissingBundle("model has no transgression data for E");
  auto it = m.e->components.find(2);
  if (it != m.e->components.end() && !it->second.is_zero())
    throw HypothesisNotMet("c3(E_C, g, d) = 0 fails: the degree-3 transgression is nonzero");
}

ClassSeries cs_q_series(TwistKind k, const TwistContext& ctx, QExp n) {
  const ExprSeries ex = q_twist_expand(k, n);
  int K = 0;
  for (const auto& [key, e] : ex.terms()) K = std::max(K, max_atom_index(e));
  const AtomTable table(ctx, K);
  return ex.map_coeffs([&](const BundleExpression& e) { return table.cs_expr(e); });
}

ClassSeries cs_q_series(TwistKind k, const ManifoldModel& m, QExp n) {
  require_twist_hypotheses(m);
  return cs_q_series(k, trivial_context(m), n);
}

}  // namespace ellipt
