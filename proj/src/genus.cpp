#include "ellipt/genus.hpp"

#include <algorithm>

#include "ellipt/modforms.hpp"
#include "ellipt/transform.hpp"

namespace ellipt {

GenusPath parse_path(const std::string& s) {
  if (s == "bundle") return GenusPath::Bundle;
  if (s == "theta") return GenusPath::Theta;
  if (s == "both") return GenusPath::Both;
  throw ParseError("unknown path '" + s + "' (expected bundle, theta or both)");
}

std::string path_name(GenusPath p) {
  switch (p) {
    case GenusPath::Bundle: return "bundle";
    case GenusPath::Theta: return "theta";
    case GenusPath::Both: return "both";
  }
  return "?";
}

std::string family_name(GenusFamily f, int index) {
  switch (f) {
    case GenusFamily::EllOdd: return "Ell";
    case GenusFamily::EllEven: return "Ell_" + std::to_string(index);
    case GenusFamily::EllOddLevel2: return "Ell_" + std::to_string(index) + ",g";
    case GenusFamily::Phi: return index == 1 ? "Phi_L" : index == 2 ? "Phi_W" : "Phi_W*";
    case GenusFamily::PhiOdd: return index == 1 ? "Phi_L,g" : index == 2 ? "Phi_W,g" : "Phi_W*,g";
  }
  return "?";
}

namespace {

const QExp kHalf = QExp::rational(1, 2);

// Working order for intermediate theta products: quotients by theta lose
// q^{1/4} each and prefactors shift by q^{k/8}, so carry a margin.
QExp working_order(QExp n, int factors) { return n + QExp::from_24ths(3 * factors + 24); }

ClassSeries one_series(const BasisPtr& b) { return ClassSeries::monomial(CohomClass::scalar(b, Scalar(1))); }

ClassSeries mul(const ClassSeries& a, const ClassSeries& b, QExp n) { return series_mul(a, b, n); }

BundleModel w_of(const ManifoldModel& m) { return m.w ? *m.w : BundleModel{BundleRole::W, {}, {}}; }

CohomClass c1_class(const BasisPtr& b, const BundleModel& w) {
  CohomClass s(b);
  for (const auto& f : w.positive) s += root_class(b, f);
  for (const auto& f : w.negative) s -= root_class(b, f);
  return s;
}

QYSeries<Scalar> finish(const ClassSeries& s, const ManifoldModel& m, QExp n, const char* what) {
  QYSeries<Scalar> r = integrate(s, m);
  if (r.order() < n)
    throw PathMismatch(std::string(what) + ": internal truncation order " + r.order().str() +
                       " fell below the requested " + n.str());
  return r.truncated(n);
}

// Jet of 2 pi i z / theta(z, tau) in z, coefficients valid to order w.
std::vector<QYSeries<Scalar>> x_over_theta_jet(int nz, QExp w) {
  const ZJet t = y_to_z(theta_series(ThetaKind::Theta, w), nz + 1);
  std::vector<QYSeries<Scalar>> g(nz + 1), h(nz + 1);
  for (int k = 0; k <= nz; ++k) g[k] = t[k + 1];
  const QYSeries<Scalar> g0inv = series_invert(g[0], w);
  h[0] = g0inv;
  for (int m = 1; m <= nz; ++m) {
    QYSeries<Scalar> s(w);
    for (int k = 1; k <= m; ++k) s += series_mul(g[k], h[m - k], w);
    h[m] = -series_mul(g0inv, s, w);
  }
  for (auto& hm : h) hm = hm.scaled(Scalar::two_pi_i());
  return h;
}

ClassSeries jet_at_class(const std::vector<QYSeries<Scalar>>& h, const BasisPtr& b, const LinearForm& x) {
  const CohomClass xc = CohomClass::linear(b, x);
  CohomClass p = CohomClass::scalar(b, Scalar(1));
  ClassSeries r(h[0].order());
  for (std::size_t m = 0; m < h.size(); ++m) {
    if (m > 0) p = p * xc;
    if (p.is_zero()) break;
    QYSeries<Scalar> hm = h[m];
    r += hm.map_coeffs([&](const Scalar& c) { return p.scaled(c); });
  }
  return r;
}

}  // namespace

ClassSeries x_over_theta(const BasisPtr& b, const LinearForm& x, QExp n) {
  return jet_at_class(x_over_theta_jet(b->top_degree(), n), b, x);
}

ClassSeries theta_at(ThetaKind kind, const BasisPtr& b, const LinearForm& w, int zsign, QExp n) {
  const QYSeries<Scalar> th = theta_series(kind, n);
  const CohomClass u = root_class(b, w);
  std::map<int, CohomClass> ex;  // y-exponent (halves) -> e^{beta u}
  ClassSeries r(th.order());
  for (const auto& [k, c] : th.terms()) {
    auto it = ex.find(k.second);
    if (it == ex.end()) it = ex.emplace(k.second, u.scaled(Scalar::rational(k.second, 2)).exp()).first;
    r.add_term(QExp::from_24ths(k.first), YExp::from_halves(zsign * k.second), it->second.scaled(c));
  }
  return r;
}

Scalar theta_phase(int d_minus_l) {
  // (-i)^{d-l}
  const int k = ((d_minus_l % 4) + 4) % 4;
  static const Scalar table[4] = {Scalar(1), -Scalar::i(), Scalar(-1), Scalar::i()};
  return table[k];
}

ClassSeries bundle_series(const ManifoldModel& m, bool prime, QExp n) {
  const BasisPtr& b = m.basis;
  const BundleModel w = w_of(m);
  const int d = m.d(), l = m.l();
  const int pw = 2 * (d - l) + (prime ? 0 : 1);
  ClassSeries r = lift(series_pow(euler_product(n), pw, n), b).shifted(QExp(), YExp::from_halves(-l));
  const BundleModel wd = dual(w);
  const BundleModel tmc{BundleRole::TM, m.tm_complex_roots(), {}};
  for (int k = 1; QExp::integer(k - 1) <= n; ++k) {
    if (!w.positive.empty() || !w.negative.empty()) {
      r = mul(r, ch_lambda_t(b, wd, {Scalar(-1), QExp::integer(k - 1), YExp::integer(1)}, n), n);
      if (QExp::integer(k) <= n)
        r = mul(r, ch_lambda_t(b, w, {Scalar(-1), QExp::integer(k), YExp::integer(-1)}, n), n);
    }
    if (QExp::integer(k) <= n && !tmc.positive.empty())
      r = mul(r, ch_sym_t(b, tmc, {Scalar(1), QExp::integer(k), YExp()}, n), n);
  }
  return r.truncated(n);
}

ClassSeries ch_q_v(const ManifoldModel& m, int a, QExp n) {
  const BasisPtr& b = m.basis;
  if (a < 1 || a > 3) throw InvalidModel("twist index must be 1, 2 or 3");
  ClassSeries r = one_series(b);
  if (!m.v || m.v->positive.empty()) return r.truncated(n);
  BundleModel vt{BundleRole::V, m.v->positive, {}};
  vt.negative.assign(m.v->positive.size(), LinearForm(b->generators(), Scalar()));
  if (a == 1) {
    r = ClassSeries::monomial(ch_spinor(b, *m.v));
    for (int k = 1; QExp::integer(k) <= n; ++k)
      r = mul(r, ch_lambda_t(b, vt, {Scalar(1), QExp::integer(k), YExp()}, n), n);
  } else {
    const Scalar c(a == 2 ? -1 : 1);
    for (QExp e = kHalf; e <= n; e = e + QExp::integer(1)) r = mul(r, ch_lambda_t(b, vt, {c, e, YExp()}, n), n);
  }
  return r.truncated(n);
}

namespace {

// Common theta product eta^{3(d-l)} prod 2 pi i x / theta(x) prod theta(w - z),
// times the bundle-normalization phase, at working order.
ClassSeries theta_core(const ManifoldModel& m, const std::vector<LinearForm>& x, QExp wo) {
  const BasisPtr& b = m.basis;
  const BundleModel w = w_of(m);
  if (w.is_virtual()) throw InvalidModel("the theta path needs W given by honest roots");
  const int d = m.d(), l = m.l();
  ClassSeries r = lift(eta_power(3 * (d - l), wo).scaled(theta_phase(d - l)), b);
  if (d > 0) {
    const auto h = x_over_theta_jet(b->top_degree(), wo);
    for (const auto& xi : x) r = mul(r, jet_at_class(h, b, xi), wo);
  }
  for (const auto& wj : w.positive) r = mul(r, theta_at(ThetaKind::Theta, b, wj, -1, wo), wo);
  return r;
}

GenusResult run_paths(const std::string& family, GenusPath path, QExp n,
                      const std::function<QYSeries<Scalar>()>& bundle,
                      const std::function<QYSeries<Scalar>()>& theta) {
  GenusResult res;
  res.family = family;
  std::optional<QYSeries<Scalar>> bs, ts;
  if (path != GenusPath::Theta) {
    bs = bundle();
    res.paths.push_back("bundle");
  }
  if (path != GenusPath::Bundle) {
    ts = theta();
    res.paths.push_back("theta");
  }
  if (bs && ts) {
    QYSeries<Scalar> diff = *bs - *ts;
    res.residual = diff;
    if (!diff.is_zero())
      throw PathMismatch(family + ": bundle and theta paths differ at order " + n.str() + ": " + to_string(diff));
  }
  res.series = bs ? *bs : *ts;
  return res;
}

ClassSeries cs_for(const ManifoldModel& m, TwistKind k, QExp n) { return cs_q_series(k, m, n); }

GenusResult odd_genus(const ManifoldModel& m, TwistKind twist, const std::string& family, QExp n,
                      GenusPath path) {
  if (!m.is_odd()) throw InvalidModel(family + " needs an odd-dimensional model");
  require_twist_hypotheses(m);
  const BasisPtr& b = m.basis;
  const auto x = m.x_roots();
  auto bundle = [&]() {
    const ClassSeries cs = cs_for(m, twist, n);
    ClassSeries s = times_class(bundle_series(m, false, n), ahat(b, x));
    return finish(mul(s, cs, n), m, n, family.c_str());
  };
  auto theta = [&]() {
    const QExp wo = working_order(n, m.d() + m.l());
    const ClassSeries cs = cs_for(m, twist, wo);
    ClassSeries s = times_class(theta_core(m, x, wo), c1_class(b, w_of(m)).scaled(Scalar::rational(-1, 2)).exp());
    return finish(mul(s, cs, wo), m, n, family.c_str());
  };
  return run_paths(family, path, n, bundle, theta);
}

}  // namespace

GenusResult ell_odd(const ManifoldModel& m, QExp n, GenusPath path) {
  return odd_genus(m, TwistKind::Combined, family_name(GenusFamily::EllOdd, 0), n, path);
}

GenusResult ell_odd_level2(const ManifoldModel& m, int alpha, QExp n, GenusPath path) {
  if (alpha < 1 || alpha > 3) throw InvalidModel("twist index must be 1, 2 or 3");
  return odd_genus(m, static_cast<TwistKind>(alpha), family_name(GenusFamily::EllOddLevel2, alpha), n, path);
}

GenusResult ell_even(const ManifoldModel& m, int a, QExp n, GenusPath path) {
  const std::string family = family_name(GenusFamily::EllEven, a);
  if (m.is_odd()) throw InvalidModel(family + " needs an even-dimensional model");
  if (a < 1 || a > 3) throw InvalidModel("twist index must be 1, 2 or 3");
  const BasisPtr& b = m.basis;
  const auto x = m.x_roots();
  const int r = m.v ? static_cast<int>(m.v->positive.size()) / 2 : 0;
  const Scalar two_r = Scalar(2).pow(r);
  auto bundle = [&]() {
    ClassSeries s = times_class(bundle_series(m, true, n), todd(b, x));
    s = mul(s, ch_q_v(m, a, n), n);
    if (a != 1) s = s.scaled(CohomClass::scalar(b, two_r));
    return finish(s, m, n, family.c_str());
  };
  auto theta = [&]() {
    const QExp wo = working_order(n, m.d() + m.l() + 2 * r);
    const CohomClass pref = (c1_class(b, {BundleRole::TM, x, {}}) - c1_class(b, w_of(m))).scaled(Scalar::rational(1, 2)).exp();
    ClassSeries s = times_class(theta_core(m, x, wo), pref.scaled(two_r));
    if (r > 0) {
      const ThetaKind kind = a == 1 ? ThetaKind::Theta1 : a == 2 ? ThetaKind::Theta2 : ThetaKind::Theta3;
      const ClassSeries inv0 = lift(series_invert(theta_null(kind, wo), wo), b);
      for (const auto& vs : pair_roots(m.v->positive, 0, "V (x) C"))
        s = mul(mul(s, theta_at(kind, b, vs, 0, wo), wo), inv0, wo);
    }
    return finish(s, m, n, family.c_str());
  };
  return run_paths(family, path, n, bundle, theta);
}

namespace {

ThetaKind kind_of(int a) {
  if (a == 1) return ThetaKind::Theta1;
  if (a == 2) return ThetaKind::Theta2;
  if (a == 3) return ThetaKind::Theta3;
  throw InvalidModel("theta index must be 1, 2 or 3");
}

// prod_j x_j theta'(0) theta_a(x_j + z) / (theta_a(z) theta(x_j)), with the
// class-valued numerator integrated before the division by theta_a(z)^d.
QYSeries<RationalY> phi_core(const ManifoldModel& m, const std::vector<LinearForm>& x, int a,
                             const ClassSeries* twist, const Scalar& factor, QExp n) {
  const BasisPtr& b = m.basis;
  const int d = static_cast<int>(x.size());
  const ThetaKind kind = kind_of(a);
  const QExp wo = working_order(n, 2 * d + 2);
  ClassSeries s = one_series(b);
  if (d > 0) {
    const auto h = x_over_theta_jet(b->top_degree(), wo);
    const QYSeries<Scalar> tp = theta_prime_zero(wo).scaled(Scalar::two_pi_i().inverse());
    for (const auto& xj : x) {
      s = mul(s, mul(lift(tp, b), jet_at_class(h, b, xj), wo), wo);
      s = mul(s, theta_at(kind, b, xj, 1, wo), wo);
    }
  }
  if (twist) s = mul(s, *twist, wo);
  s = s.scaled(CohomClass::scalar(b, factor));
  QYSeries<Scalar> num = integrate(s, m);
  QYSeries<RationalY> r = fold_y(num);
  if (d > 0) r = series_mul(r, series_pow(fold_y(theta_series(kind, wo)), -d, wo), wo);
  if (r.order() < n) throw PathMismatch("Phi genus: internal truncation order fell below the request");
  return r.truncated(n);
}

}  // namespace

PhiResult phi_genus(const ManifoldModel& m, int a, QExp n) {
  PhiResult res;
  res.family = family_name(GenusFamily::Phi, a);
  if (m.is_odd()) throw InvalidModel(res.family + " needs an even-dimensional model");
  res.series = phi_core(m, m.tm.positive, a, nullptr, Scalar(1), n);
  return res;
}

PhiResult phi_genus_odd(const ManifoldModel& m, int a, QExp n) {
  PhiResult res;
  res.family = family_name(GenusFamily::PhiOdd, a);
  if (!m.is_odd()) throw InvalidModel(res.family + " needs an odd-dimensional model");
  if (!m.tm_split) throw UnsplitTangent("model gives no T^{1,0} roots for TM (x) C = T^{1,0} + T^{0,1} + C");
  require_twist_hypotheses(m);
  const QExp wo = working_order(n, 2 * m.d() + 2);
  const ClassSeries cs = cs_q_series(static_cast<TwistKind>(a), m, wo);
  // Q_1's character already carries 2^{N/2} through Delta(E); the printed
  // external 2^{N/2} is applied to the Q_2, Q_3 genera only.
  const Scalar factor = a == 1 ? Scalar(1) : Scalar(2).pow(m.e->rank / 2);
  res.series = phi_core(m, *m.tm_split, a, &cs, factor, n);
  res.notes.push_back(a == 1 ? "2^{N/2} carried by ch(Delta(E)) inside ch(Q_1(E)); printed external factor not repeated"
                             : "external 2^{N/2} applied as printed");
  return res;
}

GenusResult genus_by_name(const ManifoldModel& m, const std::string& family, QExp n, GenusPath path) {
  if (family == "ell") return ell_odd(m, n, path);
  const auto digit = [](char c) { return c >= '1' && c <= '3'; };
  if (family.size() == 4 && family.rfind("ell", 0) == 0 && digit(family[3]))
    return ell_even(m, family[3] - '0', n, path);
  if (family.size() == 5 && family.rfind("ellg", 0) == 0 && digit(family[4]))
    return ell_odd_level2(m, family[4] - '0', n, path);
  throw ParseError("unknown genus family '" + family + "' (expected ell, ell1..ell3, ellg1..ellg3)");
}

namespace {

LinearForm extend(const LinearForm& f, int before, int after) {
  LinearForm r(before, Scalar());
  r.insert(r.end(), f.begin(), f.end());
  r.resize(before + f.size() + after, Scalar());
  return r;
}

std::vector<LinearForm> extend_all(const std::vector<LinearForm>& fs, int before, int after) {
  std::vector<LinearForm> r;
  for (const auto& f : fs) r.push_back(extend(f, before, after));
  return r;
}

CohomClass transport(const CohomClass& c, const BasisPtr& to, int offset) {
  CohomClass r(to);
  const auto& from = *c.basis();
  for (int i = 0; i < from.size(); ++i) {
    if (c.coeff(i).is_zero() && c.odd_coeff(i).is_zero()) continue;
    std::vector<int> e(to->generators(), 0);
    const auto& src = from.exponents(i);
    for (std::size_t k = 0; k < src.size(); ++k) e[offset + k] = src[k];
    const int j = to->index_of(e);
    if (j < 0) continue;
    r.set_coeff(j, c.coeff(i));
    r.set_odd_coeff(j, c.odd_coeff(i));
  }
  return r;
}

}  // namespace

ManifoldModel product_model(const ManifoldModel& a, const ManifoldModel& o) {
  if (a.is_odd() || !o.is_odd()) throw InvalidModel("product_model expects (even, odd)");
  const int g1 = a.basis->generators(), g2 = o.basis->generators();
  ManifoldModel p;
  p.dimension = a.dimension + o.dimension;
  p.basis = std::make_shared<const GeneratorBasis>(g1 + g2, a.d() + o.d());
  for (const auto& x : a.tm.positive) {
    p.tm.positive.push_back(extend(x, 0, g2));
    LinearForm nx = extend(x, 0, g2);
    for (auto& s : nx) s = -s;
    p.tm.positive.push_back(nx);
  }
  for (const auto& x : extend_all(o.tm.positive, g1, 0)) p.tm.positive.push_back(x);
  std::vector<LinearForm> split = extend_all(a.tm.positive, 0, g2);
  if (o.tm_split) {
    for (const auto& x : extend_all(*o.tm_split, g1, 0)) split.push_back(x);
    p.tm_split = split;
  }
  BundleModel w{BundleRole::W, {}, {}};
  if (a.w) {
    for (const auto& f : extend_all(a.w->positive, 0, g2)) w.positive.push_back(f);
    for (const auto& f : extend_all(a.w->negative, 0, g2)) w.negative.push_back(f);
  }
  if (o.w) {
    for (const auto& f : extend_all(o.w->positive, g1, 0)) w.positive.push_back(f);
    for (const auto& f : extend_all(o.w->negative, g1, 0)) w.negative.push_back(f);
  }
  if (a.w || o.w) p.w = w;
  if (o.e) {
    TransgressionData e;
    e.rank = o.e->rank;
    for (const auto& [j, c] : o.e->components) e.components[j] = transport(c, p.basis, g1);
    if (o.e->delta_override) e.delta_override = transport(*o.e->delta_override, p.basis, g1);
    p.e = e;
  }
  for (const auto& [i1, f1] : a.functional)
    for (const auto& [i2, f2] : o.functional) {
      std::vector<int> e = a.basis->exponents(i1);
      const auto& e2 = o.basis->exponents(i2);
      e.insert(e.end(), e2.begin(), e2.end());
      p.functional[p.basis->index_of(e)] = f1 * f2;
    }
  validate(p);
  return p;
}

QYSeries<Scalar> ell_even_ahat(const ManifoldModel& m, QExp n) {
  if (m.is_odd()) throw InvalidModel("the even factor needs an even-dimensional model");
  return finish(times_class(bundle_series(m, true, n), ahat(m.basis, m.x_roots())), m, n, "even factor");
}

QExp yq_window(int l, QExp n) {
  if (l == 0) return n + QExp::from_24ths(1);
  // Cheapest q-cost of y^{-m}: l factors y^{-1} per level q^k.
  auto cost = [l](long m) {
    const long a = m / l, rem = m % l;
    return l * a * (a + 1) / 2 + rem * (a + 1);
  };
  auto m_max = [&](long alpha24) {
    long m = 0;
    while (24 * cost(m + 1) <= alpha24) ++m;
    return m;
  };
  long best = n.n24 + 1 - 24 * m_max(n.n24 + 1);
  for (long m = 1; m < 4096; ++m) {
    const long c24 = 24 * cost(m);
    if (c24 <= n.n24) continue;
    best = std::min(best, c24 - 24 * m);
    if (c24 - 24 * m > n.n24 + 24) break;
  }
  return QExp::from_24ths(static_cast<int>(std::min<long>(best, n.n24 + 1)));
}

bool y_support_ok(const QYSeries<Scalar>& s, int l) {
  for (const auto& [k, c] : s.terms())
    if (((k.second + l) % 2 + 2) % 2 != 0) return false;
  return true;
}

bool yq_law_ok(const QYSeries<Scalar>& s, int l, QExp n) {
  const QExp w = yq_window(l, n) - QExp::from_24ths(1);
  QYSeries<Scalar> lhs = substitute_y_by_yq(s, 1, kExact)
                             .shifted(QExp::rational(l, 2), YExp::integer(l))
                             .scaled(Scalar(l % 2 ? -1 : 1));
  lhs.set_order(w);
  return lhs.agrees_with(s, w);
}

namespace {

CheckEntry exact_entry(const std::string& id, bool ok, const std::string& detail, QExp n) {
  CheckEntry e;
  e.id = id;
  e.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  e.residual = ok ? "0" : "nonzero";
  e.detail = detail;
  e.orders["N_q"] = n.str();
  return e;
}

template <class S>
S flip_half(const S& s) {
  S r(s.order());
  for (const auto& [k, c] : s.terms()) {
    if (k.first % 12 != 0) throw BadExponent("T-action check expects q-exponents in (1/2)Z");
    r.add_term(QExp::from_24ths(k.first), YExp::from_halves(k.second), (k.first / 12) % 2 ? -c : c);
  }
  return r;
}

using NumFn = std::function<NumericValue(const EvalPoint&, unsigned)>;

// S-law: F(z/tau, -1/tau) = tau^w e^{pi i l z^2 / tau} G(z, tau), numerically.
VerificationReport s_law(const std::string& id, const std::string& statement, int weight, int l, NumFn f, NumFn g,
                         QExp n, unsigned bits, int samples) {
  TransformLaw law;
  law.id = id;
  law.statement = statement;
  law.action = LawAction::S;
  law.eval = [=](const Complex& v, const Complex& tau, const LawContext& ctx) {
    const Complex tinv = Complex(-1) / tau;
    LawSides s;
    s.lhs = f({tinv, v / tau}, ctx.bits);
    NumericValue rhs = g({tau, v}, ctx.bits);
    const Complex fac = cpow_int(tau, weight) *
                        cexp(Complex(Real(0), pi_real() * l) * v * v / tau);
    rhs.value = fac * rhs.value;
    rhs.tail = rhs.tail * fac.abs();
    s.rhs = rhs;
    return s;
  };
  return check_transformation(law, default_samples(LawAction::S, samples, 7), n, bits);
}

}  // namespace

VerificationReport check_genus_laws(const ManifoldModel& m, QExp n, unsigned bits, int samples) {
  VerificationReport rep;
  const int l = m.l();
  rep.title = "genus transformation laws (d=" + std::to_string(m.d()) + ", l=" + std::to_string(l) + ")";
  std::vector<QYSeries<Scalar>> e(4);
  std::string pre;
  if (!m.is_odd()) {
    for (int a = 1; a <= 3; ++a) e[a] = ell_even(m, a, n, GenusPath::Bundle).series;
    pre = "4.7";
  } else {
    for (int a = 1; a <= 3; ++a) e[a] = ell_odd_level2(m, a, n, GenusPath::Bundle).series;
    e[0] = ell_odd(m, n, GenusPath::Bundle).series;
    pre = "4.24";
  }
  const std::string nm = m.is_odd() ? "Ell_g" : "Ell_";
  rep.add(exact_entry(pre + ".T1", flip_half(e[1]) == e[1], nm + "1(tau+1) = " + nm + "1(tau)", n));
  rep.add(exact_entry(pre + ".T2", flip_half(e[2]) == e[3], nm + "2(tau+1) = " + nm + "3(tau)", n));
  rep.add(exact_entry(pre + ".T3", flip_half(e[3]) == e[2], nm + "3(tau+1) = " + nm + "2(tau)", n));
  for (int a = m.is_odd() ? 0 : 1; a <= 3; ++a) {
    const std::string tag = std::to_string(a);
    rep.add(exact_entry(pre + ".z+1#" + tag, y_support_ok(e[a], l), "y-exponents in Z - l/2", n));
    rep.add(exact_entry(pre + ".z+tau#" + tag, yq_law_ok(e[a], l, n),
                        "y -> yq law on q < " + yq_window(l, n).str(), n));
  }
  if (m.is_odd()) {
    rep.add(exact_entry("3.3.T", flip_half(e[0]) == e[0], "Ell(tau+1) = Ell(tau)", n));
    return rep;
  }
  auto num = [](const QYSeries<Scalar>& s) -> NumFn {
    return [s](const EvalPoint& p, unsigned bits) { return numeric_eval(s, p, bits); };
  };
  const int w = m.d() - l;
  rep.merge(s_law("4.7.S1", "Ell_1(-1/tau, z/tau) = tau^{d-l} e^{pi i l z^2/tau} Ell_2(tau, z)", w, l, num(e[1]),
                  num(e[2]), n, bits, samples));
  rep.merge(s_law("4.7.S2", "Ell_2(-1/tau, z/tau) = tau^{d-l} e^{pi i l z^2/tau} Ell_1(tau, z)", w, l, num(e[2]),
                  num(e[1]), n, bits, samples));
  rep.merge(s_law("4.7.S3", "Ell_3(-1/tau, z/tau) = tau^{d-l} e^{pi i l z^2/tau} Ell_3(tau, z)", w, l, num(e[3]),
                  num(e[3]), n, bits, samples));
  return rep;
}

VerificationReport check_phi_laws(const ManifoldModel& m, QExp n, unsigned bits, int samples) {
  VerificationReport rep;
  rep.title = "Phi genus laws (d=" + std::to_string(m.d()) + ")";
  std::vector<QYSeries<RationalY>> p(4);
  for (int a = 1; a <= 3; ++a) p[a] = phi_genus(m, a, n).series;
  rep.add(exact_entry("5.4.T1", flip_half(p[1]) == p[1], "Phi_L(z, tau+1) = Phi_L(z, tau)", n));
  rep.add(exact_entry("5.4.T2", flip_half(p[2]) == p[3], "Phi_W(z, tau+1) = Phi_W*(z, tau)", n));
  rep.add(exact_entry("5.4.T3", flip_half(p[3]) == p[2], "Phi_W*(z, tau+1) = Phi_W(z, tau)", n));
  auto num = [](const QYSeries<RationalY>& s) -> NumFn {
    return [s](const EvalPoint& pt, unsigned bits) { return numeric_eval(s, pt, bits); };
  };
  const int d = m.d();
  rep.merge(s_law("5.4.S1", "Phi_L(z/tau, -1/tau) = tau^d Phi_W(z, tau)", d, 0, num(p[1]), num(p[2]), n, bits, samples));
  rep.merge(s_law("5.4.S2", "Phi_W(z/tau, -1/tau) = tau^d Phi_L(z, tau)", d, 0, num(p[2]), num(p[1]), n, bits, samples));
  rep.merge(s_law("5.4.S3", "Phi_W*(z/tau, -1/tau) = tau^d Phi_W*(z, tau)", d, 0, num(p[3]), num(p[3]), n, bits, samples));
  return rep;
}

}  // namespace ellipt
