#include "ellipt/charclass.hpp"

#include <random>

namespace ellipt {

namespace {

bool is_zero_form(const LinearForm& f) {
  for (const auto& s : f)
    if (!s.is_zero()) return false;
  return true;
}

LinearForm negate(const LinearForm& f) {
  LinearForm r = f;
  for (auto& s : r) s = -s;
  return r;
}

// Power series coefficients (in u) up to u^n.
using Coeffs = std::vector<Scalar>;

Coeffs invert_series(const Coeffs& a, int n) {
  Coeffs b(n + 1);
  b[0] = a[0].inverse();
  for (int k = 1; k <= n; ++k) {
    Scalar s;
    for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j) s += a[j] * b[k - j];
    b[k] = -s * b[0];
  }
  return b;
}

Scalar factorial(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Scalar(mpq_class(f));
}

// (u/2) / sinh(u/2).
Coeffs ahat_coeffs(int n) {
  Coeffs s(n + 1);
  for (int k = 0; 2 * k <= n; ++k) s[2 * k] = Scalar(1) / (factorial(2 * k + 1) * Scalar(2).pow(2 * k));
  return invert_series(s, n);
}

// u / (1 - e^{-u}).
Coeffs todd_coeffs(int n) {
  Coeffs s(n + 1);
  for (int k = 0; k <= n; ++k) s[k] = Scalar(k % 2 ? -1 : 1) / factorial(k + 1);
  return invert_series(s, n);
}

Coeffs exp_coeffs(const Scalar& a, int n) {
  Coeffs c(n + 1);
  c[0] = Scalar(1);
  for (int k = 1; k <= n; ++k) c[k] = c[k - 1] * a * Scalar::rational(1, k);
  return c;
}

}  // namespace

std::string role_name(BundleRole r) {
  switch (r) {
    case BundleRole::TM: return "TM";
    case BundleRole::W: return "W";
    case BundleRole::V: return "V";
    case BundleRole::E: return "E";
  }
  return "?";
}

std::vector<LinearForm> pair_roots(const std::vector<LinearForm>& roots, int allowed_zero_left,
                                   const std::string& what) {
  std::vector<bool> used(roots.size(), false);
  std::vector<LinearForm> reps;
  int zero_left = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const LinearForm neg = negate(roots[i]);
    bool found = false;
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (!used[j] && roots[j] == neg) {
        used[j] = true;
        found = true;
        break;
      }
    if (found) {
      reps.push_back(roots[i]);
    } else if (is_zero_form(roots[i])) {
      ++zero_left;
    } else {
      throw OddRankSpinBundle(what + ": root without a negated partner");
    }
  }
  if (zero_left != allowed_zero_left)
    throw OddRankSpinBundle(what + ": expected " + std::to_string(allowed_zero_left) +
                            " unpaired zero root(s), found " + std::to_string(zero_left));
  return reps;
}

std::vector<LinearForm> ManifoldModel::x_roots() const {
  if (!is_odd()) return tm.positive;
  return pair_roots(tm.positive, 1, "TM (x) C");
}

std::vector<LinearForm> ManifoldModel::tm_complex_roots() const {
  if (is_odd()) return tm.positive;
  std::vector<LinearForm> r = tm.positive;
  for (const auto& x : tm.positive) r.push_back(negate(x));
  return r;
}

void validate(const ManifoldModel& m) {
  if (!m.basis) throw InvalidModel("model has no generator basis");
  if (m.dimension < 0) throw InvalidModel("negative dimension");
  if (m.basis->top_degree() != m.d())
    throw InvalidModel("basis top degree " + std::to_string(m.basis->top_degree()) +
                       " does not match complex half-dimension " + std::to_string(m.d()));
  const int g = m.basis->generators();
  auto check_forms = [&](const std::vector<LinearForm>& fs, const std::string& what) {
    for (const auto& f : fs)
      if (static_cast<int>(f.size()) != g)
        throw InvalidModel(what + " root has " + std::to_string(f.size()) + " coefficients, expected " +
                           std::to_string(g));
  };
  check_forms(m.tm.positive, "TM");
  if (!m.tm.negative.empty()) throw InvalidModel("TM cannot be virtual");
  if (m.is_odd()) {
    if (static_cast<int>(m.tm.positive.size()) != 2 * m.d() + 1)
      throw InvalidModel("odd model needs 2d+1 roots of TM (x) C");
    m.x_roots();
    if (m.tm_split) {
      check_forms(*m.tm_split, "tm_split");
      if (static_cast<int>(m.tm_split->size()) != m.d()) throw InvalidModel("tm_split needs d roots");
    }
  } else {
    if (static_cast<int>(m.tm.positive.size()) != m.d())
      throw InvalidModel("even model needs d roots of T^{1,0}M");
    if (m.e) throw InvalidModel("transgression data only applies to odd models");
  }
  if (m.w) {
    check_forms(m.w->positive, "W");
    check_forms(m.w->negative, "W");
  }
  if (m.v) {
    check_forms(m.v->positive, "V");
    if (!m.v->negative.empty()) throw InvalidModel("V cannot be virtual");
    if (m.v->positive.size() % 2) throw OddRankSpinBundle("V has odd rank");
    pair_roots(m.v->positive, 0, "V (x) C");
  }
  if (m.e) {
    if (m.e->rank < 0 || m.e->rank % 2) throw OddRankSpinBundle("E must have non-negative even rank");
    for (const auto& [j, p] : m.e->components) {
      if (j < 1) throw InvalidModel("transgression index must be positive");
      if (j % 2 == 1 && !p.is_zero())
        throw InvalidModel("odd-index transgression component c_" + std::to_string(j) +
                           " must vanish for the complexification of a real bundle");
      if (p.has_odd()) throw InvalidModel("transgression components are given without sigma");
      if (p.is_zero()) continue;
      if (!p.basis() || !(*p.basis() == *m.basis))
        throw InvalidModel("transgression component lives on a different basis");
      if (j - 1 > m.d() || !(p.degree_part(j - 1) == p))
        throw InvalidModel("transgression component P_" + std::to_string(j) +
                           " must be homogeneous of degree " + std::to_string(j - 1));
    }
    if (m.e->delta_override && m.e->delta_override->even_part() != CohomClass(m.basis))
      throw InvalidModel("delta override must be a sigma-class");
  }
  for (const auto& [idx, val] : m.functional)
    if (idx < 0 || idx >= m.basis->size() || m.basis->degree(idx) != m.d())
      throw InvalidModel("functional set on a monomial that is not top degree");
}

CohomClass root_class(const BasisPtr& b, const LinearForm& root) {
  return CohomClass::linear(b, root).scaled(Scalar::two_pi_i());
}

CohomClass ahat(const BasisPtr& b, const std::vector<LinearForm>& x) {
  const Coeffs f = ahat_coeffs(b->top_degree());
  CohomClass r = CohomClass::scalar(b, Scalar(1));
  for (const auto& xi : x) r = r * root_class(b, xi).apply_series(f);
  return r;
}

CohomClass todd(const BasisPtr& b, const std::vector<LinearForm>& x) {
  const Coeffs f = todd_coeffs(b->top_degree());
  CohomClass r = CohomClass::scalar(b, Scalar(1));
  for (const auto& xi : x) r = r * root_class(b, xi).apply_series(f);
  return r;
}

CohomClass ch_bundle(const BasisPtr& b, const BundleModel& bundle) {
  CohomClass r(b);
  for (const auto& w : bundle.positive) r += root_class(b, w).exp();
  for (const auto& w : bundle.negative) r -= root_class(b, w).exp();
  return r;
}

BundleModel dual(const BundleModel& bundle) {
  BundleModel r = bundle;
  for (auto& f : r.positive) f = negate(f);
  for (auto& f : r.negative) f = negate(f);
  return r;
}

CohomClass ch_exterior_power(const BasisPtr& b, const BundleModel& bundle, int p) {
  if (bundle.is_virtual()) throw InvalidModel("exterior powers of a virtual bundle need the series form");
  // e_p(e^{w_1}, ..., e^{w_k}) by the usual elementary-symmetric recursion.
  std::vector<CohomClass> e(p + 1, CohomClass(b));
  e[0] = CohomClass::scalar(b, Scalar(1));
  for (const auto& w : bundle.positive) {
    const CohomClass ew = root_class(b, w).exp();
    for (int k = p; k >= 1; --k) e[k] += e[k - 1] * ew;
  }
  return e[p];
}

ClassSeries ch_lambda_t(const BasisPtr& b, const BundleModel& bundle, const SeriesParam& t, QExp n) {
  ClassSeries num = ClassSeries::monomial(CohomClass::scalar(b, Scalar(1)));
  auto factor = [&](const LinearForm& w) {
    ClassSeries f = ClassSeries::monomial(CohomClass::scalar(b, Scalar(1)));
    f.add_term(t.alpha, t.beta, root_class(b, w).exp().scaled(t.c));
    return f;
  };
  for (const auto& w : bundle.positive) num = series_mul(num, factor(w), n);
  if (!bundle.is_virtual()) return num.truncated(n);
  if (t.alpha.n24 <= 0)
    throw NonTruncatingParameter("Lambda_t of a virtual bundle needs t with positive q-order");
  ClassSeries den = ClassSeries::monomial(CohomClass::scalar(b, Scalar(1)));
  for (const auto& w : bundle.negative) den = series_mul(den, factor(w), n);
  return series_mul(num, series_invert(den, n), n);
}

ClassSeries ch_sym_t(const BasisPtr& b, const BundleModel& bundle, const SeriesParam& t, QExp n) {
  if (t.alpha.n24 <= 0) throw NonTruncatingParameter("S_t needs t with positive q-order");
  SeriesParam mt = t;
  mt.c = -t.c;
  BundleModel swapped = bundle;
  std::swap(swapped.positive, swapped.negative);
  // S_t(B) = 1 / Lambda_{-t}(B) = Lambda_{-t}(-B).
  ClassSeries den = ClassSeries::monomial(CohomClass::scalar(b, Scalar(1)));
  auto factor = [&](const LinearForm& w) {
    ClassSeries f = ClassSeries::monomial(CohomClass::scalar(b, Scalar(1)));
    f.add_term(mt.alpha, mt.beta, root_class(b, w).exp().scaled(mt.c));
    return f;
  };
  for (const auto& w : bundle.positive) den = series_mul(den, factor(w), n);
  ClassSeries num = ClassSeries::monomial(CohomClass::scalar(b, Scalar(1)));
  for (const auto& w : bundle.negative) num = series_mul(num, factor(w), n);
  return series_mul(num.truncated(n), series_invert(den, n), n);
}

CohomClass ch_spinor(const BasisPtr& b, const BundleModel& v) {
  if (v.positive.size() % 2) throw OddRankSpinBundle("V has odd rank");
  const auto reps = pair_roots(v.positive, 0, "V (x) C");
  CohomClass r = CohomClass::scalar(b, Scalar(1));
  for (const auto& s : reps) {
    const CohomClass u = root_class(b, s).scaled(Scalar::rational(1, 2));
    r = r * (u.exp() + (-u).exp());
  }
  return r;
}

Integral integrate(const CohomClass& c, const ManifoldModel& m) {
  Integral out;
  const auto& b = *m.basis;
  const int d = m.d();
  bool even_top = false, odd_top = false;
  for (int i = b.degree_begin(d); i < b.degree_begin(d + 1); ++i) {
    even_top |= !c.coeff(i).is_zero();
    odd_top |= !c.odd_coeff(i).is_zero();
  }
  for (const auto& [idx, val] : m.functional)
    out.value += val * (m.is_odd() ? c.odd_coeff(idx) : c.coeff(idx));
  out.wrong_parity = m.is_odd() ? (even_top && !odd_top) : odd_top;
  return out;
}

QYSeries<Scalar> integrate(const ClassSeries& s, const ManifoldModel& m) {
  return s.map_coeffs([&](const CohomClass& c) { return integrate(c, m).value; });
}

bool ConstraintReport::all() const {
  for (const auto& [k, v] : holds)
    if (!v) return false;
  return true;
}

bool ConstraintReport::get(const std::string& name) const {
  auto it = holds.find(name);
  if (it == holds.end()) throw InvalidModel("no constraint named " + name);
  return it->second;
}

ConstraintReport check_constraints(const ManifoldModel& m) {
  // Work in a basis of degree >= 2 so that p1 never truncates away.
  const int g = m.basis->generators();
  auto b = std::make_shared<const GeneratorBasis>(g, 2, m.basis->names());
  auto sum_lin = [&](const std::vector<LinearForm>& fs) {
    CohomClass s(b);
    for (const auto& f : fs) s += CohomClass::linear(b, f);
    return s;
  };
  auto sum_sq = [&](const std::vector<LinearForm>& fs) {
    CohomClass s(b);
    for (const auto& f : fs) {
      CohomClass c = CohomClass::linear(b, f);
      s += c * c;
    }
    return s;
  };
  ConstraintReport r;
  const CohomClass zero(b);
  if (m.w) {
    r.holds["c1(W)=0"] = (sum_lin(m.w->positive) - sum_lin(m.w->negative)) == zero;
  } else {
    r.holds["c1(W)=0"] = true;
  }
  const auto x = m.x_roots();
  if (!m.is_odd()) {
    r.holds["c1(M)=0"] = sum_lin(x) == zero;
  } else if (m.tm_split) {
    r.holds["c1(T10)=0"] = sum_lin(*m.tm_split) == zero;
  }
  const CohomClass p1w = m.w ? sum_sq(m.w->positive) - sum_sq(m.w->negative) : zero;
  r.holds["p1(M)=p1(W)"] = sum_sq(x) == p1w;
  if (m.v) r.holds["p1(V)=0"] = sum_sq(pair_roots(m.v->positive, 0, "V (x) C")) == zero;
  if (m.e) {
    auto it = m.e->components.find(2);
    r.holds["c3(E_C,g,d)=0"] = it == m.e->components.end() || it->second.is_zero();
  }
  return r;
}

std::map<int, Scalar> random_functional(const BasisPtr& b, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> c(-5, 5);
  std::map<int, Scalar> f;
  const int d = b->top_degree();
  for (int i = b->degree_begin(d); i < b->degree_begin(d + 1); ++i) {
    const int v = c(rng);
    if (v) f[i] = Scalar(v);
  }
  if (f.empty()) f[b->degree_begin(d)] = Scalar(1);
  return f;
}

ManifoldModel make_test_model(const TestRecipe& r) {
  std::mt19937 rng(r.seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  const int g = r.generators;
  auto random_form = [&]() {
    LinearForm f(g);
    bool nz = false;
    while (!nz) {
      for (auto& s : f) {
        s = Scalar(coef(rng));
        nz |= !s.is_zero();
      }
    }
    return f;
  };
  const LinearForm zero(g, Scalar());
  std::vector<LinearForm> x;
  for (int k = 0; k < r.pairs; ++k) {
    LinearForm t = random_form();
    x.push_back(t);
    x.push_back(negate(t));
  }
  for (int k = 0; k < r.zero_x; ++k) x.push_back(zero);
  const int d = static_cast<int>(x.size());

  ManifoldModel m;
  m.dimension = r.odd ? 2 * d + 1 : 2 * d;
  m.basis = std::make_shared<const GeneratorBasis>(g, d);
  if (r.odd) {
    for (const auto& xi : x) {
      m.tm.positive.push_back(xi);
      m.tm.positive.push_back(negate(xi));
    }
    m.tm.positive.push_back(zero);
    m.tm_split = x;
  } else {
    m.tm.positive = x;
  }
  BundleModel w{BundleRole::W, {}, {}};
  for (int k = 0; k < 2 * r.pairs; ++k) w.positive.push_back(x[k]);
  for (int k = 0; k < r.zero_w; ++k) w.positive.push_back(zero);
  m.w = w;
  if (r.v_blocks > 0) {
    BundleModel v{BundleRole::V, {}, {}};
    for (int k = 0; k < r.v_blocks; ++k) {
      LinearForm l = random_form();
      LinearForm il = l;
      for (auto& s : il) s *= Scalar::i();
      v.positive.push_back(l);
      v.positive.push_back(negate(l));
      v.positive.push_back(il);
      v.positive.push_back(negate(il));
    }
    m.v = v;
  }
  if (r.odd && r.twist) {
    TransgressionData e;
    e.rank = r.e_rank;
    std::uniform_int_distribution<int> pc(-3, 3);
    for (int j = 4; j - 1 <= d; j += 2) {
      CohomClass p(m.basis);
      for (int i = m.basis->degree_begin(j - 1); i < m.basis->degree_begin(j); ++i) p.set_coeff(i, Scalar(pc(rng)));
      if (!p.is_zero()) e.components[j] = p;
    }
    m.e = e;
  }
  m.functional = random_functional(m.basis, r.seed * 7919u + 13u);
  validate(m);
  return m;
}

ManifoldModel make_skew_model(bool odd, int d, int zero_w, int v_blocks, unsigned seed, bool rotate_w) {
  if (d < 3) throw InvalidModel("the skew model needs d >= 3");
  TestRecipe t;
  t.odd = odd;
  t.twist = odd;
  t.generators = 2;
  t.pairs = 1;
  t.zero_x = d - 2;
  t.v_blocks = odd ? 0 : v_blocks;
  t.seed = seed;
  ManifoldModel m = make_test_model(t);
  auto form = [](long a, long b) { return LinearForm{Scalar(a), Scalar(b)}; };
  std::vector<LinearForm> x = {form(-1, 0), form(0, -1), form(1, 1)};
  while (static_cast<int>(x.size()) < d) x.push_back(form(0, 0));
  BundleModel w{BundleRole::W, {form(1, 0), form(0, 1), form(-1, -1)}, {}};
  if (rotate_w) {
    // Same quadratic form sum w_j^2 as the x-roots, but no w_j equals +-x_i.
    auto g = [](long re, long im) { return Scalar(GaussRat(re, im)); };
    w.positive = {{g(-2, -1), g(-2, 1)}, {g(0, 2), g(2, 1)}, {g(2, -1), g(0, -2)}};
  }
  for (int k = 0; k < zero_w; ++k) w.positive.push_back(form(0, 0));
  m.w = w;
  if (odd) {
    m.tm.positive.clear();
    for (const auto& xi : x) {
      m.tm.positive.push_back(xi);
      m.tm.positive.push_back(negate(xi));
    }
    m.tm.positive.push_back(form(0, 0));
    m.tm_split = x;
  } else {
    m.tm.positive = x;
  }
  validate(m);
  return m;
}

}  // namespace ellipt
