#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellipt/cohom.hpp"

namespace ellipt {

// A Chern root stored without the 2 pi i factor: the cohomology root is
// 2 pi i * sum_k coeffs[k] t_k.
using LinearForm = std::vector<Scalar>;

enum class BundleRole { TM, W, V, E };
std::string role_name(BundleRole r);

// A (possibly virtual) bundle given by positive and negative Chern roots.
struct BundleModel {
  BundleRole role = BundleRole::W;
  std::vector<LinearForm> positive;
  std::vector<LinearForm> negative;

  int rank() const { return static_cast<int>(positive.size()) - static_cast<int>(negative.size()); }
  bool is_virtual() const { return !negative.empty(); }
  friend bool operator==(const BundleModel& a, const BundleModel& b) {
    return a.role == b.role && a.positive == b.positive && a.negative == b.negative;
  }
};

// Primitive transgression data of the trivial bundle E with automorphism g:
// for each j, the degree-(2j-1) class c_j = sigma * P_j with P_j an even
// class of degree j - 1. Optionally an explicit class replaces the derived
// transgression of the spinor bundle Delta(E).
struct TransgressionData {
  int rank = 0;  // N, even
  std::map<int, CohomClass> components;  // j -> P_j (sigma implied)
  std::optional<CohomClass> delta_override;  // a sigma-class
};

// Formal manifold: generator algebra, Chern roots, and integration functional.
//   even (dimension 2d): tm holds the T^{1,0} roots x_1..x_d.
//   odd (dimension 2d+1): tm holds all 2d+1 roots of TM (x) C, in +-pairs plus
//   one zero root; tm_split optionally names the T^{1,0} roots.
struct ManifoldModel {
  int dimension = 0;
  BasisPtr basis;
  BundleModel tm{BundleRole::TM, {}, {}};
  std::optional<BundleModel> w, v;
  std::optional<TransgressionData> e;
  std::optional<std::vector<LinearForm>> tm_split;
  // Coefficients of the functional on top-degree monomials (index -> value).
  std::map<int, Scalar> functional;
  std::vector<std::string> flags;  // geometric hypotheses recorded, not enforced

  bool is_odd() const { return dimension % 2 == 1; }
  int d() const { return dimension / 2; }
  int l() const { return w ? w->rank() : 0; }
  // T^{1,0} roots up to sign (x_i); for odd models recovered by pairing.
  std::vector<LinearForm> x_roots() const;
  // All roots of TM (x) C.
  std::vector<LinearForm> tm_complex_roots() const;
};

// Validates shapes (root lengths, parity, pairing, V rank, E rank and
// component parity). InvalidModel / OddRankSpinBundle on failure.
void validate(const ManifoldModel& m);

// The cohomology class 2 pi i * root.
CohomClass root_class(const BasisPtr& b, const LinearForm& root);

CohomClass ahat(const BasisPtr& b, const std::vector<LinearForm>& x);
CohomClass todd(const BasisPtr& b, const std::vector<LinearForm>& x);
CohomClass ch_bundle(const BasisPtr& b, const BundleModel& bundle);
// ch of the dual bundle (roots negated).
BundleModel dual(const BundleModel& bundle);
// ch(Lambda^p B) as the p-th elementary symmetric function of e^{roots}.
CohomClass ch_exterior_power(const BasisPtr& b, const BundleModel& bundle, int p);

// Series parameter t = c q^alpha y^beta.
struct SeriesParam {
  Scalar c = Scalar(1);
  QExp alpha;
  YExp beta;
};

// ch(Lambda_t(B)) = prod_pos (1 + t e^w) / prod_neg (1 + t e^w), truncated at n.
ClassSeries ch_lambda_t(const BasisPtr& b, const BundleModel& bundle, const SeriesParam& t, QExp n);
// ch(S_t(B)) = 1 / ch(Lambda_{-t}(B)); NonTruncatingParameter when alpha = 0.
ClassSeries ch_sym_t(const BasisPtr& b, const BundleModel& bundle, const SeriesParam& t, QExp n);

// ch(Delta(V)) = prod_s (e^{pi i v_s} + e^{-pi i v_s}) over one root of each
// +-pair of V (x) C. OddRankSpinBundle when the roots do not pair up.
CohomClass ch_spinor(const BasisPtr& b, const BundleModel& v);
// One representative of each +-pair; throws OddRankSpinBundle if unpaired.
std::vector<LinearForm> pair_roots(const std::vector<LinearForm>& roots, int allowed_zero_left,
                                   const std::string& what);

struct Integral {
  Scalar value;
  bool wrong_parity = false;
};

// Apply the model's functional to the top-degree part of a class: the even
// top part for even models, the sigma top part for odd models.
Integral integrate(const CohomClass& c, const ManifoldModel& m);
QYSeries<Scalar> integrate(const ClassSeries& s, const ManifoldModel& m);

struct ConstraintReport {
  std::map<std::string, bool> holds;  // constraint -> satisfied
  bool all() const;
  bool get(const std::string& name) const;
};

// c1(W) = 0, c1(M) = 0, p1(M) = p1(W), p1(V) = 0, c3(E_C,g,d) = 0 checked as
// polynomial identities in the generators.
ConstraintReport check_constraints(const ManifoldModel& m);

// The paired-roots recipe: x-list = `pairs` pairs {t, -t} of random small
// integer forms plus `zero_x` zero roots; W = all pairs plus `zero_w` zero
// roots; V (x) C = `v_blocks` blocks {l, -l, i l, -i l}; E with random
// components c_{2r}, r >= 2, when `twist`. Random integer functional.
struct TestRecipe {
  bool odd = false;
  int generators = 2;
  int pairs = 1;
  int zero_x = 0;
  int zero_w = 0;
  int v_blocks = 0;
  bool twist = false;
  int e_rank = 8;
  unsigned seed = 1;
};

ManifoldModel make_test_model(const TestRecipe& r);

// A two-generator model without root symmetry: x = {-a, -b, a + b} plus zero
// roots up to d, W = {a, b, -a - b} plus `zero_w` zero roots, `v_blocks`
// blocks {u, -u, iu, -iu} for even models, random E-data for odd ones.
// c1(M) = c1(W) = 0, p1(M) = p1(W) and p1(V) = 0 hold. Needs d >= 3.
// With W = +-x the x/theta(x) and theta(w)/w factors cancel; `rotate_w`
// replaces W's nonzero roots by {(-2-i)a + (-2+i)b, 2i a + (2+i)b,
// (2-i)a - 2i b}, which keep sum w_j^2 = sum x_i^2 without that cancellation.
ManifoldModel make_skew_model(bool odd, int d, int zero_w, int v_blocks, unsigned seed, bool rotate_w = false);

// Fresh random integer functional on the model's top monomials.
std::map<int, Scalar> random_functional(const BasisPtr& b, unsigned seed);

}  // namespace ellipt
