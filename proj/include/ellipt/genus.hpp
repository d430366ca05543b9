#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellipt/charclass.hpp"
#include "ellipt/oddtwist.hpp"
#include "ellipt/rational_y.hpp"
#include "ellipt/report.hpp"
#include "ellipt/theta.hpp"

namespace ellipt {

enum class GenusPath { Bundle, Theta, Both };
GenusPath parse_path(const std::string& s);
std::string path_name(GenusPath p);

// Genus families: Ell (odd, combined twist), Ell_a (even, twisted by Q_a(V)),
// Ell_{alpha,g} (odd, twisted by Q_alpha(E)), and the Phi genera.
enum class GenusFamily { EllOdd, EllEven, EllOddLevel2, Phi, PhiOdd };
std::string family_name(GenusFamily f, int index);

struct GenusResult {
  std::string family;
  QYSeries<Scalar> series;
  std::vector<std::string> paths;
  // bundle minus theta, present when both paths ran (and then zero)
  std::optional<QYSeries<Scalar>> residual;
  std::vector<std::string> notes;
};

struct PhiResult {
  std::string family;
  QYSeries<RationalY> series;
  std::vector<std::string> notes;
};

// ch of E(M, W, tau, z) (prime = false, prefactor c^{2(d-l)+1}) or of
// E'(M, W, tau, z) (prime = true, c^{2(d-l)}), truncated at q^n.
ClassSeries bundle_series(const ManifoldModel& m, bool prime, QExp n);

// ch(Q_a(V)) for a = 1, 2, 3 (1 when V is absent).
ClassSeries ch_q_v(const ManifoldModel& m, int a, QExp n);

// 2 pi i x / theta(x, tau) as a class series Sum_m H_m(q) x^m.
ClassSeries x_over_theta(const BasisPtr& b, const LinearForm& x, QExp n);
// theta_kind(w + sign * z, tau) as a class series in q and y = e^{2 pi i z}.
ClassSeries theta_at(ThetaKind kind, const BasisPtr& b, const LinearForm& w, int zsign, QExp n);

// Constant relating the theta products to the bundle normalization:
// bundle path = theta_phase(d - l) * theta product.
Scalar theta_phase(int d_minus_l);

GenusResult ell_odd(const ManifoldModel& m, QExp n, GenusPath path = GenusPath::Both);
GenusResult ell_even(const ManifoldModel& m, int a, QExp n, GenusPath path = GenusPath::Both);
GenusResult ell_odd_level2(const ManifoldModel& m, int alpha, QExp n, GenusPath path = GenusPath::Both);

// Phi_L (a = 1), Phi_W (a = 2), Phi_{W*} (a = 3) for even models; the odd
// analogues Phi_{L,g}, Phi_{W,g}, Phi_{W*,g} need the T^{1,0} splitting and E.
PhiResult phi_genus(const ManifoldModel& m, int a, QExp n);
PhiResult phi_genus_odd(const ManifoldModel& m, int a, QExp n);

// Evaluate a genus family by name: "ell", "ell1".."ell3", "ellg1".."ellg3".
GenusResult genus_by_name(const ManifoldModel& m, const std::string& family, QExp n, GenusPath path);

// Product of an even model (M1, W1) with an odd model (M2, W2, E2): generators
// concatenated, roots extended by zero, functional the tensor product.
ManifoldModel product_model(const ManifoldModel& even, const ManifoldModel& odd);

// The even factor of the product law: the integral of Ahat(M1) ch(E'(M1, W1)).
QYSeries<Scalar> ell_even_ahat(const ManifoldModel& m, QExp n);

// Largest q-order (exclusive bound) on which the y -> yq law of a genus with
// |W| = l computed to order n can be compared exactly.
QExp yq_window(int l, QExp n);

// Elliptic invariants of a genus series: y-support in Z - l/2 and the
// y -> yq law on the exact window. Returns whether each holds.
bool y_support_ok(const QYSeries<Scalar>& s, int l);
bool yq_law_ok(const QYSeries<Scalar>& s, int l, QExp n);

// Transformation-law checks of the even genera (T and elliptic laws exact,
// S-laws numeric at points near i) and of the Phi genera.
VerificationReport check_genus_laws(const ManifoldModel& m, QExp n, unsigned bits, int samples = 5);
VerificationReport check_phi_laws(const ManifoldModel& m, QExp n, unsigned bits, int samples = 5);

}  // namespace ellipt
