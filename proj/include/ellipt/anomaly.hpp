#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ellipt/genus.hpp"
#include "ellipt/modforms.hpp"
#include "ellipt/zjet.hpp"

namespace ellipt {

// exp(-4 pi^2 l G_2(tau) z^2) = exp((pi^2 l / 6) E_2(tau) z^2) as a z-jet
// through z^nz, coefficients known through q^n.
ZJet g2_twist_jet(int l, int nz, QExp n);

// The coefficient series a_n(tau) of exp(-4 pi^2 l G_2 z^2) Ell(tau, z).
struct CoefficientFamily {
  std::string family;  // genus family name, e.g. "Ell", "Ell_2", "Ell_2,g"
  int d = 0;
  int l = 0;
  int weight = 0;  // claimed weight of a_0; a_n has weight + n
  ModularGroup group = ModularGroup::SL2Z;
  QExp order;
  std::vector<QYSeries<Scalar>> a;

  int nz() const { return static_cast<int>(a.size()) - 1; }
  // Fourier coefficient a_n^k; InvalidModel when q^k lies beyond the order
  // or n beyond the jet.
  Scalar coeff(int n, QExp k) const;
};

// Twist and read off z-coefficients. The genus must have Scalar coefficients.
CoefficientFamily extract_coefficients(const QYSeries<Scalar>& genus, int l, int nz, QExp n);

// Genus family by name ("ell", "ell1".."ell3", "ellg1".."ellg3", see
// genus_by_name), then extraction with the family's claimed weight and group:
// odd families weight d + 1 - l, even families d - l; index 1, 2, 3 maps to
// Gamma_0(2), Gamma^0(2), Gamma_theta, the combined odd genus to SL(2, Z).
CoefficientFamily coefficient_family(const ManifoldModel& m, const std::string& family, int nz, QExp n);

// One referenced Fourier coefficient a_n^k with a rational multiplier.
struct RelationTerm {
  Scalar c;
  int n = 0;
  QExp k;
};
using Relation = std::vector<RelationTerm>;  // sum c a_n^k = 0

// A registered vanishing statement or anomaly-cancellation relation.
struct TheoremCase {
  std::string id;         // "3.6.1", "3.7.5", "4.6.2", "4.11.4", ...
  std::string family;     // genus family: "ell", "ell2" or "ellg2"
  bool vanishing = false;  // proposition (every listed coefficient is zero)
  std::string hypothesis;  // condition on d and l, as text
  std::function<bool(int d, int l)> applies;
  std::vector<Relation> relations;
  // "a^1 is an integer multiple of m" claims: (n, m), asserted only when
  // a_n^0 is an integer.
  std::vector<std::pair<int, long>> integrality;
  std::string statement;

  int max_n() const;
  QExp min_order() const;  // q-order through which coefficients are read
};

const std::vector<TheoremCase>& theorem_cases();
// Lookup by id; InvalidModel for unknown ids.
const TheoremCase& theorem_case(const std::string& id);

// Check a case on an extracted family. HypothesisNotMet when the case's
// d, l condition fails for the family or the family is of the wrong kind.
VerificationReport verify_vanishing(const CoefficientFamily& f, const TheoremCase& c);
VerificationReport verify_relation(const CoefficientFamily& f, const TheoremCase& c);

// Run a case on a model for its own functional and `extra_functionals`
// random ones. HypothesisNotMet when the geometric constraints of the
// theorem (c1, p1, c3(E_C)) or the d, l condition fail.
VerificationReport verify_theorem(const ManifoldModel& m, const TheoremCase& c, int extra_functionals = 3,
                                  unsigned seed = 1);

// Fit every a_n against the claimed ring (E4, E6 over SL(2, Z); delta2,
// eps2 over Gamma^0(2)). Groups without a ring basis give informational
// entries. InsufficientCoefficients when a fit lacks coefficients.
VerificationReport verify_modularity(const CoefficientFamily& f, int max_n = -1);

// Explicit coefficient formulas, evaluated with charclass and compared
// exactly with extracted coefficients.
const std::vector<std::string>& closed_formula_ids();
VerificationReport closed_formula_check(const ManifoldModel& m, const std::string& which);

}  // namespace ellipt
