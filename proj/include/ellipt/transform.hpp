#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ellipt/numeric.hpp"
#include "ellipt/report.hpp"

namespace ellipt {

enum class LawAction { T, S };

struct LawContext {
  QExp order;
  unsigned bits;
};

// Both sides of a law at one sample, each with its truncation tail.
struct LawSides {
  NumericValue lhs, rhs;
};

// One entry of the transformation-law registry. `informational` marks a
// variant kept only for comparison; it never gates a verification.
struct TransformLaw {
  std::string id;
  std::string statement;
  LawAction action = LawAction::T;
  bool informational = false;
  std::function<LawSides(const Complex& v, const Complex& tau, const LawContext&)> eval;
};

struct Sample {
  Complex v, tau;
};

// The theta-function laws (S and T actions on theta, theta', delta, eps).
const std::vector<TransformLaw>& theta_laws();

const TransformLaw& find_law(const std::vector<TransformLaw>& laws, const std::string& id);

// Deterministic sample points: S-laws get tau near i with small v, T-laws
// get Im(tau) >= 1.
std::vector<Sample> default_samples(LawAction action, int count, unsigned seed);

// Evaluate the law at every sample. The residual |LHS - RHS| must stay
// below tail(LHS) + tail(RHS) + a working-precision floor and below 1e-10.
// SamplePointOutOfDomain when a sample or its image lies outside
// Im(tau) >= 1/2 or has |Im v| above half of Im(tau).
VerificationReport check_transformation(const TransformLaw& law, const std::vector<Sample>& samples,
                                        QExp order, unsigned bits);

// Helpers shared with the genus module's laws.
Complex apply_action(LawAction action, const Complex& tau);
void check_domain(const Complex& v, const Complex& tau);

}  // namespace ellipt
