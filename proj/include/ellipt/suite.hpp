#pragma once

#include <string>
#include <vector>

#include "ellipt/anomaly.hpp"

namespace ellipt {

struct SuiteModel {
  std::string name;
  ManifoldModel model;
};

// Root-asymmetric models (make_skew_model): odd with E for d = 3..12 and even
// with one V block for d = 3..11, each with 0..2 extra zero W-roots, plus the
// same ranges with rotated W-roots.
const std::vector<SuiteModel>& theorem_suite();

// Paired-roots models (make_test_model) for the dual-path comparison: even
// with and without V, odd with E, d - l = 0..6, top degree <= 12.
const std::vector<SuiteModel>& paired_suite();

// Run a registered case on every suite model meeting its hypotheses, each
// with its own functional and `extra_functionals` random ones. `max_models`
// caps the number of models (-1: all). The report notes how many models ran
// and how many carried a nonzero referenced coefficient.
VerificationReport run_case_on_suite(const TheoremCase& c, const std::vector<SuiteModel>& suite,
                                     int extra_functionals = 3, int max_models = -1);

// Closed formulas on every applicable suite model.
VerificationReport run_formula_on_suite(const std::string& which, const std::vector<SuiteModel>& suite,
                                        int max_models = -1);

}  // namespace ellipt
