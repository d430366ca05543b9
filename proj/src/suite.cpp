#include "ellipt/suite.hpp"

#include "ellipt/errors.hpp"

namespace ellipt {

const std::vector<SuiteModel>& theorem_suite() {
  static const std::vector<SuiteModel> suite = [] {
    std::vector<SuiteModel> s;
    for (int d = 3; d <= 12; ++d)
      for (int zw = 0; zw <= 2; ++zw)
        s.push_back({"skew-odd-d" + std::to_string(d) + "-w" + std::to_string(zw),
                     make_skew_model(true, d, zw, 0, 3 + d)});
    for (int d = 3; d <= 11; ++d)
      for (int zw = 0; zw <= 2; ++zw)
        s.push_back({"skew-even-d" + std::to_string(d) + "-w" + std::to_string(zw),
                     make_skew_model(false, d, zw, 1, 3 + d)});
    for (int d = 3; d <= 12; ++d)
      s.push_back({"skew-odd-rot-d" + std::to_string(d), make_skew_model(true, d, 0, 0, 3 + d, true)});
    for (int d = 3; d <= 11; ++d)
      s.push_back({"skew-even-rot-d" + std::to_string(d), make_skew_model(false, d, 0, 1, 3 + d, true)});
    return s;
  }();
  return suite;
}

const std::vector<SuiteModel>& paired_suite() {
  static const std::vector<SuiteModel> suite = [] {
    std::vector<SuiteModel> s;
    // d - l = zero_x - zero_w.
    for (int k = 0; k <= 6; ++k) {
      TestRecipe t;
      t.generators = 2;
      t.pairs = 1;
      t.zero_x = k;
      t.v_blocks = k % 2;
      t.zero_w = k == 0 ? 1 : 0;
      t.zero_x += t.zero_w;
      t.seed = 40 + k;
      s.push_back({"paired-even-dl" + std::to_string(k) + (t.v_blocks ? "-v" : ""), make_test_model(t)});
    }
    for (int k = 0; k <= 6; ++k) {
      TestRecipe t;
      t.odd = true;
      t.twist = true;
      t.generators = k < 4 ? 2 : 1;
      t.pairs = 1;
      t.zero_x = k + 1;
      t.zero_w = 1;
      t.seed = 60 + k;
      s.push_back({"paired-odd-dl" + std::to_string(k) + "-e", make_test_model(t)});
    }
    return s;
  }();
  return suite;
}

namespace {

bool family_is_odd(const std::string& family) { return family != "ell1" && family != "ell2" && family != "ell3"; }

}  // namespace

VerificationReport run_case_on_suite(const TheoremCase& c, const std::vector<SuiteModel>& suite,
                                     int extra_functionals, int max_models) {
  VerificationReport rep;
  rep.title = c.id + " " + c.statement + " on the suite";
  int ran = 0, nonzero = 0;
  for (const auto& s : suite) {
    if (max_models >= 0 && ran >= max_models) break;
    const ManifoldModel& m = s.model;
    if (m.is_odd() != family_is_odd(c.family) || !c.applies(m.d(), m.l())) continue;
    VerificationReport r = verify_theorem(m, c, extra_functionals, 17);
    bool any = false;
    for (auto& e : r.entries) {
      any |= e.detail.find("trivially") == std::string::npos && e.id.find(".int") == std::string::npos;
      e.id = s.name + ":" + e.id;
    }
    nonzero += any;
    rep.merge(r);
    ++ran;
  }
  CheckEntry e;
  e.id = c.id + ".coverage";
  e.status = ran > 0 ? CheckStatus::Info : CheckStatus::Fail;
  e.residual = "-";
  e.detail = std::to_string(ran) + " suite models meet the hypothesis, " + std::to_string(nonzero) +
             " with nonzero referenced coefficients, " + std::to_string(extra_functionals + 1) +
             " functionals each";
  rep.add(e);
  return rep;
}

VerificationReport run_formula_on_suite(const std::string& which, const std::vector<SuiteModel>& suite,
                                        int max_models) {
  VerificationReport rep;
  rep.title = "closed formula " + which + " on the suite";
  const bool odd = which.rfind("3.", 0) == 0 || which == "4.27" || which == "4.28";
  int ran = 0;
  for (const auto& s : suite) {
    if (max_models >= 0 && ran >= max_models) break;
    if (s.model.is_odd() != odd) continue;
    if (!odd && !s.model.v) continue;
    VerificationReport r = closed_formula_check(s.model, which);
    for (auto& e : r.entries) e.id = s.name + ":" + e.id;
    rep.merge(r);
    ++ran;
  }
  return rep;
}

}  // namespace ellipt
