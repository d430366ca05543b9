#include "ellipt/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ellipt/errors.hpp"
#include "ellipt/model_io.hpp"
#include "ellipt/suite.hpp"
#include "ellipt/transform.hpp"
#include "json.hpp"

namespace ellipt {

namespace {

// Thrown for malformed command arguments (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the model or the requested case's hypotheses are invalid (exit 3).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

QExp parse_order(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    const long p = std::stol(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
    long q = 1;
    if (slash != std::string::npos) {
      q = std::stol(s.substr(slash + 1), &used);
      if (used != s.size() - slash - 1 || q <= 0) throw std::invalid_argument(s);
    }
    if (p < 0) throw std::invalid_argument(s);
    return QExp::rational(p, q);
  } catch (const std::exception&) {
    throw UsageError("order '" + s + "' is not a nonnegative rational");
  }
}

int parse_index(const std::string& s, int lo, int hi, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size() || v < lo || v > hi) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + " '" + s + "' must be an integer in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
}

ManifoldModel load_or_fail(const std::string& path) {
  try {
    return load_model(path);
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

// ---------------------------------------------------------------------------
// expand

QYSeries<Scalar> expand_object(const std::string& obj, QExp n, bool at_zero) {
  const auto colon = obj.find(':');
  const std::string head = obj.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : obj.substr(colon + 1);
  auto need_arg = [&]() {
    if (arg.empty()) throw UsageError("object '" + head + "' needs an argument, e.g. " + head + ":1");
  };
  if (head == "theta") {
    need_arg();
    ThetaKind k;
    try {
      k = parse_theta_kind(arg);
    } catch (const Error&) {
      throw UsageError("unknown theta kind '" + arg + "' (expected t, t1, t2, t3)");
    }
    return at_zero ? theta_null(k, n) : theta_series(k, n);
  }
  if (!arg.empty() && (head == "eta" || head == "g2" || head == "thetaprime"))
    throw UsageError("object '" + head + "' takes no argument");
  if (head == "eta") return eta(n);
  if (head == "g2") return g2(n);
  if (head == "thetaprime") return theta_prime_zero(n);
  if (head == "eisenstein") {
    need_arg();
    const int k = parse_index(arg, 2, 64, "Eisenstein weight");
    if (k % 2) throw UsageError("Eisenstein weight must be even");
    return eisenstein(k, n);
  }
  if (head == "delta" || head == "eps") {
    need_arg();
    return delta_eps(parse_index(arg, 1, 3, "index"), head == "delta" ? DeltaEps::Delta : DeltaEps::Eps, n);
  }
  throw UsageError("unknown object '" + obj + "' (theta:KIND, thetaprime, eta, g2, eisenstein:K, delta:I, eps:I)");
}

// ---------------------------------------------------------------------------
// genus

struct FamilySpec {
  std::string code;  // genus_by_name code, or "phi"/"phig"
  int index = 0;
};

FamilySpec parse_family(const std::string& s) {
  auto digit = [&](const std::string& prefix) -> int {
    if (s.size() == prefix.size() + 1 && s.rfind(prefix, 0) == 0 && s.back() >= '1' && s.back() <= '3')
      return s.back() - '0';
    return 0;
  };
  if (s == "ell" || s == "ell-odd") return {"ell", 0};
  for (const char* p : {"ell", "ell-even-"})
    if (int a = digit(p)) return {"ell" + std::to_string(a), a};
  for (const char* p : {"ellg", "ell-odd-g-"})
    if (int a = digit(p)) return {"ellg" + std::to_string(a), a};
  for (const char* p : {"phi", "phi-"})
    if (int a = digit(p)) return {"phi", a};
  for (const char* p : {"phig", "phi-g-"})
    if (int a = digit(p)) return {"phig", a};
  if (s == "phi-l") return {"phi", 1};
  if (s == "phi-w") return {"phi", 2};
  if (s == "phi-wstar") return {"phi", 3};
  throw UsageError("unknown family '" + s +
                   "' (ell | ell-odd, ell1..3 | ell-even-1..3, ellg1..3 | ell-odd-g-1..3, phi1..3, phig1..3)");
}

int cmd_genus(const std::string& model_path, const std::string& family, const std::string& path,
              const std::string& order_q, int order_z, const std::string& json_path, std::ostream& out,
              std::ostream& err) {
  const FamilySpec fam = parse_family(family);
  GenusPath p;
  try {
    p = parse_path(path);
  } catch (const Error&) {
    throw UsageError("unknown path '" + path + "' (bundle, theta, both)");
  }
  const QExp n = parse_order(order_q);
  if (order_z < 0 || order_z > 8) throw UsageError("--order-z must be in 0..8");
  const ManifoldModel m = load_or_fail(model_path);
  nlohmann::json j;
  j["model"] = model_path;
  j["order_q"] = n.str();
  if (fam.code == "phi" || fam.code == "phig") {
    PhiResult r;
    try {
      r = fam.code == "phi" ? phi_genus(m, fam.index, n) : phi_genus_odd(m, fam.index, n);
    } catch (const PathMismatch&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(e.what());
    }
    err << "# " << r.family << "\n";
    for (const auto& note : r.notes) err << "# note: " << note << "\n";
    out << "series: " << to_string(r.series) << "\n";
    j["family"] = r.family;
    j["series"] = to_string(r.series);
    j["notes"] = r.notes;
  } else {
    GenusResult g;
    try {
      g = genus_by_name(m, fam.code, n, p);
    } catch (const PathMismatch&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(e.what());
    }
    err << "# " << g.family << " via";
    for (const auto& s : g.paths) err << " " << s;
    err << "\n";
    for (const auto& note : g.notes) err << "# note: " << note << "\n";
    out << "series: " << to_string(g.series) << "\n";
    if (g.residual) out << "residual: " << to_string(*g.residual) << "\n";
    j["family"] = g.family;
    j["paths"] = g.paths;
    j["series"] = to_string(g.series);
    if (g.residual) j["residual"] = to_string(*g.residual);
    j["notes"] = g.notes;
    if (order_z > 0) {
      const CoefficientFamily f = extract_coefficients(g.series, m.l(), order_z, n);
      nlohmann::json coeffs = nlohmann::json::array();
      for (int k = 0; k <= order_z; ++k) {
        out << "a_" << k << ": " << to_string(f.a[k]) << "\n";
        coeffs.push_back(to_string(f.a[k]));
      }
      j["coefficients"] = coeffs;
    }
  }
  if (!json_path.empty()) write_file(json_path, j.dump(2) + "\n");
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

const std::vector<std::string> kSuites = {"theta-laws", "theorems", "formulas"};

VerificationReport theta_law_suite(QExp order, unsigned bits, int samples) {
  VerificationReport rep;
  rep.title = "theta transformation laws";
  for (const auto& law : theta_laws()) {
    VerificationReport r = check_transformation(law, default_samples(law.action, samples, 7), order, bits);
    if (law.informational)
      for (auto& e : r.entries)
        if (e.status == CheckStatus::Fail) e.status = CheckStatus::Info;
    rep.merge(r);
  }
  return rep;
}

// Case token -> canonical theorem id, or empty.
std::string theorem_token(const std::string& t) {
  std::string id = t;
  for (const char* p : {"thm", "prop"})
    if (id.rfind(p, 0) == 0) id = id.substr(std::string(p).size());
  for (const auto& c : theorem_cases())
    if (c.id == id) return id;
  return "";
}

std::string formula_token(const std::string& t) {
  std::string id = t;
  for (const char* p : {"eq", "formula:", "formula"})
    if (id.rfind(p, 0) == 0) {
      id = id.substr(std::string(p).size());
      break;
    }
  const auto& ids = closed_formula_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end() ? id : "";
}

int theorem_rank(const std::string& id) {
  const auto& cs = theorem_cases();
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].id == id) return static_cast<int>(i);
  return -1;
}

struct Token {
  std::string kind;  // theorem, formula, laws, phi-laws, invariants, modularity
  std::string id;
  int rank = 0;
};

std::vector<Token> parse_cases(const std::string& list, bool have_model) {
  std::vector<Token> toks;
  std::stringstream ss(list);
  std::string t;
  while (std::getline(ss, t, ',')) {
    if (t.empty()) continue;
    if (t == "all") {
      for (const auto& c : theorem_cases()) toks.push_back({"theorem", c.id, theorem_rank(c.id)});
      for (std::size_t i = 0; i < closed_formula_ids().size(); ++i)
        toks.push_back({"formula", closed_formula_ids()[i], 1000 + static_cast<int>(i)});
      if (have_model) toks.push_back({"invariants", "", 3000});
      continue;
    }
    if (auto id = theorem_token(t); !id.empty()) {
      toks.push_back({"theorem", id, theorem_rank(id)});
    } else if (auto f = formula_token(t); !f.empty()) {
      const auto& ids = closed_formula_ids();
      toks.push_back({"formula", f, 1000 + static_cast<int>(std::find(ids.begin(), ids.end(), f) - ids.begin())});
    } else if (t == "laws" || t == "phi-laws" || t == "invariants") {
      if (!have_model) throw UsageError("case '" + t + "' needs a model file");
      toks.push_back({t, "", t == "laws" ? 2000 : t == "phi-laws" ? 2001 : 3000});
    } else if (t.rfind("modularity:", 0) == 0) {
      if (!have_model) throw UsageError("case '" + t + "' needs a model file");
      const FamilySpec f = parse_family(t.substr(11));
      if (f.code == "phi" || f.code == "phig") throw UsageError("modularity fits apply to the Ell families");
      toks.push_back({"modularity", f.code, 2500});
    } else {
      throw UsageError("unknown case '" + t + "'");
    }
  }
  std::stable_sort(toks.begin(), toks.end(), [](const Token& a, const Token& b) { return a.rank < b.rank; });
  return toks;
}

std::vector<std::string> applicable_families(const ManifoldModel& m) {
  if (m.is_odd()) return m.e ? std::vector<std::string>{"ell", "ellg1", "ellg2", "ellg3"} : std::vector<std::string>{};
  return {"ell1", "ell2", "ell3"};
}

VerificationReport invariants_report(const ManifoldModel& m, QExp n) {
  VerificationReport rep;
  rep.title = "elliptic invariants (y-support, y -> yq law)";
  for (const auto& fam : applicable_families(m)) {
    const GenusResult g = genus_by_name(m, fam, n, GenusPath::Bundle);
    for (int k = 0; k < 2; ++k) {
      CheckEntry e;
      e.id = g.family + (k == 0 ? ".y-support" : ".yq-law");
      const bool ok = k == 0 ? y_support_ok(g.series, m.l()) : yq_law_ok(g.series, m.l(), n);
      e.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
      e.residual = ok ? "0" : "nonzero";
      e.detail = k == 0 ? "exponents of y lie in Z - l/2" : "window below q^" + yq_window(m.l(), n).str();
      e.orders["N_q"] = n.str();
      rep.add(e);
    }
  }
  return rep;
}

int cmd_verify(const std::string& model_path, const std::string& suite, const std::string& cases,
               const std::string& json_path, int functionals, const std::string& order_q, int bits, int samples,
               std::ostream& out) {
  if (model_path.empty() && suite.empty() && cases.empty())
    throw UsageError("verify needs a model file, --builtin-suite or --cases");
  if (!suite.empty() && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw UsageError("unknown suite '" + suite + "' (theta-laws, theorems, formulas)");
  if (functionals < 0 || functionals > 16) throw UsageError("--functionals must be in 0..16");
  if (bits < 64 || bits > 4096) throw UsageError("--bits must be in 64..4096");
  if (samples < 1 || samples > 64) throw UsageError("--samples must be in 1..64");
  std::optional<ManifoldModel> m;
  if (!model_path.empty()) m = load_or_fail(model_path);
  const std::vector<Token> toks = parse_cases(cases.empty() && m && suite.empty() ? "all" : cases, m.has_value());

  std::vector<VerificationReport> parts;
  if (suite == "theta-laws")
    parts.push_back(theta_law_suite(order_q.empty() ? QExp::integer(40) : parse_order(order_q),
                                    static_cast<unsigned>(bits), samples));
  if (suite == "theorems")
    for (const auto& c : theorem_cases()) parts.push_back(run_case_on_suite(c, theorem_suite(), functionals));
  if (suite == "formulas")
    for (const auto& id : closed_formula_ids()) parts.push_back(run_formula_on_suite(id, theorem_suite()));

  const QExp n = order_q.empty() ? QExp::integer(2) : parse_order(order_q);
  const bool explicit_cases = !cases.empty();
  for (const auto& t : toks) {
    try {
      if (t.kind == "theorem") {
        const TheoremCase& c = theorem_case(t.id);
        if (!m) {
          parts.push_back(run_case_on_suite(c, theorem_suite(), functionals));
          continue;
        }
        const bool odd_case = c.family != "ell2";
        if (!explicit_cases && (odd_case != m->is_odd() || !c.applies(m->d(), m->l()))) continue;
        parts.push_back(verify_theorem(*m, c, functionals, 1));
      } else if (t.kind == "formula") {
        if (!m) {
          parts.push_back(run_formula_on_suite(t.id, theorem_suite()));
          continue;
        }
        const bool odd_formula = t.id.rfind("3.", 0) == 0 || t.id == "4.27" || t.id == "4.28";
        if (!explicit_cases && (odd_formula != m->is_odd() || (!odd_formula && !m->v))) continue;
        parts.push_back(closed_formula_check(*m, t.id));
      } else if (t.kind == "laws") {
        parts.push_back(check_genus_laws(*m, order_q.empty() ? QExp::integer(20) : n, static_cast<unsigned>(bits),
                                         samples));
      } else if (t.kind == "phi-laws") {
        parts.push_back(check_phi_laws(*m, order_q.empty() ? QExp::integer(20) : n, static_cast<unsigned>(bits),
                                       samples));
      } else if (t.kind == "invariants") {
        parts.push_back(invariants_report(*m, n));
      } else if (t.kind == "modularity") {
        const QExp order = order_q.empty() ? QExp::integer(5) : n;
        parts.push_back(verify_modularity(coefficient_family(*m, t.id, 2, order)));
      }
    } catch (const PathMismatch&) {
      throw;
    } catch (const InsufficientCoefficients& e) {
      throw UsageError(std::string(e.what()) + " (raise --order-q)");
    } catch (const Error& e) {
      throw ValidationError(e.what());
    }
  }

  VerificationReport all;
  all.title = model_path.empty() ? "verify " + (suite.empty() ? std::string("suite") : suite) : "verify " + model_path;
  for (const auto& p : parts) {
    out << render_human(p) << "\n";
    all.merge(p);
  }
  out << "summary: " << all.count(CheckStatus::Pass) << " pass, " << all.count(CheckStatus::Fail) << " fail, "
      << all.count(CheckStatus::Info) << " info\n";
  if (!json_path.empty()) write_file(json_path, render_json(all));
  return all.passed() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ellipt: exact q-expansions, elliptic genera and anomaly-cancellation checks"};
  app.require_subcommand(1);

  std::string object, order = "2";
  bool at_zero = false;
  auto* expand = app.add_subcommand("expand", "print the q-expansion of a theta function or modular form");
  expand->add_option("object", object, "theta:t|t1|t2|t3, thetaprime, eta, g2, eisenstein:K, delta:I, eps:I")
      ->required();
  expand->add_option("--order", order, "print terms through q^ORDER (inclusive)");
  expand->add_flag("--at-zero", at_zero, "theta null value (v = 0)");

  std::string model, family = "ell", path = "both", order_q = "2", json_path;
  int order_z = 0;
  auto* genus = app.add_subcommand("genus", "compute a genus series of a model file");
  genus->add_option("model", model, "model file (JSON)")->required();
  genus->add_option("--family", family, "ell, ell1..3, ellg1..3, phi1..3, phig1..3 (or long names)");
  genus->add_option("--path", path, "bundle, theta or both");
  genus->add_option("--order-q", order_q, "keep terms through q^N (N may be a fraction such as 3/2)");
  genus->add_option("--order-z", order_z, "also print a_0..a_K of exp(-4 pi^2 l G_2 z^2) * genus");
  genus->add_option("--json", json_path, "write a machine-readable result");

  std::string vmodel, suite, cases, vjson, vorder;
  int functionals = 3, bits = 128, samples = 5;
  auto* verify = app.add_subcommand("verify", "run transformation laws, theorem cases and closed formulas");
  verify->add_option("model", vmodel, "model file (JSON); omit to run on the built-in suite");
  verify->add_option("--builtin-suite", suite, "theta-laws, theorems, formulas");
  verify->add_option("--cases", cases,
                     "comma list: thm3.7.1, prop4.5.2, eq3.17, laws, phi-laws, invariants, modularity:FAMILY, all");
  verify->add_option("--json", vjson, "write the machine report");
  verify->add_option("--functionals", functionals, "random functionals besides the model's own (default 3)");
  verify->add_option("--order-q", vorder, "truncation order (default 40 for theta-laws, 20 for laws and phi-laws, 5 for modularity, 2 otherwise)");
  verify->add_option("--bits", bits, "working precision in bits for numeric laws");
  verify->add_option("--samples", samples, "sample points per numeric law");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*expand) {
      const QExp n = parse_order(order);
      out << to_string(expand_object(object, n, at_zero)) << "\n";
      return kExitPass;
    }
    if (*genus) return cmd_genus(model, family, path, order_q, order_z, json_path, out, err);
    if (*verify) return cmd_verify(vmodel, suite, cases, vjson, functionals, vorder, bits, samples, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const PathMismatch& e) {
    err << "internal invariant breach: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace ellipt
