#include "ellipt/model_io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "ellipt/errors.hpp"
#include "json.hpp"

namespace ellipt {

using nlohmann::json;

namespace {

mpq_class parse_rational(const std::string& s, const std::string& whole) {
  try {
    mpq_class q(s.empty() ? "0" : s, 10);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + whole + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed number '" + whole + "'");
  }
}

}  // namespace

GaussRat parse_gauss(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  static const std::regex num(R"([+-]?\d+(/\d+)?)");
  static const std::regex imag(R"(([+-]?)(\d+(/\d+)?)?i)");
  static const std::regex both(R"(([+-]?\d+(/\d+)?)([+-])(\d+(/\d+)?)?i)");
  std::smatch m;
  auto strip_plus = [](std::string t) { return !t.empty() && t[0] == '+' ? t.substr(1) : t; };
  if (std::regex_match(s, m, num)) return GaussRat(parse_rational(strip_plus(s), raw));
  if (std::regex_match(s, m, imag)) {
    mpq_class b = m[2].matched ? parse_rational(m[2].str(), raw) : mpq_class(1);
    if (m[1].str() == "-") b = -b;
    return GaussRat(0, b);
  }
  if (std::regex_match(s, m, both)) {
    mpq_class b = m[4].matched ? parse_rational(m[4].str(), raw) : mpq_class(1);
    if (m[3].str() == "-") b = -b;
    return GaussRat(parse_rational(strip_plus(m[1].str()), raw), b);
  }
  throw ParseError("malformed Gaussian rational '" + raw + "'");
}

std::string format_gauss(const GaussRat& g) { return g.str(); }

namespace {

GaussRat coefficient(const json& j, const std::string& where) {
  if (j.is_number_integer()) return GaussRat(j.get<long>());
  if (j.is_string()) return parse_gauss(j.get<std::string>());
  throw ParseError(where + ": coefficients are integers or strings, got " + j.dump());
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

LinearForm parse_root(const json& j, int g, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != g)
    throw ParseError(where + ": a root is a list of " + std::to_string(g) + " coefficients, got " + j.dump());
  LinearForm f;
  for (const auto& c : j) f.push_back(Scalar(coefficient(c, where)));
  return f;
}

std::vector<LinearForm> parse_roots(const json& j, int g, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of roots");
  std::vector<LinearForm> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_root(j[i], g, where + "[" + std::to_string(i) + "]"));
  return out;
}

BundleModel parse_bundle(const json& j, BundleRole role, int g, const std::string& where) {
  BundleModel b{role, {}, {}};
  if (j.is_array()) {
    b.positive = parse_roots(j, g, where);
  } else if (j.is_object()) {
    if (j.contains("positive")) b.positive = parse_roots(j.at("positive"), g, where + ".positive");
    if (j.contains("negative")) b.negative = parse_roots(j.at("negative"), g, where + ".negative");
  } else {
    throw ParseError(where + ": a bundle is a root list or {positive, negative}");
  }
  return b;
}

Scalar term_value(const json& t, const std::string& where) {
  const GaussRat c = coefficient(field(t, "value", where), where);
  int k = 0;
  if (t.contains("pi")) {
    if (!t.at("pi").is_number_integer()) throw ParseError(where + ": 'pi' must be an integer");
    k = t.at("pi").get<int>();
  }
  if (k < 0) throw ParseError(where + ": negative pi powers are not supported");
  return Scalar::pi_power(k, c);
}

// Terms into (basis index -> value); `top` restricts to top-degree monomials.
std::map<int, Scalar> parse_terms(const json& j, const GeneratorBasis& b, bool top, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of terms");
  std::map<int, Scalar> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const json& mono = field(j[i], "monomial", w);
    if (!mono.is_array()) throw ParseError(w + ": 'monomial' is an exponent list");
    std::vector<int> e;
    for (const auto& x : mono) {
      if (!x.is_number_integer()) throw ParseError(w + ": exponents are integers");
      e.push_back(x.get<int>());
    }
    if (static_cast<int>(e.size()) != b.generators())
      throw ParseError(w + ": exponent list has " + std::to_string(e.size()) + " entries, expected " +
                       std::to_string(b.generators()));
    for (int x : e)
      if (x < 0) throw ParseError(w + ": negative exponent");
    const int idx = b.index_of(e);
    if (idx < 0) throw ParseError(w + ": monomial exceeds the top degree");
    if (top && b.degree(idx) != b.top_degree()) throw ParseError(w + ": functional monomials must have top degree");
    out[idx] += term_value(j[i], w);
  }
  return out;
}

CohomClass parse_class(const json& j, const BasisPtr& b, const std::string& where) {
  CohomClass c(b);
  for (const auto& [idx, v] : parse_terms(j, *b, false, where)) c.set_coeff(idx, v);
  return c;
}

json scalar_fields(const Scalar& s) {
  int k = 0;
  const auto g = s.as_monomial(&k);
  if (!g) throw InvalidModel("coefficient " + s.str() + " is not a Gaussian rational times a power of pi");
  json t;
  if (g->is_real() && g->re().get_den() == 1 && g->re().get_num().fits_slong_p())
    t["value"] = g->re().get_num().get_si();
  else
    t["value"] = format_gauss(*g);
  if (k != 0) t["pi"] = k;
  return t;
}

json coefficient_json(const Scalar& s) {
  const auto g = s.as_gauss_rational();
  if (!g) throw InvalidModel("root coefficient " + s.str() + " is not a Gaussian rational");
  if (g->is_real() && g->re().get_den() == 1 && g->re().get_num().fits_slong_p()) return g->re().get_num().get_si();
  return format_gauss(*g);
}

json roots_json(const std::vector<LinearForm>& roots) {
  json a = json::array();
  for (const auto& r : roots) {
    json f = json::array();
    for (const auto& c : r) f.push_back(coefficient_json(c));
    a.push_back(f);
  }
  return a;
}

json bundle_json(const BundleModel& b) {
  if (b.negative.empty()) return roots_json(b.positive);
  return json{{"positive", roots_json(b.positive)}, {"negative", roots_json(b.negative)}};
}

json terms_json(const GeneratorBasis& b, const std::function<Scalar(int)>& at) {
  json a = json::array();
  for (int i = 0; i < b.size(); ++i) {
    const Scalar v = at(i);
    if (v.is_zero()) continue;
    json t = scalar_fields(v);
    t["monomial"] = b.exponents(i);
    a.push_back(t);
  }
  return a;
}

}  // namespace

ManifoldModel parse_model_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("model file must be a JSON object");
  try {
    ManifoldModel m;
    const json& meta = field(j, "meta", "model");
    const json& dim = field(meta, "dimension", "meta");
    if (!dim.is_number_integer() || dim.get<int>() < 0) throw ParseError("meta.dimension must be a nonnegative integer");
    m.dimension = dim.get<int>();
    if (meta.contains("flags"))
      for (const auto& f : meta.at("flags")) {
        if (!f.is_string()) throw ParseError("meta.flags entries are strings");
        m.flags.push_back(f.get<std::string>());
      }
    const json& gens = field(j, "generators", "model");
    std::vector<std::string> names;
    if (gens.is_array()) {
      for (const auto& n : gens) {
        if (!n.is_string()) throw ParseError("generators are listed by name");
        names.push_back(n.get<std::string>());
      }
    } else if (gens.is_number_integer()) {
      for (int i = 0; i < gens.get<int>(); ++i) names.push_back("t" + std::to_string(i + 1));
    } else {
      throw ParseError("generators: a list of names or a count");
    }
    const int g = static_cast<int>(names.size());
    m.basis = std::make_shared<const GeneratorBasis>(g, m.dimension / 2, names);

    const json& bundles = field(j, "bundles", "model");
    m.tm = parse_bundle(field(bundles, "tm", "bundles"), BundleRole::TM, g, "bundles.tm");
    if (bundles.contains("tm_split")) m.tm_split = parse_roots(bundles.at("tm_split"), g, "bundles.tm_split");
    if (!bundles.contains("w")) throw MissingBundle("bundles.w is missing (write \"w\": [] for a rank-0 W)");
    m.w = parse_bundle(bundles.at("w"), BundleRole::W, g, "bundles.w");
    if (bundles.contains("v")) m.v = parse_bundle(bundles.at("v"), BundleRole::V, g, "bundles.v");
    if (bundles.contains("e")) {
      const json& e = bundles.at("e");
      TransgressionData t;
      const json& rank = field(e, "rank", "bundles.e");
      if (!rank.is_number_integer()) throw ParseError("bundles.e.rank must be an integer");
      t.rank = rank.get<int>();
      if (e.contains("components")) {
        const json& comps = e.at("components");
        if (!comps.is_object()) throw ParseError("bundles.e.components maps degree to a class");
        for (const auto& [key, val] : comps.items()) {
          int deg = 0;
          try {
            std::size_t used = 0;
            deg = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
          } catch (const std::exception&) {
            throw ParseError("bundles.e.components key '" + key + "' is not an integer");
          }
          t.components[deg] = parse_class(val, m.basis, "bundles.e.components." + key);
        }
      }
      if (e.contains("delta")) t.delta_override = parse_class(e.at("delta"), m.basis, "bundles.e.delta").times_sigma();
      m.e = t;
    }
    m.functional = parse_terms(field(j, "functional", "model"), *m.basis, true, "functional");
    validate(m);
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
}

ManifoldModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_json(ss.str());
}

std::string serialize_model(const ManifoldModel& m) {
  const GeneratorBasis& b = *m.basis;
  json j;
  j["meta"] = {{"dimension", m.dimension}, {"flags", m.flags}};
  j["generators"] = b.names();
  json bundles;
  bundles["tm"] = bundle_json(m.tm);
  if (m.tm_split) bundles["tm_split"] = roots_json(*m.tm_split);
  if (m.w) bundles["w"] = bundle_json(*m.w);
  if (m.v) bundles["v"] = bundle_json(*m.v);
  if (m.e) {
    json e;
    e["rank"] = m.e->rank;
    json comps = json::object();
    for (const auto& [deg, c] : m.e->components)
      comps[std::to_string(deg)] = terms_json(b, [&](int i) { return c.coeff(i); });
    e["components"] = comps;
    if (m.e->delta_override) {
      const CohomClass& d = *m.e->delta_override;
      e["delta"] = terms_json(b, [&](int i) { return d.odd_coeff(i); });
    }
    bundles["e"] = e;
  }
  j["bundles"] = bundles;
  j["functional"] = terms_json(b, [&](int i) {
    auto it = m.functional.find(i);
    return it == m.functional.end() ? Scalar() : it->second;
  });
  return j.dump(2) + "\n";
}

bool same_model(const ManifoldModel& a, const ManifoldModel& b) {
  if (a.dimension != b.dimension || !a.basis || !b.basis || !(*a.basis == *b.basis) ||
      a.basis->names() != b.basis->names())
    return false;
  if (!(a.tm == b.tm) || a.w != b.w || a.v != b.v || a.tm_split != b.tm_split || a.flags != b.flags) return false;
  auto clean = [](const std::map<int, Scalar>& f) {
    std::map<int, Scalar> r;
    for (const auto& [k, v] : f)
      if (!v.is_zero()) r.emplace(k, v);
    return r;
  };
  if (clean(a.functional) != clean(b.functional)) return false;
  if (a.e.has_value() != b.e.has_value()) return false;
  if (a.e) {
    if (a.e->rank != b.e->rank) return false;
    auto nonzero = [](const std::map<int, CohomClass>& c) {
      std::map<int, const CohomClass*> r;
      for (const auto& [k, v] : c)
        if (!v.is_zero()) r.emplace(k, &v);
      return r;
    };
    const auto ca = nonzero(a.e->components), cb = nonzero(b.e->components);
    if (ca.size() != cb.size()) return false;
    for (const auto& [k, v] : ca) {
      auto it = cb.find(k);
      if (it == cb.end() || !(*v == *it->second)) return false;
    }
    if (a.e->delta_override.has_value() != b.e->delta_override.has_value()) return false;
    if (a.e->delta_override && !(*a.e->delta_override == *b.e->delta_override)) return false;
  }
  return true;
}

}  // namespace ellipt
