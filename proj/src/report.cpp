#include "ellipt/report.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "ellipt/errors.hpp"

namespace ellipt {

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Info: return "info";
  }
  return "?";
}

namespace {

CheckStatus parse_status(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "info") return CheckStatus::Info;
  throw ParseError("unknown check status '" + s + "'");
}

}  // namespace

bool VerificationReport::passed() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const CheckEntry& e) { return e.status == CheckStatus::Fail; });
}

void VerificationReport::merge(const VerificationReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

std::size_t VerificationReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [s](const CheckEntry& e) { return e.status == s; }));
}

std::string render_human(const VerificationReport& r) {
  std::size_t w = 2;
  for (const auto& e : r.entries) w = std::max(w, e.id.size());
  std::ostringstream os;
  if (!r.title.empty()) os << r.title << "\n";
  for (const auto& e : r.entries) {
    os << "  " << e.id << std::string(w - e.id.size() + 2, ' ') << status_name(e.status);
    if (!e.residual.empty()) os << "  residual " << e.residual;
    if (!e.orders.empty()) {
      os << "  [";
      bool first = true;
      for (const auto& [k, v] : e.orders) {
        os << (first ? "" : ", ") << k << "=" << v;
        first = false;
      }
      os << "]";
    }
    if (!e.detail.empty()) os << "  " << e.detail;
    os << "\n";
  }
  os << "  " << r.count(CheckStatus::Pass) << " passed, " << r.count(CheckStatus::Fail) << " failed, "
     << r.count(CheckStatus::Info) << " informational\n";
  return os.str();
}

std::string render_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["title"] = r.title;
  j["passed"] = r.passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json c;
    c["id"] = e.id;
    c["status"] = status_name(e.status);
    c["residual"] = e.residual;
    c["detail"] = e.detail;
    c["orders"] = e.orders;
    j["checks"].push_back(c);
  }
  return j.dump(2);
}

VerificationReport parse_report_json(const std::string& text) {
  VerificationReport r;
  try {
    auto j = nlohmann::json::parse(text);
    r.title = j.at("title").get<std::string>();
    for (const auto& c : j.at("checks")) {
      CheckEntry e;
      e.id = c.at("id").get<std::string>();
      e.status = parse_status(c.at("status").get<std::string>());
      e.residual = c.at("residual").get<std::string>();
      e.detail = c.at("detail").get<std::string>();
      e.orders = c.at("orders").get<std::map<std::string, std::string>>();
      r.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed report: ") + ex.what());
  }
  return r;
}

bool operator==(const CheckEntry& a, const CheckEntry& b) {
  return a.id == b.id && a.status == b.status && a.residual == b.residual && a.detail == b.detail &&
         a.orders == b.orders;
}

bool operator==(const VerificationReport& a, const VerificationReport& b) {
  return a.title == b.title && a.entries == b.entries;
}

}  // namespace ellipt
