#pragma once

#include <map>
#include <string>
#include <vector>

namespace ellipt {

enum class CheckStatus { Pass, Fail, Info };

std::string status_name(CheckStatus s);

// One check inside a report: an identifier, its outcome, a residual
// rendered as text, and the truncation orders it ran at.
struct CheckEntry {
  std::string id;
  CheckStatus status = CheckStatus::Pass;
  std::string residual;
  std::string detail;
  std::map<std::string, std::string> orders;
};

struct VerificationReport {
  std::string title;
  std::vector<CheckEntry> entries;

  bool passed() const;  // no entry failed
  void add(CheckEntry e) { entries.push_back(std::move(e)); }
  void merge(const VerificationReport& other);
  std::size_t count(CheckStatus s) const;
};

// Aligned text block for people.
std::string render_human(const VerificationReport& r);
// JSON block for machines; parse_report_json(render_json(r)) == r.
std::string render_json(const VerificationReport& r);
VerificationReport parse_report_json(const std::string& text);

bool operator==(const CheckEntry& a, const CheckEntry& b);
bool operator==(const VerificationReport& a, const VerificationReport& b);

}  // namespace ellipt
