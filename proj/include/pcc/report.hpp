// Uniform job reports: an ordered list of numeric values, pass/fail verdicts,
// and free-text notes, rendered as human text or as a structured (JSON)
// document with identical numeric content.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pcc {

struct ReportEntry {
  std::string key;
  std::optional<long long> value;
  std::optional<bool> verdict;
  std::string note;
};

struct JobReport {
  std::string task;
  std::vector<ReportEntry> entries;

  void value(const std::string& key, long long v);
  void check(bool pass, const std::string& key);
  void note(const std::string& key, const std::string& text);
  bool ok() const;  // no failed verdicts

  std::string to_text() const;
  std::string to_structured() const;  // JSON
};

}  // namespace pcc
