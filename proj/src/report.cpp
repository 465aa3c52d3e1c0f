#include "pcc/report.hpp"

#include "json.hpp"

#include <sstream>

namespace pcc {

void JobReport::value(const std::string& key, long long v) {
  entries.push_back({key, v, std::nullopt, ""});
}

void JobReport::check(bool pass, const std::string& key) {
  entries.push_back({key, std::nullopt, pass, ""});
}

void JobReport::note(const std::string& key, const std::string& text) {
  entries.push_back({key, std::nullopt, std::nullopt, text});
}

bool JobReport::ok() const {
  for (const auto& e : entries)
    if (e.verdict && !*e.verdict) return false;
  return true;
}

std::string JobReport::to_text() const {
  std::ostringstream os;
  os << "task: " << task << "\n";
  for (const auto& e : entries) {
    if (e.value)
      os << e.key << " = " << *e.value << "\n";
    else if (e.verdict)
      os << (*e.verdict ? "pass: " : "FAIL: ") << e.key << "\n";
    else
      os << e.key << ": " << e.note << "\n";
  }
  os << "result: " << (ok() ? "ok" : "FAIL");
  return os.str();
}

std::string JobReport::to_structured() const {
  nlohmann::json j;
  j["task"] = task;
  j["ok"] = ok();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json je;
    je["key"] = e.key;
    if (e.value) je["value"] = *e.value;
    if (e.verdict) je["pass"] = *e.verdict;
    if (!e.note.empty()) je["note"] = e.note;
    j["entries"].push_back(je);
  }
  return j.dump(2);
}

}  // namespace pcc
