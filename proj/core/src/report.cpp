#include <lambdak/report.hpp>

#include <algorithm>

#include <json.hpp>

namespace lambdak {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

void Report::add(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name),
                    passed ? CheckStatus::pass : CheckStatus::fail,
                    std::move(detail)});
}

void Report::add_skipped(std::string name, std::string reason) {
  checks.push_back({std::move(name), CheckStatus::skipped, std::move(reason)});
}

void Report::sort_checks() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     return a.name < b.name;
                   });
}

bool Report::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckStatus::fail;
  });
}

size_t Report::failed_count() const {
  return static_cast<size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) {
        return c.status == CheckStatus::fail;
      }));
}

std::string Report::to_text() const {
  std::string out;
  for (const CheckResult& c : checks) {
    switch (c.status) {
      case CheckStatus::pass: out += "PASS " + c.name; break;
      case CheckStatus::fail: out += "FAIL " + c.name; break;
      case CheckStatus::skipped: out += "SKIP " + c.name; break;
    }
    if (!c.detail.empty() && c.status != CheckStatus::pass)
      out += ": " + c.detail;
    out += "\n";
  }
  out += suite + ": " + std::to_string(checks.size()) + " checks, " +
         std::to_string(failed_count()) + " failed\n";
  return out;
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["suite"] = suite;
  j["seed"] = seed;
  j["passed"] = all_passed();
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j.dump(2);
}

}  // namespace lambdak
