#include "report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace qhd {

Check& Report::add(std::string name, std::string anchor, double residual, std::string detail) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.residual = residual;
  c.pass = residual <= tol;
  c.detail = std::move(detail);
  checks.push_back(std::move(c));
  return checks.back();
}

Check& Report::require(std::string name, std::string anchor, bool ok, std::string detail) {
  return add(std::move(name), std::move(anchor), ok ? 0.0 : 1.0, std::move(detail));
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double Report::worst_residual() const {
  double w = 0.0;
  for (const auto& c : checks) w = std::max(w, c.residual);
  return w;
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::to_jsonl(std::ostream& os) const {
  for (const auto& c : checks) {
    nlohmann::json j;
    j["check"] = c.name;
    j["anchor"] = c.anchor;
    j["residual"] = c.residual;
    j["pass"] = c.pass;
    if (!c.detail.empty()) j["detail"] = c.detail;
    os << j.dump() << "\n";
  }
}

std::string Report::jsonl() const {
  std::ostringstream os;
  to_jsonl(os);
  return os.str();
}

}  // namespace qhd
