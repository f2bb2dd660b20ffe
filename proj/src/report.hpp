#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qhd {

// One verified identity: `anchor` is the stable id of the identity being
// checked, `residual` the max-abs difference between its two sides.
struct Check {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  bool pass = false;
  std::string detail;
};

struct Report {
  double tol = 1e-9;
  std::vector<Check> checks;

  Check& add(std::string name, std::string anchor, double residual, std::string detail = "");
  // Boolean-style check: residual 0 on pass, 1 on failure.
  Check& require(std::string name, std::string anchor, bool ok, std::string detail = "");
  void merge(const Report& other);
  bool all_pass() const;
  double worst_residual() const;
  const Check* find(const std::string& name) const;
  void to_jsonl(std::ostream& os) const;
  std::string jsonl() const;
};

}  // namespace qhd
