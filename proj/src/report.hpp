#pragma once

#include <string>
#include <vector>

namespace hopfforge {

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;  // empty when passing or self-explanatory
};

struct Report {
  std::string suite;
  int p = 0;
  uint64_t seed = 0;
  std::vector<Check> checks;
  double ms = 0;

  void add(const std::string& name, bool pass, const std::string& witness = "") {
    checks.push_back(Check{name, pass, witness});
  }
  void merge(const Report& sub, const std::string& prefix) {
    for (const Check& c : sub.checks) checks.push_back(Check{prefix + c.name, c.pass, c.witness});
  }
  bool all_pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace hopfforge
