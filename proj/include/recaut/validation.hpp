#pragma once

#include <string>
#include <vector>

namespace recaut {

struct Violation {
  std::string rule;
  std::string detail;
};

/// Outcome of checking a model's invariants. Empty means valid.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string rule, std::string detail) { violations.push_back({std::move(rule), std::move(detail)}); }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  std::string str() const {
    std::string out;
    for (const auto& v : violations) out += v.rule + ": " + v.detail + "\n";
    return out;
  }
};

}  // namespace recaut
