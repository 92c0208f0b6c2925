#pragma once

// One numerical check in a verification report.

#include <string>
#include <vector>

#include "json.hpp"

namespace adjrmat {

struct CheckResult {
  std::string id;     // short identifier, unique within a suite
  std::string claim;  // the statement being checked
  double residual = 0.0;
  double threshold = 0.0;
  bool lower_bound = false;  // pass means residual > threshold
  bool pass = false;
  nlohmann::json detail = nlohmann::json::object();

  static CheckResult make(std::string id, std::string claim, double residual, double threshold,
                          nlohmann::json detail = nlohmann::json::object()) {
    // NaN never passes.
    const bool ok = residual <= threshold;
    return {std::move(id), std::move(claim), residual, threshold, false, ok, std::move(detail)};
  }

  static CheckResult at_least(std::string id, std::string claim, double value, double bound,
                              nlohmann::json detail = nlohmann::json::object()) {
    const bool ok = value > bound;
    return {std::move(id), std::move(claim), value, bound, true, ok, std::move(detail)};
  }

  static CheckResult failure(std::string id, std::string claim, const std::string& error) {
    return {std::move(id), std::move(claim), 0.0, 0.0, false, false, {{"error", error}}};
  }
};

inline nlohmann::json to_json(const CheckResult& c) {
  nlohmann::json j = {{"id", c.id},
                      {"claim", c.claim},
                      {"residual", c.residual},
                      {"threshold", c.threshold},
                      {"bound", c.lower_bound ? "lower" : "upper"},
                      {"pass", c.pass}};
  for (auto it = c.detail.begin(); it != c.detail.end(); ++it) j[it.key()] = it.value();
  return j;
}

inline bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace adjrmat
