#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace gw {

// One inequality lhs <= rhs + slack.
struct CheckLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
  double margin() const { return rhs + slack - lhs; }
};

// Named chain of inequalities plus recorded diagnostics (empirical constants,
// ratios). Diagnostics never affect holds().
struct CheckReport {
  std::string name;
  std::vector<CheckLink> links;
  std::map<std::string, double> recorded;
  std::vector<std::string> notes;

  CheckLink& add(const std::string& link, double lhs, double rhs, double slack = 0.0);
  void record(const std::string& key, double value) { recorded[key] = value; }
  void merge(const CheckReport& other, const std::string& prefix = "");
  bool holds() const;
  std::vector<std::string> failures() const;
  nlohmann::json to_json() const;
};

std::string version_hash();

}  // namespace gw
