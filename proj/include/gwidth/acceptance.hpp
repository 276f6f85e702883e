#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwidth/report.hpp"

namespace gw {

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  CheckReport report;
  std::string error;  // exception text, if the run threw
  bool passed() const { return error.empty() && !report.links.empty() && report.holds(); }
  nlohmann::json to_json() const;
};

constexpr int kCriteria = 14;
std::string criterion_title(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});
// All criteria when ids is empty.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}, const std::vector<int>& ids = {});

}  // namespace gw
