#include "gwidth/report.hpp"

#include <cmath>

#ifndef GW_VERSION_HASH
#define GW_VERSION_HASH "unknown"
#endif

namespace gw {

CheckLink& CheckReport::add(const std::string& link, double lhs, double rhs, double slack) {
  CheckLink c{link, lhs, rhs, slack, false};
  c.holds = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + slack;
  links.push_back(c);
  return links.back();
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (CheckLink l : other.links) {
    l.name = prefix + l.name;
    links.push_back(l);
  }
  for (const auto& [k, v] : other.recorded) recorded[prefix + k] = v;
  for (const auto& n : other.notes) notes.push_back(prefix + n);
}

bool CheckReport::holds() const {
  for (const auto& l : links)
    if (!l.holds) return false;
  return true;
}

std::vector<std::string> CheckReport::failures() const {
  std::vector<std::string> out;
  for (const auto& l : links)
    if (!l.holds) out.push_back(l.name);
  return out;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["holds"] = holds();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& l : links)
    arr.push_back({{"name", l.name}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"slack", l.slack}, {"margin", l.margin()},
                   {"holds", l.holds}});
  j["links"] = arr;
  j["recorded"] = recorded;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

std::string version_hash() { return GW_VERSION_HASH; }

}  // namespace gw
