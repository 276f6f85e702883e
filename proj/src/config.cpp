#include "gwidth/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace gw {

namespace {

template <class T>
T get_as(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: bad value for '" + key + "': " + e.what());
  }
}

void only_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  require(j.is_object(), "config: " + where + " must be an object");
  for (const auto& [k, v] : j.items())
    require(allowed.count(k) > 0, "config: unknown key '" + k + "' in " + where);
}

}  // namespace

Vec log_grid(double lo, double hi, int count) {
  require(lo > 0.0 && hi >= lo && count >= 1, "sigma grid: need 0 < min <= max and count >= 1");
  Vec v(count);
  for (int k = 0; k < count; ++k)
    v[k] = count == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (count - 1));
  v.front() = lo;
  if (count > 1) v.back() = hi;
  return v;
}

Vec parse_sigma_grid(const nlohmann::json& j) {
  Vec v;
  if (j.is_array()) {
    for (const auto& x : j) {
      require(x.is_number(), "sigma grid: entries must be numbers");
      v.push_back(x.get<double>());
    }
  } else {
    only_keys(j, {"log"}, "sigmas");
    const auto& g = j.at("log");
    only_keys(g, {"min", "max", "count"}, "sigmas.log");
    v = log_grid(get_as<double>(g, "min"), get_as<double>(g, "max"), get_as<int>(g, "count"));
  }
  require(!v.empty(), "sigma grid: empty");
  for (double s : v) require(s >= 0.0 && std::isfinite(s), "sigma grid: values must be finite and >= 0");
  return v;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  only_keys(j, {"body", "seed", "samples", "sigmas", "quadrature", "solver", "output", "checks", "params"}, "config");
  ExperimentConfig c;
  if (j.contains("body")) {
    c.body = j.at("body");
    ConvexBody::from_json(*c.body);  // validate now
  }
  if (j.contains("seed")) {
    require(j.at("seed").is_number_unsigned(), "config: seed must be a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("samples")) {
    require(j.at("samples").is_number_unsigned() && j.at("samples").get<std::uint64_t>() >= 2,
            "config: samples must be an integer >= 2");
    c.samples = j.at("samples").get<std::size_t>();
  }
  if (j.contains("sigmas")) c.sigmas = parse_sigma_grid(j.at("sigmas"));
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    only_keys(q, {"nodes", "max_doublings", "stability", "nu0_factor", "upper_factor"}, "quadrature");
    if (q.contains("nodes")) c.quadrature.nodes = get_as<int>(q, "nodes");
    if (q.contains("max_doublings")) c.quadrature.max_doublings = get_as<int>(q, "max_doublings");
    if (q.contains("stability")) c.quadrature.stability = get_as<double>(q, "stability");
    if (q.contains("nu0_factor")) c.quadrature.nu0_factor = get_as<double>(q, "nu0_factor");
    if (q.contains("upper_factor")) c.quadrature.upper_factor = get_as<double>(q, "upper_factor");
    require(c.quadrature.nodes >= 8 && c.quadrature.max_doublings >= 0 && c.quadrature.stability > 0 &&
                c.quadrature.nu0_factor > 0 && c.quadrature.upper_factor > 1,
            "config: invalid quadrature settings");
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    only_keys(s, {"rel_tol", "max_iter"}, "solver");
    if (s.contains("rel_tol")) c.solver.rel_tol = get_as<double>(s, "rel_tol");
    if (s.contains("max_iter")) c.solver.max_iter = get_as<int>(s, "max_iter");
    require(c.solver.rel_tol > 0 && c.solver.rel_tol < 0.1 && c.solver.max_iter >= 10, "config: invalid solver settings");
  }
  if (j.contains("output")) {
    require(j.at("output").is_string(), "config: output must be a path prefix string");
    c.out = j.at("output").get<std::string>();
  }
  if (j.contains("checks")) {
    require(j.at("checks").is_object(), "config: checks must be an object of booleans");
    for (const auto& [k, v] : j.at("checks").items()) {
      require(v.is_boolean(), "config: check toggle '" + k + "' must be boolean");
      c.checks[k] = v.get<bool>();
    }
  }
  if (j.contains("params")) {
    require(j.at("params").is_object(), "config: params must be an object");
    c.params = j.at("params");
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: parse error in '" + path + "': " + e.what());
  }
  return from_json(j);
}

ConvexBody ExperimentConfig::make_body() const {
  require(body.has_value(), "config: a body descriptor is required for this subcommand");
  return ConvexBody::from_json(*body);
}

bool ExperimentConfig::check_enabled(const std::string& name) const {
  const auto it = checks.find(name);
  return it == checks.end() || it->second;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  if (body) j["body"] = *body;
  j["seed"] = seed;
  j["samples"] = samples;
  j["sigmas"] = sigmas;
  j["quadrature"] = {{"nodes", quadrature.nodes},
                     {"max_doublings", quadrature.max_doublings},
                     {"stability", quadrature.stability},
                     {"nu0_factor", quadrature.nu0_factor},
                     {"upper_factor", quadrature.upper_factor}};
  j["solver"] = {{"rel_tol", solver.rel_tol}, {"max_iter", solver.max_iter}};
  j["output"] = out;
  j["checks"] = checks;
  j["params"] = params;
  return j;
}

}  // namespace gw
