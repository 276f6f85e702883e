// gwlab: command-line driver. Exit codes: 0 ok, 1 failed assertion or
// numerical failure, 2 configuration error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gwidth/acceptance.hpp"
#include "gwidth/config.hpp"
#include "gwidth/decomposition.hpp"
#include "gwidth/entropy.hpp"
#include "gwidth/fixed_points.hpp"
#include "gwidth/gsm.hpp"
#include "gwidth/intrinsic_volumes.hpp"
#include "gwidth/l1_analysis.hpp"
#include "gwidth/special.hpp"
#include "gwidth/variational.hpp"

using namespace gw;
using json = nlohmann::json;

namespace {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> r) {
    require(r.size() == header.size(), "internal: CSV row width mismatch");
    rows.push_back(std::move(r));
  }

  std::string str() const {
    std::ostringstream o;
    auto quote = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    for (std::size_t k = 0; k < header.size(); ++k) o << (k ? "," : "") << quote(header[k]);
    o << "\n";
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (k) o << ",";
        if (const double* d = std::get_if<double>(&r[k])) {
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", *d);
          o << buf;
        } else if (const long long* i = std::get_if<long long>(&r[k])) {
          o << *i;
        } else {
          o << quote(std::get<std::string>(r[k]));
        }
      }
      o << "\n";
    }
    return o.str();
  }
};

struct Output {
  Table table;
  json results = json::object();
  std::vector<CheckReport> checks;
};

long long I(std::size_t v) { return static_cast<long long>(v); }
long long I(int v) { return v; }

template <class T>
T param(const ExperimentConfig& c, const std::string& key, T fallback) {
  if (!c.params.contains(key)) return fallback;
  try {
    return c.params.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config: bad value for params." + key + ": " + e.what());
  }
}

// Closed-form width where one is known; NaN otherwise.
double exact_width(const ConvexBody& T) {
  switch (T.kind()) {
    case BodyKind::Ball: return T.radius() * expected_gaussian_norm(T.dim());
    case BodyKind::L1: return T.radius() * l1_width(T.dim());
    case BodyKind::Cube: return T.radius() * T.dim() * std::sqrt(2.0 / kPi);
    default: return std::nan("");
  }
}

IntrinsicVolumeProfile profile_for(const ConvexBody& T) {
  switch (T.kind()) {
    case BodyKind::Ball: return ball_profile(T.dim(), T.radius());
    case BodyKind::Cube: return cube_profile(T.dim(), T.radius());
    case BodyKind::L1: return crosspolytope_profile(T.dim()).scaled(T.radius());
    default: throw ConfigError("intrinsic volumes are available for ball, cube and l1 bodies only");
  }
}

Output cmd_width(const ExperimentConfig& c) {
  const ConvexBody T = c.make_body();
  GaussianSampleSet s(T.dim(), c.samples, c.seed);
  const MCEstimate w = est_width(T, s);
  const double ex = exact_width(T);
  Output o;
  o.table.header = {"body", "dim", "samples", "seed", "width", "se", "exact"};
  o.table.add({T.name(), I(T.dim()), I(c.samples), static_cast<long long>(c.seed), w.value, w.se, ex});
  o.results = {{"width", w.value}, {"se", w.se}};
  if (!std::isnan(ex)) {
    o.results["exact"] = ex;
    CheckReport r;
    r.name = "width";
    if (c.check_enabled("exact_width")) r.add("|MC width - closed form| <= 4 se", std::fabs(w.value - ex), 4.0 * w.se);
    o.checks.push_back(r);
  }
  return o;
}

Output cmd_fixed_point(const ExperimentConfig& c) {
  const ConvexBody T = c.make_body();
  GaussianSampleSet s(T.dim(), c.samples, c.seed);
  LocalWidth W(T, s);
  Output o;
  o.table.header = {"sigma", "r", "T", "r_star", "r_star_2sigma", "penalized", "iterations", "converged", "chain_holds"};
  CheckReport all;
  all.name = "fixed_point_chain";
  json rows = json::array();
  for (double sg : c.sigmas) {
    require(sg > 0.0, "fixed-point: sigma must be positive");
    const FixedPointReport fr = check_chain(W, sg, c.solver);
    o.table.add({sg, fr.fp.r, fr.fp.value, fr.r_star, fr.r_star_2, fr.penalized.value, I(fr.fp.iterations),
                 I(fr.fp.converged ? 1 : 0), I(fr.chain.holds() ? 1 : 0)});
    rows.push_back(fr.to_json());
    if (c.check_enabled("chain")) all.merge(fr.chain, "sigma=" + std::to_string(sg) + " ");
  }
  o.results = {{"rows", rows}, {"mean_norm", W.mean_norm()}};
  o.checks.push_back(all);
  return o;
}

Output cmd_decompose(const ExperimentConfig& c) {
  const ConvexBody T = c.make_body();
  GaussianSampleSet s(T.dim(), c.samples, c.seed);
  LocalWidth W(T, s);
  Output o;
  o.table.header = {"kind", "sigma", "width", "width_se", "first", "second", "quad_error", "residual", "tolerance", "holds"};
  CheckReport rep;
  rep.name = "decompositions";
  json rows = json::array();
  for (double sg : c.sigmas) {
    for (int which = 0; which < 2; ++which) {
      const DecompositionResult r = which == 0 ? verify_fixed_point_decomposition(W, sg, c.quadrature, c.solver)
                                               : verify_projection_decomposition(T, s, sg, c.quadrature);
      o.table.add({r.kind, sg, r.width.value, r.width.se, r.first, r.second.value, r.second.quad_error, r.residual,
                   r.tolerance, I(r.holds ? 1 : 0)});
      rows.push_back(r.to_json());
      if (c.check_enabled(r.kind)) rep.add(r.kind + " sigma=" + std::to_string(sg), std::fabs(r.residual), r.tolerance);
    }
  }
  o.results = {{"rows", rows}};
  o.checks.push_back(rep);
  return o;
}

Output cmd_intrinsic(const ExperimentConfig& c) {
  const ConvexBody T = c.make_body();
  const IntrinsicVolumeProfile p = profile_for(T);
  Output o;
  o.table.header = {"i", "log_v", "v"};
  for (int i = 0; i <= p.d; ++i) o.table.add({I(i), p.log_v(i), std::exp(p.log_v(i))});
  o.results = {{"profile", p.to_json()}, {"log_wills", wills_log(p)}, {"peak_index", peak_index(p)}};
  if (c.check_enabled("shape")) o.checks.push_back(check_unimodal_logconcave(p));
  return o;
}

Output cmd_wills(const ExperimentConfig& c) {
  const ConvexBody T = c.make_body();
  const IntrinsicVolumeProfile p = profile_for(T);
  const double w = exact_width(T);
  GaussianSampleSet s(T.dim(), c.samples, c.seed);
  LocalWidth W(T, s);
  Output o;
  o.table.header = {"sigma", "log_wills", "sigma_log_wills", "T_sigma", "width"};
  Vec pos;
  for (double sg : c.sigmas) {
    require(sg > 0.0, "wills: sigma must be positive");
    pos.push_back(sg);
    const double lw = wills_log(p.gaussian_scaled(sg));
    o.table.add({sg, lw, sg * lw, solve_r(W, sg, c.solver).value, w});
  }
  if (c.check_enabled("mcmullen")) o.checks.push_back(check_mcmullen(p, w, pos));
  if (c.check_enabled("vitale")) o.checks.push_back(check_vitale(p, W, pos, c.solver));
  if (c.check_enabled("lower_wills")) o.checks.push_back(check_lower_wills(p, T, s));
  o.results = {{"width", w}, {"log_wills_unit", wills_log(p.gaussian_scaled(1.0))}};
  return o;
}

Output cmd_peak_index(const ExperimentConfig& c) {
  const ConvexBody T = c.make_body();
  const IntrinsicVolumeProfile p = profile_for(T);
  const double w = exact_width(T);
  Output o;
  o.table.header = {"sigma", "i_star_sigma"};
  for (double sg : c.sigmas) {
    require(sg > 0.0, "peak-index: sigma must be positive");
    o.table.add({sg, I(peak_index_sigma(p, sg))});
  }
  const int is = peak_index_diam(p, T.diam());
  o.results = {{"i_star", is}, {"diam", T.diam()}, {"width", w}};
  if (c.check_enabled("width_peak")) o.checks.push_back(check_width_peak(p, w, T.diam()));
  if (c.check_enabled("thresholds") && T.kind() != BodyKind::L1) {
    const double vs = T.radius() / T.dim();  // Vol/Sf for both the cube and the ball
    o.checks.push_back(check_peak_thresholds(p, w, vs));
  }
  CheckReport mono;
  mono.name = "monotone";
  int prev = p.d, bad = 0;
  for (double sg : log_grid(1e-4 * T.diam(), 1e3 * T.diam(), 50)) {
    const int i = peak_index_sigma(p, sg);
    if (i > prev) ++bad;
    prev = i;
  }
  mono.add("i*_sigma increases on a 50-point grid (count)", bad, 0);
  if (c.check_enabled("monotone")) o.checks.push_back(mono);
  return o;
}

Output cmd_variational(const ExperimentConfig& c) {
  const ConvexBody T = c.make_body();
  GaussianSampleSet s(T.dim(), c.samples, c.seed);
  Output o;
  o.table.header = {"body", "kind", "lambda_star", "bound", "mc_value", "mc_se", "margin"};
  const MCEstimate pw = penalized_width(T, 1.0, s);
  if (T.kind() == BodyKind::Ellipsoid) {
    const Vec& a = T.semi_axes();
    for (const VariationalBound& b : {best_wills_bound(a), best_local_bound(a)})
      o.table.add({T.name(), b.to_json().at("kind").get<std::string>(), b.lambda, b.value, pw.value, pw.se,
                   b.value - pw.value});
    const Vec lambdas = c.params.contains("lambdas") ? param<Vec>(c, "lambdas", {}) : log_grid(1e-3, 1e2, 11);
    if (c.check_enabled("simplepb")) o.checks.push_back(check_simplepb(T, s, lambdas));
    if (c.check_enabled("width_limit"))
      o.checks.push_back(check_width_limit(a, s, param<bool>(c, "isotropic", false)));
  } else if (T.kind() == BodyKind::L1) {
    require(T.radius() == 1.0, "variational: the crosspolytope bound is for the unit l1 ball");
    const double b = crosspolytope_bound(T.dim());
    o.table.add({T.name(), std::string("crosspolytope"), 0.0, b, pw.value, pw.se, b - pw.value});
    if (c.check_enabled("crosspolytope")) o.checks.push_back(check_crosspolytope_bound(T.dim(), s));
  } else {
    throw ConfigError("variational: body must be an ellipsoid or the unit l1 ball");
  }
  o.results = {{"penalized_width", pw.value}, {"se", pw.se}};
  return o;
}

Output cmd_l1_profile(const ExperimentConfig& c) {
  std::vector<int> ds = param<std::vector<int>>(c, "dims", {});
  if (ds.empty()) ds = {c.body ? c.make_body().dim() : 64};
  for (int d : ds) require(d >= 2, "l1-profile: dims must be >= 2");
  const int per = param<int>(c, "sigmas_per_d", 6);
  require(per >= 1, "l1-profile: sigmas_per_d must be positive");
  const auto rows = verify_medium_sigma(ds, per, c.seed, param<std::size_t>(c, "entry_budget", std::size_t{1} << 22),
                                        c.samples);
  Output o;
  o.table.header = {"d", "sigma", "samples", "second_moment", "se", "R", "ratio", "bound", "characterization_err", "holds"};
  CheckReport rep;
  rep.name = "medium_sigma";
  json rj = json::array();
  for (const auto& r : rows) {
    o.table.add({I(r.d), r.sigma, I(r.n), r.second_moment, r.se, r.profile, r.ratio, r.bound, r.characterization_err,
                 I(r.holds ? 1 : 0)});
    rep.add("d=" + std::to_string(r.d) + " sigma=" + std::to_string(r.sigma), r.second_moment, r.bound, 3.0 * r.se);
    rj.push_back({{"d", r.d}, {"sigma", r.sigma}, {"ratio", r.ratio}});
  }
  o.results = {{"rows", rj}};
  if (c.check_enabled("bound")) o.checks.push_back(rep);
  return o;
}

PointCloud read_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "entropy: cannot open cloud file '" + path + "'");
  Vec pts;
  int d = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int k = 0;
    Vec row;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        row.clear();
        break;  // header or non-numeric line
      }
      ++k;
    }
    if (row.empty()) continue;
    if (d < 0) d = k;
    require(k == d, "entropy: ragged cloud file");
    pts.insert(pts.end(), row.begin(), row.end());
  }
  require(d > 0, "entropy: no points in cloud file");
  const int n = static_cast<int>(pts.size()) / d;
  return PointCloud(d, pts, n <= PointCloud::kMaxExact ? PackingMode::Exact : PackingMode::Greedy);
}

Output cmd_entropy(const ExperimentConfig& c) {
  std::optional<PointCloud> cloud;
  std::optional<ConvexBody> T;
  if (c.params.contains("cloud_csv")) {
    cloud = read_cloud_csv(param<std::string>(c, "cloud_csv", ""));
  } else if (c.body) {
    T = c.make_body();
    cloud = body_cloud(*T, param<int>(c, "n_boundary", 18), param<int>(c, "n_interior", 8));
  } else {
    cloud = random_cloud(param<int>(c, "n", 20), param<int>(c, "dim", 2), c.seed);
  }
  require(cloud->n() <= 32, "entropy: profiles need at most 32 points");
  const EntropyProfile p = entropy_profile(*cloud);
  Output o;
  o.table.header = {"eps", "h", "h_loc"};
  for (double e : p.dyadic_scales()) o.table.add({e, p.h_at(e), p.hloc_at(e)});
  json fp = json::array();
  for (double sg : c.sigmas) fp.push_back({{"sigma", sg}, {"eps_bar", entropy_fixed_point(p, sg)}});
  o.results = {{"profile", p.to_json()},
               {"n", cloud->n()},
               {"dim", cloud->dim()},
               {"dudley_global", dudley(p, 0.0, Which::Global)},
               {"dudley_local", dudley(p, 0.0, Which::Local)},
               {"sudakov_global", sudakov_functional(p, Which::Global)},
               {"sudakov_local", sudakov_functional(p, Which::Local)},
               {"eps_bar", fp}};
  if (c.check_enabled("equivalences")) o.checks.push_back(check_entropy_equivalences(p));
  if (T && c.check_enabled("sudakov")) {
    GaussianSampleSet s(T->dim(), c.samples, c.seed);
    o.checks.push_back(sudakov_minoration_check(*T, *cloud, s));
  }
  return o;
}

Output cmd_gsm(const ExperimentConfig& c) {
  const ConvexBody T = c.make_body();
  const Vec theta = param<Vec>(c, "theta", Vec(T.dim(), 0.0));
  require(static_cast<int>(theta.size()) == T.dim(), "gsm: theta has the wrong dimension");
  GaussianSampleSet s(T.dim(), c.samples, c.seed);
  const RiskCurve rc = risk_curve(T, theta, c.sigmas, s);
  Output o;
  o.table.header = {"sigma", "lse_risk", "lse_risk_se", "lse_variance", "proj_second_moment", "r_sigma"};
  for (const RiskRow& r : rc.rows)
    o.table.add({r.sigma, r.lse_risk, r.lse_risk_se, r.lse_variance, r.proj_second_moment, r.r_sigma});
  o.results = {{"curve", rc.to_json()}};
  Vec pos;
  for (double sg : c.sigmas)
    if (sg > 0.0) pos.push_back(sg);
  if (c.check_enabled("lse_risk") && !pos.empty()) o.checks.push_back(check_lse_risk(T, pos, s));
  LocalWidth W(T, s);
  for (double sg : pos) {
    if (c.check_enabled("small_sigma")) {
      CheckReport r = check_small_sigma(W, sg, c.solver);
      r.name += " sigma=" + std::to_string(sg);
      o.checks.push_back(r);
    }
    if (c.check_enabled("stein")) {
      CheckReport r = stein_check(T, sg, s);
      r.name += " sigma=" + std::to_string(sg);
      o.checks.push_back(r);
    }
  }
  if (T.dim() <= 3 && c.check_enabled("net_lse")) {
    const EntropyProfile prof = entropy_profile(body_cloud(T, 18, 8));
    for (double sg : pos) {
      CheckReport r = check_net_lse(T, prof, sg, s);
      r.name += " sigma=" + std::to_string(sg);
      o.checks.push_back(r);
    }
  }
  return o;
}

Output cmd_verify_all(const ExperimentConfig& c, bool seed_given) {
  AcceptanceOptions opt;
  if (seed_given) opt.seed = c.seed;
  std::vector<int> ids = param<std::vector<int>>(c, "criteria", {});
  for (int id : ids) require(id >= 1 && id <= kCriteria, "verify-all: criterion ids are 1.." + std::to_string(kCriteria));
  const auto res = run_acceptance(opt, ids);
  Output o;
  o.table.header = {"criterion", "title", "passed", "checks"};
  json cj = json::array();
  for (const auto& r : res) {
    o.table.add({I(r.id), r.title, I(r.passed() ? 1 : 0), I(r.report.links.size())});
    cj.push_back(r.to_json());
    CheckReport summary;
    summary.name = "criterion " + std::to_string(r.id);
    summary.add(r.title + (r.error.empty() ? "" : " (error: " + r.error + ")"), r.passed() ? 0 : 1, 0);
    o.checks.push_back(summary);
  }
  o.results = {{"acceptance_seed", opt.seed}, {"criteria", cj}};
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gwlab: Gaussian width laboratory"};
  app.require_subcommand(1);
  std::string config_path, out;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  int threads = 0;
  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  auto* samples_opt = app.add_option("--samples", samples, "override the config sample count")->check(CLI::PositiveNumber);
  auto* out_opt = app.add_option("--out", out, "output prefix: writes PREFIX.csv and PREFIX.json");
  app.add_option("--threads", threads, "worker threads (results do not depend on it)")->check(CLI::NonNegativeNumber);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"width", "Monte-Carlo Gaussian width"},
      {"fixed-point", "fixed points r(sigma), r*(sigma) and the equivalence chain"},
      {"decompose", "both width decompositions over the sigma grid"},
      {"intrinsic", "intrinsic-volume profile"},
      {"wills", "Wills functional, McMullen and Vitale checks"},
      {"peak-index", "peak intrinsic index over the sigma grid"},
      {"variational", "variational upper bounds vs Monte-Carlo penalized width"},
      {"l1-profile", "l1 projection second moments against the moderate-sigma bound"},
      {"entropy", "packing-entropy profile and equivalence checks"},
      {"gsm", "Gaussian sequence model risk curve and checks"},
      {"verify-all", "run the acceptance suite"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::from_file(config_path);
    if (*seed_opt) cfg.seed = seed;
    if (*samples_opt) {
      require(samples >= 2, "--samples must be at least 2");
      cfg.samples = samples;
    }
    if (*out_opt) cfg.out = out;
    if (threads > 0) set_default_threads(threads);

    Output o;
    if (cmd == "width") o = cmd_width(cfg);
    else if (cmd == "fixed-point") o = cmd_fixed_point(cfg);
    else if (cmd == "decompose") o = cmd_decompose(cfg);
    else if (cmd == "intrinsic") o = cmd_intrinsic(cfg);
    else if (cmd == "wills") o = cmd_wills(cfg);
    else if (cmd == "peak-index") o = cmd_peak_index(cfg);
    else if (cmd == "variational") o = cmd_variational(cfg);
    else if (cmd == "l1-profile") o = cmd_l1_profile(cfg);
    else if (cmd == "entropy") o = cmd_entropy(cfg);
    else if (cmd == "gsm") o = cmd_gsm(cfg);
    else o = cmd_verify_all(cfg, static_cast<bool>(*seed_opt));

    bool ok = true;
    json checks = json::array();
    for (const auto& r : o.checks) {
      checks.push_back(r.to_json());
      if (!r.holds()) {
        ok = false;
        for (const auto& f : r.failures()) std::cerr << "FAILED " << r.name << ": " << f << "\n";
      }
    }
    const json doc = {{"subcommand", cmd}, {"version", version_hash()}, {"config", cfg.to_json()},
                      {"results", o.results}, {"checks", checks}, {"passed", ok}};
    if (cfg.out.empty()) {
      std::cout << o.table.str();
    } else {
      write_file(cfg.out + ".csv", o.table.str());
      write_file(cfg.out + ".json", doc.dump(2) + "\n");
    }
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
