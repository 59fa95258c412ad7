#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "strip_poisson/diagnostics.hpp"
#include "strip_poisson/io.hpp"
#include "strip_poisson/mft.hpp"
#include "strip_poisson/presets.hpp"
#include "strip_poisson/solver.hpp"

namespace strip {

inline constexpr const char* kLibraryVersion = "1.0.0";

/// Scenario configuration error (maps to exit code 2 at the CLI).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightSpecRequest {
  int m = 0;
  double alpha = 0.0;
  std::optional<int> p;  // present = X-space norm with this shift
};

struct ScenarioConfig {
  int n1 = 32;
  double L = 8.0;
  int n2 = 1025;
  std::string preset;           // one of preset/table set
  PresetParams preset_params;
  std::string table_path;
  DecayClass table_decay = DecayClass::schwartz();
  bool negate_source = false;   // sign_convention = "delta"
  SolveMethod method = SolveMethod::per_mode;
  double constructive_R = 1.5;
  MomentPolicy policy = MomentPolicy::require_orthogonal;
  double tol_moment = -1.0;
  std::vector<WeightSpecRequest> weight_specs;
  std::vector<std::string> diagnostics;
  std::optional<std::string> reference_preset;
  std::string output_dir = "out";
};

namespace scenario_detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw config_error("unknown key '" + it.key() + "' in " + where);
  }
}

inline DecayClass parse_decay(const json& j) {
  const std::string kind = j.value("class", "schwartz");
  if (kind == "schwartz") return DecayClass::schwartz();
  if (kind == "poly") return DecayClass::poly(j.value("alpha", 0.0));
  if (kind == "poly_plus_linear") return DecayClass::poly_plus_linear();
  throw config_error("unknown decay class: " + kind);
}

}  // namespace scenario_detail

inline ScenarioConfig parse_config(const nlohmann::json& j) {
  using scenario_detail::reject_unknown;
  ScenarioConfig c;
  reject_unknown(j, {"grid", "source", "sign_convention", "method", "moment_policy", "tol_moment",
                     "weight_specs", "diagnostics", "reference_preset", "output"},
                 "config");
  if (!j.contains("grid") || !j.contains("source"))
    throw config_error("config requires 'grid' and 'source'");

  const auto& gj = j.at("grid");
  reject_unknown(gj, {"n1", "L", "n2"}, "grid");
  c.n1 = gj.value("n1", 32);
  c.L = gj.value("L", 8.0);
  c.n2 = gj.value("n2", 1025);

  const auto& sj = j.at("source");
  reject_unknown(sj, {"preset", "params", "table", "decay"}, "source");
  if (sj.contains("preset") == sj.contains("table"))
    throw config_error("source needs exactly one of 'preset' or 'table'");
  if (sj.contains("preset")) {
    c.preset = sj.at("preset").get<std::string>();
    if (sj.contains("params")) {
      for (auto it = sj.at("params").begin(); it != sj.at("params").end(); ++it)
        c.preset_params[it.key()] = it.value().get<double>();
    }
  } else {
    c.table_path = sj.at("table").get<std::string>();
    if (sj.contains("decay")) c.table_decay = scenario_detail::parse_decay(sj.at("decay"));
  }

  const std::string sign = j.value("sign_convention", "minus_delta");
  if (sign == "delta") c.negate_source = true;   // Laplace u = f absorbed as -Laplace u = -f
  else if (sign != "minus_delta") throw config_error("unknown sign_convention: " + sign);

  if (j.contains("method")) {
    const auto& mj = j.at("method");
    if (mj.is_string()) {
      const std::string m = mj.get<std::string>();
      if (m == "per_mode") c.method = SolveMethod::per_mode;
      else if (m == "green_quadrature") c.method = SolveMethod::green_quadrature;
      else throw config_error("unknown method: " + m);
    } else {
      reject_unknown(mj, {"constructive"}, "method");
      if (!mj.contains("constructive")) throw config_error("bad method object");
      reject_unknown(mj.at("constructive"), {"R"}, "method.constructive");
      c.method = SolveMethod::constructive;
      c.constructive_R = mj.at("constructive").value("R", 1.5);
    }
  }

  const std::string pol = j.value("moment_policy", "require_orthogonal");
  if (pol == "require_orthogonal") c.policy = MomentPolicy::require_orthogonal;
  else if (pol == "project") c.policy = MomentPolicy::project;
  else if (pol == "allow_growth") c.policy = MomentPolicy::allow_growth;
  else throw config_error("unknown moment_policy: " + pol);

  c.tol_moment = j.value("tol_moment", -1.0);

  if (j.contains("weight_specs")) {
    for (const auto& wj : j.at("weight_specs")) {
      scenario_detail::reject_unknown(wj, {"m", "alpha", "p"}, "weight_specs[]");
      WeightSpecRequest r;
      r.m = wj.at("m").get<int>();
      r.alpha = wj.at("alpha").get<double>();
      if (wj.contains("p")) r.p = wj.at("p").get<int>();
      c.weight_specs.push_back(r);
    }
  }
  if (j.contains("diagnostics"))
    for (const auto& d : j.at("diagnostics")) c.diagnostics.push_back(d.get<std::string>());
  if (j.contains("reference_preset"))
    c.reference_preset = j.at("reference_preset").get<std::string>();
  c.output_dir = j.value("output", std::string("out"));
  if (const char* env = std::getenv("STRIP_POISSON_OUTPUT")) c.output_dir = env;

  // Surface grid validation failures as config errors before any work.
  try {
    (void)StripGrid(c.n1, c.L, c.n2);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  if (!c.preset.empty()) {
    try {
      (void)make_preset(c.preset, c.preset_params);
    } catch (const std::invalid_argument& e) {
      throw config_error(e.what());
    }
  }
  return c;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open config: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

struct RunArtifacts {
  SolveReport report;
  nlohmann::ordered_json report_json;
};

namespace scenario_detail {

inline void write_slices_csv(const std::string& path, const StripField& u, const StripField& f) {
  const StripGrid& g = u.grid;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw table_format_error("cannot open for writing: " + path);
  const ModeField U = horizontal_transform(u);
  const int kmax = std::min(4, g.n1 / 2 - 1);
  os << "y2,s_total";
  for (int k = 0; k <= kmax; ++k) os << ",s_k" << k;
  os << ",u_quarter,f_quarter\n";
  const int iq = g.n1 / 4;
  for (int j = 0; j < g.n2; ++j) {
    double tot = 0.0;
    for (int i = 0; i < g.n1; ++i) tot += u.at(i, j) * u.at(i, j);
    os << format_double(g.y2(j)) << ',' << format_double(std::sqrt(tot / g.n1));
    for (int k = 0; k <= kmax; ++k) {
      const double s = std::abs(U.at_mode(k, j));
      os << ',' << format_double(s);
    }
    os << ',' << format_double(u.at(iq, j)) << ',' << format_double(f.at(iq, j)) << '\n';
  }
}

}  // namespace scenario_detail

/// Execute a scenario: solve, run the requested diagnostics, and write
/// report.json, slices.csv and solution.csv into the output directory.
/// Deterministic given config and build, except the timestamp field.
inline RunArtifacts run_scenario(const ScenarioConfig& c) {
  using scenario_detail::ordered_json;
  const StripGrid grid(c.n1, c.L, c.n2);

  StripField f = !c.preset.empty() ? sample(c.preset, grid, c.preset_params)
                                   : read_field_csv(c.table_path, grid, c.table_decay);
  if (c.negate_source) f *= -1.0;

  SolveReport rep = [&] {
    switch (c.method) {
      case SolveMethod::green_quadrature:
        return solve_green_quadrature(f, c.tol_moment);
      case SolveMethod::constructive:
        return solve_constructive(f, c.constructive_R, c.tol_moment);
      case SolveMethod::per_mode:
      default:
        return solve_per_mode(f, c.policy, c.tol_moment);
    }
  }();

  ordered_json rj;
  rj["version"] = {{"strip_poisson", kLibraryVersion}, {"report_format", 1}};
  {
    const auto now = std::chrono::system_clock::now();
    rj["generated_at"] =
        static_cast<long long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                   now.time_since_epoch())
                                   .count());
  }
  {
    ordered_json cfg;
    cfg["grid"] = {{"n1", c.n1}, {"L", c.L}, {"n2", c.n2}};
    cfg["source"] = c.preset.empty() ? c.table_path : c.preset;
    if (!c.preset_params.empty()) cfg["source_params"] = c.preset_params;
    cfg["sign_convention"] = c.negate_source ? "delta" : "minus_delta";
    cfg["method"] = c.method == SolveMethod::per_mode
                        ? "per_mode"
                        : (c.method == SolveMethod::green_quadrature ? "green_quadrature"
                                                                     : "constructive");
    if (c.method == SolveMethod::constructive) cfg["constructive_R"] = c.constructive_R;
    cfg["moment_policy"] = c.policy == MomentPolicy::require_orthogonal
                               ? "require_orthogonal"
                               : (c.policy == MomentPolicy::project ? "project" : "allow_growth");
    if (c.tol_moment > 0.0) cfg["tol_moment"] = c.tol_moment;
    ordered_json specs = ordered_json::array();
    for (const auto& wreq : c.weight_specs) {
      ordered_json s = {{"m", wreq.m}, {"alpha", wreq.alpha}};
      if (wreq.p) s["p"] = *wreq.p;
      specs.push_back(s);
    }
    cfg["weight_specs"] = specs;
    cfg["diagnostics"] = c.diagnostics;
    if (c.reference_preset) cfg["reference_preset"] = *c.reference_preset;
    cfg["output"] = c.output_dir;
    rj["config"] = cfg;
  }

  ordered_json sj;
  sj["moments"] = {{"mass", rep.moment_mass}, {"dipole", rep.moment_dipole}};
  sj["tol_moment"] = rep.tol_moment;
  sj["representative"] = rep.representative.coeffs;
  sj["tail"] = {{"slope_plus", rep.tail_slope_plus},
                {"slope_minus", rep.tail_slope_minus},
                {"const_plus", rep.tail_const_plus},
                {"const_minus", rep.tail_const_minus}};
  if (c.policy == MomentPolicy::project)
    sj["projection"] = {{"mass", rep.projection_mass}, {"dipole", rep.projection_dipole}};
  sj["norm_u_H2_1"] = rep.norm_u;
  sj["norm_f_L2_1"] = rep.norm_f;
  sj["norm_ratio"] = rep.norm_ratio;
  sj["norm_tail_bound"] = rep.norm_tail;
  rj["solve"] = sj;

  ordered_json norms = ordered_json::array();
  for (const auto& wreq : c.weight_specs) {
    ordered_json nj;
    nj["m"] = wreq.m;
    nj["alpha"] = wreq.alpha;
    try {
      if (wreq.p) {
        nj["p"] = *wreq.p;
        const QuadResult q = x_space_norm(rep.u, wreq.m, wreq.alpha, *wreq.p);
        nj["value"] = q.value;
        nj["tail_bound"] = q.tail;
      } else {
        const QuadResult q = weighted_norm(rep.u, WeightSpec(wreq.m, wreq.alpha));
        nj["value"] = q.value;
        nj["tail_bound"] = q.tail;
      }
    } catch (const non_integrable_error& e) {
      nj["error"] = e.what();
    }
    norms.push_back(nj);
  }
  rj["norms"] = norms;

  ordered_json checks = ordered_json::array();
  for (const auto& name : c.diagnostics) {
    ordered_json cj;
    cj["name"] = name;
    if (name == "residual") {
      StripField resid = laplacian(rep.u);
      resid *= -1.0;
      resid -= f;
      const double nf = norm_grid(f);
      cj["relative_l2"] = nf > 0.0 ? norm_grid(resid) / nf : norm_grid(resid);
    } else if (name == "parseval") {
      const auto [lhs, rhs] = parseval_check(f, 0.0);
      cj["lhs"] = lhs;
      cj["rhs"] = rhs;
    } else if (name == "poincare_wirtinger") {
      const auto r = poincare_wirtinger_check(rep.u, 0.0);
      cj["lhs"] = r.lhs;
      cj["rhs_seminorm"] = r.rhs;
      cj["rhs_d1_only"] = r.rhs_d1;
    } else if (name == "decay_exp") {
      try {
        const auto r = decay_fit(rep.u, DecayModel::exp, 2.0, 0.75 * c.L);
        cj["rate"] = r.rate;
        cj["r2"] = r.r2;
      } catch (const std::invalid_argument& e) {
        cj["error"] = e.what();
      }
    } else if (name == "decay_linear") {
      const auto r = linear_tail_fit(rep.u, 0.5 * c.L, 0.9 * c.L, TailSide::both);
      cj["slope"] = r.rate;
      cj["intercept"] = r.intercept;
      cj["r2"] = r.r2;
    } else {
      throw config_error("unknown diagnostic: " + name);
    }
    checks.push_back(cj);
  }
  rj["checks"] = checks;

  if (c.reference_preset) {
    const StripField uref = sample(*c.reference_preset, grid);
    rj["relative_error"] = quotient_l2_distance(rep.u, uref, 1);
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) throw table_format_error("cannot create output dir: " + c.output_dir);
  {
    std::ofstream os(c.output_dir + "/report.json", std::ios::binary);
    if (!os) throw table_format_error("cannot write report.json");
    os << rj.dump(2) << '\n';
  }
  write_field_csv(rep.u, c.output_dir + "/solution.csv");
  scenario_detail::write_slices_csv(c.output_dir + "/slices.csv", rep.u, f);

  return {std::move(rep), std::move(rj)};
}

}  // namespace strip
