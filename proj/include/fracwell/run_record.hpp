#pragma once

#include <ctime>
#include <optional>
#include <string>

#include <json.hpp>

#include "fracwell/analytic_reference.hpp"
#include "fracwell/gradient_flow.hpp"
#include "fracwell/grid_config.hpp"
#include "fracwell/observables.hpp"

namespace fracwell {

inline constexpr const char* kToolVersion = "0.1.0";

/// Analytic comparison columns attached to every run.
struct ReferenceValues {
  double chen_lower = 0.0;
  double chen_upper = 0.0;
  std::optional<double> banuelos_lower;  // ground state only
  std::optional<double> banuelos_upper;
  double kwasnicki = 0.0;
  double standard_mu = 0.0;        // alpha = 2 exact eigenvalue
  double standard_variance = 0.0;  // alpha = 2 exact variance
  std::optional<double> thomas_fermi_mu;  // only meaningful for beta >= 10

  bool operator==(const ReferenceValues&) const = default;
};

inline ReferenceValues make_reference_values(const WellConfig& cfg) {
  ReferenceValues ref;
  const int s = state_index(cfg.state);
  const Bounds chen = chen_bounds(s, cfg.alpha, 2.0 * cfg.L);
  ref.chen_lower = chen.lower;
  ref.chen_upper = chen.upper;
  if (cfg.state == StateKind::Ground) {
    const Bounds ban = banuelos_bounds(cfg.alpha);
    ref.banuelos_lower = ban.lower;
    ref.banuelos_upper = ban.upper;
  }
  ref.kwasnicki = kwasnicki_mu(s, cfg.alpha);
  ref.standard_mu = standard_eigenpair(s, cfg.L, 0.0).mu;
  ref.standard_variance = standard_variance(s, cfg.L);
  if (cfg.beta >= 10.0) ref.thomas_fermi_mu = thomas_fermi_mu(s, cfg.beta, cfg.L);
  return ref;
}

/// Complete, round-trippable description of one solve: configuration echo,
/// observables, flow report, and reference columns.
struct RunRecord {
  WellConfig config;
  Discretization disc;
  Observables observables;
  FlowReport flow;
  ReferenceValues reference;
  std::string timestamp;
  std::string version;

  bool operator==(const RunRecord&) const = default;
};

inline std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --- JSON bindings (nlohmann ADL) ------------------------------------------

namespace detail {

inline void put_opt(nlohmann::json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
  else j[key] = nullptr;
}

inline std::optional<double> get_opt(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const WellConfig& c) {
  j = {{"L", c.L}, {"alpha", c.alpha}, {"beta", c.beta}, {"state", to_string(c.state)}};
}

inline void from_json(const nlohmann::json& j, WellConfig& c) {
  c.L = j.at("L").get<double>();
  c.alpha = j.at("alpha").get<double>();
  c.beta = j.at("beta").get<double>();
  c.state = parse_state(j.at("state").get<std::string>());
}

inline void to_json(nlohmann::json& j, const Discretization& d) {
  j = {{"J", d.J},         {"h", d.h},     {"M", d.M},     {"A", d.A},
       {"gamma", d.gamma}, {"sigma", d.sigma}, {"dt", d.dt}, {"eps", d.eps},
       {"max_iters", d.max_iters}};
}

inline void from_json(const nlohmann::json& j, Discretization& d) {
  d.J = j.at("J").get<int>();
  d.h = j.at("h").get<double>();
  d.M = j.at("M").get<int>();
  d.A = j.at("A").get<double>();
  d.gamma = j.at("gamma").get<double>();
  d.sigma = j.at("sigma").get<double>();
  d.dt = j.at("dt").get<double>();
  d.eps = j.at("eps").get<double>();
  d.max_iters = j.at("max_iters").get<long>();
}

inline void to_json(nlohmann::json& j, const Observables& o) {
  j = {{"mu", o.mu},
       {"mu_kin", o.mu_kin},
       {"mu_int", o.mu_int},
       {"energy", o.energy},
       {"expected_x", o.expected_x},
       {"variance_x", o.variance_x},
       {"peak_ambiguous", o.peak_ambiguous}};
  detail::put_opt(j, "x_c", o.x_c);
  detail::put_opt(j, "rho_max", o.rho_max);
  detail::put_opt(j, "layer_width", o.layer_width);
}

inline void from_json(const nlohmann::json& j, Observables& o) {
  o.mu = j.at("mu").get<double>();
  o.mu_kin = j.at("mu_kin").get<double>();
  o.mu_int = j.at("mu_int").get<double>();
  o.energy = j.at("energy").get<double>();
  o.expected_x = j.at("expected_x").get<double>();
  o.variance_x = j.at("variance_x").get<double>();
  o.peak_ambiguous = j.at("peak_ambiguous").get<bool>();
  o.x_c = detail::get_opt(j, "x_c");
  o.rho_max = detail::get_opt(j, "rho_max");
  o.layer_width = detail::get_opt(j, "layer_width");
}

inline void to_json(nlohmann::json& j, const FlowReport& r) {
  j = {{"iterations", r.iterations},
       {"final_residual", r.final_residual},
       {"converged", r.converged},
       {"wall_time_s", r.wall_time_s},
       {"energy_increases", r.energy_increases},
       {"final_energy", r.final_energy},
       {"odd_symmetry_lost", r.odd_symmetry_lost}};
}

inline void from_json(const nlohmann::json& j, FlowReport& r) {
  r.iterations = j.at("iterations").get<long>();
  r.final_residual = j.at("final_residual").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  r.energy_increases = j.at("energy_increases").get<long>();
  r.final_energy = j.at("final_energy").get<double>();
  r.odd_symmetry_lost = j.at("odd_symmetry_lost").get<bool>();
}

inline void to_json(nlohmann::json& j, const ReferenceValues& v) {
  j = {{"chen_lower", v.chen_lower},
       {"chen_upper", v.chen_upper},
       {"kwasnicki", v.kwasnicki},
       {"standard_mu", v.standard_mu},
       {"standard_variance", v.standard_variance}};
  detail::put_opt(j, "banuelos_lower", v.banuelos_lower);
  detail::put_opt(j, "banuelos_upper", v.banuelos_upper);
  detail::put_opt(j, "thomas_fermi_mu", v.thomas_fermi_mu);
}

inline void from_json(const nlohmann::json& j, ReferenceValues& v) {
  v.chen_lower = j.at("chen_lower").get<double>();
  v.chen_upper = j.at("chen_upper").get<double>();
  v.kwasnicki = j.at("kwasnicki").get<double>();
  v.standard_mu = j.at("standard_mu").get<double>();
  v.standard_variance = j.at("standard_variance").get<double>();
  v.banuelos_lower = detail::get_opt(j, "banuelos_lower");
  v.banuelos_upper = detail::get_opt(j, "banuelos_upper");
  v.thomas_fermi_mu = detail::get_opt(j, "thomas_fermi_mu");
}

inline void to_json(nlohmann::json& j, const RunRecord& r) {
  j = {{"config", r.config},   {"discretization", r.disc},
       {"observables", r.observables}, {"flow", r.flow},
       {"reference", r.reference},     {"timestamp", r.timestamp},
       {"version", r.version}};
}

inline void from_json(const nlohmann::json& j, RunRecord& r) {
  r.config = j.at("config").get<WellConfig>();
  r.disc = j.at("discretization").get<Discretization>();
  r.observables = j.at("observables").get<Observables>();
  r.flow = j.at("flow").get<FlowReport>();
  r.reference = j.at("reference").get<ReferenceValues>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.version = j.at("version").get<std::string>();
}

}  // namespace fracwell
