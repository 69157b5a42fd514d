#pragma once

#include <optional>
#include <string>

#include "analysis.hpp"
#include "circuits.hpp"

namespace hypersim {

// A parsed run description. Line-oriented `key = value` format with `#`
// comments; complex numbers written as `re+imj`. Required keys: `variant`
// and `g_over_kappa`; everything else has defaults.
struct ScenarioConfig {
  GateVariant variant = GateVariant::hyper_toffoli;
  double g_over_kappa = 0.0;
  double gamma_over_kappa = 0.01;
  double delta_c = 0.0;  // (omega_c - omega_p) / kappa
  double delta_d = 0.0;  // (omega_d - omega_p) / kappa
  RunMode mode = RunMode::exhaustive;
  std::uint64_t seed = 0;
  PhotonInput input;  // defaults to all qubits in |0>
  std::optional<std::array<int, kSpinCount>> spin_init;
  std::optional<std::vector<double>> sweep_g;
  std::string out_path;
  int rus_rounds = 1;
  long rus_trials = 100000;

  SystemParams params() const;
  ReflectionPair pair() const { return reflection_pair(params()); }
  SweepSpec sweep_spec() const;  // ConfigError when no grid was given
};

// Parses the format above. Errors (unknown key, malformed number,
// unnormalized amplitude pair, invariant violations) report the line number.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

// Canonical form: fixed key order, every field explicit, lossless number
// formatting. parse_scenario(serialize_scenario(c)) reproduces c.
std::string serialize_scenario(const ScenarioConfig& config);

}  // namespace hypersim
