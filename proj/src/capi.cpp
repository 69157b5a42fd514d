#include "hypersim.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>

#include "analysis.hpp"
#include "circuits.hpp"
#include "errors.hpp"
#include "scenario.hpp"

using namespace hypersim;

namespace {

thread_local std::string t_last_error;

hs_status guard(const std::exception& e, hs_status code) {
  t_last_error = e.what();
  return code;
}

template <typename Fn>
hs_status run_guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return HS_OK;
  } catch (const ConfigError& e) {
    return guard(e, HS_ERR_CONFIG);
  } catch (const GateAbort& e) {
    return guard(e, HS_ERR_ABORT);
  } catch (const NumericError& e) {
    return guard(e, HS_ERR_NUMERIC);
  } catch (const std::exception& e) {
    return guard(e, HS_ERR_NUMERIC);
  }
}

}  // namespace

struct hs_scenario {
  ScenarioConfig config;
};

struct hs_outcome {
  std::string variant;
  double success_probability = 0.0;
  double oracle_fid = 0.0;
  double branch_agreement = 1.0;
  double eta_t_value = 0.0;
  double eta_d_value = 0.0;
  double loss = 0.0;
  std::vector<std::pair<int, int>> spins;
  std::vector<std::string> corrections;
  std::vector<HeraldEntry> heralds;
};

extern "C" {

const char* hs_last_error(void) { return t_last_error.c_str(); }

hs_status hs_scenario_from_file(const char* path, hs_scenario** out) {
  if (!path || !out) {
    t_last_error = "null argument";
    return HS_ERR_CONFIG;
  }
  return run_guarded([&] { *out = new hs_scenario{load_scenario(path)}; });
}

hs_status hs_scenario_from_string(const char* text, hs_scenario** out) {
  if (!text || !out) {
    t_last_error = "null argument";
    return HS_ERR_CONFIG;
  }
  return run_guarded([&] { *out = new hs_scenario{parse_scenario(text)}; });
}

void hs_scenario_free(hs_scenario* scenario) { delete scenario; }

size_t hs_scenario_serialize(const hs_scenario* scenario, char* buf,
                             size_t cap) {
  if (!scenario) return 0;
  const std::string text = serialize_scenario(scenario->config);
  if (buf && cap > 0) {
    const size_t n = text.size() < cap - 1 ? text.size() : cap - 1;
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return text.size();
}

int hs_scenario_rus_rounds(const hs_scenario* scenario) {
  return scenario ? scenario->config.rus_rounds : 1;
}

long hs_scenario_rus_trials(const hs_scenario* scenario) {
  return scenario ? scenario->config.rus_trials : 0;
}

hs_status hs_simulate(const hs_scenario* scenario, hs_outcome** out) {
  if (!scenario || !out) {
    t_last_error = "null argument";
    return HS_ERR_CONFIG;
  }
  return run_guarded([&] {
    const ScenarioConfig& cfg = scenario->config;
    const ReflectionPair pair = cfg.pair();
    const std::array<int, kSpinCount>* init =
        cfg.spin_init ? &*cfg.spin_init : nullptr;
    const GateResult result =
        run_gate(cfg.variant, cfg.input, pair, cfg.mode, cfg.seed, init);

    auto o = std::make_unique<hs_outcome>();
    const GateOutcome& first = result.branches.front();
    o->variant = variant_name(cfg.variant);
    o->success_probability = first.success_probability;
    o->oracle_fid = oracle_fidelity(cfg.variant, cfg.input, first, init);
    o->eta_t_value = eta_t(pair);
    o->eta_d_value = eta_d(pair);
    o->loss = first.loss;
    for (const auto& [spin, value] : first.spin_outcomes) {
      o->spins.emplace_back(spin, value);
    }
    o->corrections = first.corrections_applied;
    o->heralds = first.heralds;
    double agreement = 1.0;
    for (std::size_t i = 1; i < result.branches.size(); ++i) {
      agreement = std::min(agreement, branch_fidelity(cfg.variant, first,
                                                      result.branches[i], init));
    }
    o->branch_agreement = agreement;
    *out = o.release();
  });
}

void hs_outcome_free(hs_outcome* outcome) { delete outcome; }

const char* hs_outcome_variant(const hs_outcome* o) {
  return o ? o->variant.c_str() : "";
}
double hs_outcome_success_probability(const hs_outcome* o) {
  return o ? o->success_probability : 0.0;
}
double hs_outcome_oracle_fidelity(const hs_outcome* o) {
  return o ? o->oracle_fid : 0.0;
}
double hs_outcome_branch_agreement(const hs_outcome* o) {
  return o ? o->branch_agreement : 0.0;
}
double hs_outcome_eta_t(const hs_outcome* o) { return o ? o->eta_t_value : 0.0; }
double hs_outcome_eta_d(const hs_outcome* o) { return o ? o->eta_d_value : 0.0; }

size_t hs_outcome_spin_count(const hs_outcome* o) {
  return o ? o->spins.size() : 0;
}
int hs_outcome_spin_id(const hs_outcome* o, size_t i) {
  return o && i < o->spins.size() ? o->spins[i].first : 0;
}
int hs_outcome_spin_value(const hs_outcome* o, size_t i) {
  return o && i < o->spins.size() ? o->spins[i].second : 0;
}

size_t hs_outcome_correction_count(const hs_outcome* o) {
  return o ? o->corrections.size() : 0;
}
const char* hs_outcome_correction(const hs_outcome* o, size_t i) {
  return o && i < o->corrections.size() ? o->corrections[i].c_str() : "";
}

size_t hs_outcome_herald_count(const hs_outcome* o) {
  return o ? o->heralds.size() : 0;
}
const char* hs_outcome_herald_id(const hs_outcome* o, size_t i) {
  return o && i < o->heralds.size() ? o->heralds[i].detector.c_str() : "";
}
double hs_outcome_herald_mass(const hs_outcome* o, size_t i) {
  return o && i < o->heralds.size() ? o->heralds[i].mass : 0.0;
}
double hs_outcome_loss(const hs_outcome* o) { return o ? o->loss : 0.0; }

hs_status hs_sweep_to_csv(const hs_scenario* scenario, const char* csv_path) {
  if (!scenario || !csv_path) {
    t_last_error = "null argument";
    return HS_ERR_CONFIG;
  }
  return run_guarded([&] {
    write_sweep_csv(run_sweep(scenario->config.sweep_spec()), csv_path);
  });
}

hs_status hs_regression_report(char* buf, size_t cap) {
  std::string report;
  bool ok = true;
  try {
    const auto rows = regression_table();
    ok = regression_ok(rows);
    char line[160];
    report = "g/kappa      eta_T %      eta_D %    status\n";
    for (const auto& row : rows) {
      std::snprintf(line, sizeof line, "%-10.2f %10.4f %12.6f    %s\n",
                    row.g_over_kappa, row.eta_t_percent, row.eta_d_percent,
                    row.eta_t_ok && row.eta_d_ok ? "ok" : "MISMATCH");
      report += line;
    }
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return HS_ERR_NUMERIC;
  }
  if (buf && cap > 0) {
    const size_t n = report.size() < cap - 1 ? report.size() : cap - 1;
    std::memcpy(buf, report.data(), n);
    buf[n] = '\0';
  }
  if (!ok) {
    t_last_error = "regression values departed from the pinned references";
    return HS_ERR_NUMERIC;
  }
  t_last_error.clear();
  return HS_OK;
}

hs_status hs_rus_estimate(const hs_scenario* scenario, int max_rounds,
                          long trials, double* estimate, double* single_shot) {
  if (!scenario || !estimate) {
    t_last_error = "null argument";
    return HS_ERR_CONFIG;
  }
  return run_guarded([&] {
    const ScenarioConfig& cfg = scenario->config;
    const RusResult r = run_rus(cfg.variant, cfg.input, cfg.pair(), max_rounds,
                                trials, cfg.seed);
    *estimate = r.estimate;
    if (single_shot) *single_shot = r.single_shot;
  });
}

}  // extern "C"
