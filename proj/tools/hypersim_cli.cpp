// Command-line front end. Talks to the simulator exclusively through the
// shared library's C interface.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypersim.h"

namespace {

struct ScenarioDeleter {
  void operator()(hs_scenario* s) const { hs_scenario_free(s); }
};
struct OutcomeDeleter {
  void operator()(hs_outcome* o) const { hs_outcome_free(o); }
};
using ScenarioPtr = std::unique_ptr<hs_scenario, ScenarioDeleter>;
using OutcomePtr = std::unique_ptr<hs_outcome, OutcomeDeleter>;

int report_failure(hs_status status, const char* what) {
  std::fprintf(stderr, "error: %s: %s\n", what, hs_last_error());
  return static_cast<int>(status);
}

ScenarioPtr load_or_exit(const std::string& path, int& exit_code) {
  hs_scenario* raw = nullptr;
  const hs_status status = hs_scenario_from_file(path.c_str(), &raw);
  if (status != HS_OK) {
    exit_code = report_failure(status, "loading scenario");
    return nullptr;
  }
  exit_code = 0;
  return ScenarioPtr(raw);
}

int cmd_simulate(const std::string& config_path) {
  int exit_code = 0;
  ScenarioPtr scenario = load_or_exit(config_path, exit_code);
  if (!scenario) return exit_code;

  hs_outcome* raw = nullptr;
  const hs_status status = hs_simulate(scenario.get(), &raw);
  if (status != HS_OK) return report_failure(status, "simulate");
  OutcomePtr outcome(raw);

  std::printf("variant:              %s\n", hs_outcome_variant(outcome.get()));
  std::printf("success probability:  %.12g\n",
              hs_outcome_success_probability(outcome.get()));
  std::printf("eta_T (analytic):     %.12g\n", hs_outcome_eta_t(outcome.get()));
  std::printf("eta_D (analytic):     %.12g\n", hs_outcome_eta_d(outcome.get()));
  std::printf("oracle fidelity:      %.12g\n",
              hs_outcome_oracle_fidelity(outcome.get()));
  std::printf("branch agreement:     %.12g\n",
              hs_outcome_branch_agreement(outcome.get()));

  std::printf("spin outcomes:        ");
  const size_t spins = hs_outcome_spin_count(outcome.get());
  for (size_t i = 0; i < spins; ++i) {
    std::printf("%ss%d=%+d", i ? " " : "", hs_outcome_spin_id(outcome.get(), i),
                hs_outcome_spin_value(outcome.get(), i));
  }
  std::printf(spins ? "\n" : "(none)\n");

  std::printf("corrections:          ");
  const size_t corrections = hs_outcome_correction_count(outcome.get());
  for (size_t i = 0; i < corrections; ++i) {
    std::printf("%s%s", i ? " " : "", hs_outcome_correction(outcome.get(), i));
  }
  std::printf(corrections ? "\n" : "(none)\n");

  double heralded = 0.0;
  const size_t heralds = hs_outcome_herald_count(outcome.get());
  for (size_t i = 0; i < heralds; ++i) {
    heralded += hs_outcome_herald_mass(outcome.get(), i);
  }
  std::printf("heralded mass:        %.12g (%zu ports)\n", heralded, heralds);
  std::printf("absorption loss:      %.12g\n", hs_outcome_loss(outcome.get()));
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  int exit_code = 0;
  ScenarioPtr scenario = load_or_exit(config_path, exit_code);
  if (!scenario) return exit_code;
  const hs_status status = hs_sweep_to_csv(scenario.get(), out_path.c_str());
  if (status != HS_OK) return report_failure(status, "sweep");
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

int cmd_table3() {
  char report[1024];
  const hs_status status = hs_regression_report(report, sizeof report);
  std::fputs(report, stdout);
  if (status != HS_OK) return report_failure(status, "regression table");
  return 0;
}

int cmd_rus(const std::string& config_path, int rounds, long trials) {
  int exit_code = 0;
  ScenarioPtr scenario = load_or_exit(config_path, exit_code);
  if (!scenario) return exit_code;
  if (rounds <= 0) rounds = hs_scenario_rus_rounds(scenario.get());
  if (trials <= 0) trials = hs_scenario_rus_trials(scenario.get());
  double estimate = 0.0;
  double single_shot = 0.0;
  const hs_status status =
      hs_rus_estimate(scenario.get(), rounds, trials, &estimate, &single_shot);
  if (status != HS_OK) return report_failure(status, "rus");
  std::printf("single-shot success:  %.12g\n", single_shot);
  std::printf("rounds:               %d\n", rounds);
  std::printf("trials:               %ld\n", trials);
  std::printf("estimated success:    %.12g\n", estimate);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypersim: heralded hyperparallel Toffoli gate simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "sweep.csv";
  int rounds = 0;   // 0: take the scenario file's value
  long trials = 0;

  CLI::App* simulate = app.add_subcommand("simulate", "run one gate scenario");
  simulate->add_option("--config", config_path, "scenario file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "run the scenario's coupling sweep");
  sweep->add_option("--config", config_path, "scenario file")->required();
  sweep->add_option("--out", out_path, "output CSV path");

  CLI::App* table3 =
      app.add_subcommand("table3", "built-in efficiency regression table");

  CLI::App* rus = app.add_subcommand("rus", "repeat-until-success estimate");
  rus->add_option("--config", config_path, "scenario file")->required();
  rus->add_option("--rounds", rounds,
                  "maximum rounds per trial (default: scenario file)");
  rus->add_option("--trials", trials,
                  "Monte-Carlo trials (default: scenario file)");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) return cmd_simulate(config_path);
  if (sweep->parsed()) return cmd_sweep(config_path, out_path);
  if (table3->parsed()) return cmd_table3();
  if (rus->parsed()) return cmd_rus(config_path, rounds, trials);
  return 0;
}
