#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elements.hpp"
#include "physics.hpp"
#include "register_state.hpp"

namespace hypersim {

// The six gate programs. The plain variants run one doubly-controlled phase
// flip per degree of freedom; the hybrid variants cross control and target
// degrees of freedom between photons.
enum class GateVariant {
  pol_toffoli,
  spatial_toffoli,
  hyper_toffoli,
  hybrid_1,
  hybrid_2,
  hybrid_3,
};

enum class RunMode { exhaustive, sampled };

const char* variant_name(GateVariant v);
GateVariant variant_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Wiring: which photon degree of freedom couples to which spin, and with
// which spin preparation. One sub-gate = one doubly-controlled phase flip
// (two control couplings, one target stage) plus its measurement pair.
// ---------------------------------------------------------------------------

struct ControlWiring {
  Photon photon;
  Dof dof;
  SpinId spin;
  int init;  // prepared spin basis state, +1 or -1
};

struct TargetWiring {
  Dof dof;            // target degree of freedom of photon c
  SpinId spin_outer;  // cavity visited on the first and third pass
  SpinId spin_mid;    // cavity visited on the middle pass
};

struct SubGateWiring {
  ControlWiring control_a;
  ControlWiring control_b;
  TargetWiring target;
};

struct GateWiring {
  std::vector<SubGateWiring> subs;
};

GateWiring wiring_of(GateVariant v);
std::array<int, kSpinCount> default_spin_init(GateVariant v);

// ---------------------------------------------------------------------------
// Feed-forward
// ---------------------------------------------------------------------------

struct Correction {
  QubitAddress addr;
  int basis;  // basis state receiving the pi phase
  std::string label() const;
};

// Map from the sub-gate's spin measurement outcome pair to the phase
// corrections restoring the reference (+1,+1) branch. Covers all four pairs.
struct FeedForwardTable {
  SpinId spin_first;   // lower spin id of the pair
  SpinId spin_second;  // higher spin id
  // index = (first outcome == -1) << 1 | (second outcome == -1)
  std::array<std::vector<Correction>, 4> entries;

  const std::vector<Correction>& corrections(int outcome_first,
                                             int outcome_second) const;
};

FeedForwardTable feed_forward_table(const SubGateWiring& sub);

// Applies the table entry selected by the measured outcomes. Throws
// ConfigError if the outcome list does not cover the table's spin pair.
void feed_forward(RegisterState& state, const FeedForwardTable& table,
                  const std::vector<std::pair<SpinId, int>>& outcomes,
                  std::vector<std::string>* applied = nullptr);

// ---------------------------------------------------------------------------
// Gate execution
// ---------------------------------------------------------------------------

struct GateOutcome {
  RegisterState conditional_state;  // unit norm
  double success_probability = 0.0; // trace conditioned on silent detectors
  double branch_probability = 1.0;  // product of spin measurement Born factors
  std::vector<std::pair<SpinId, int>> spin_outcomes;
  std::vector<std::string> corrections_applied;
  std::vector<HeraldEntry> heralds;
  double loss = 0.0;
};

struct GateResult {
  GateVariant variant;
  std::vector<GateOutcome> branches;  // all outcome branches (exhaustive) or
                                      // the sampled one
};

// Runs a gate program. Exhaustive mode enumerates every spin measurement
// branch (4 per sub-gate); sampled mode draws outcomes from the seeded RNG.
// spin_init overrides the per-variant default preparation when given.
GateResult run_gate(GateVariant variant, const PhotonInput& input,
                    const ReflectionPair& pair, RunMode mode,
                    std::uint64_t seed = 0,
                    const std::array<int, kSpinCount>* spin_init = nullptr);

// Same runner over explicit wiring (used to check sub-gate order
// independence and non-default preparations).
GateResult run_wired_gate(GateVariant variant, const GateWiring& wiring,
                          const std::array<int, kSpinCount>& spin_init,
                          const PhotonInput& input, const ReflectionPair& pair,
                          RunMode mode, std::uint64_t seed = 0);

}  // namespace hypersim
