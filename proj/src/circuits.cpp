#include "circuits.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace hypersim {

namespace {

using Ph = Photon;
using D = Dof;

std::string balance_id(Photon ph, const char* what) {
  return std::string("balance[") + photon_name(ph) + ":" + what + "]";
}

// Control coupling: the photon's addressed degree of freedom interacts with
// the spin once on every path it occupies.
void apply_control_stage(RegisterState& state, const ControlWiring& ctl,
                         const ReflectionPair& pair) {
  if (ctl.dof == Dof::polarization) {
    apply_pol_cpf_block(state, ctl.photon, 0, ctl.spin, pair, "ctl");
    apply_pol_cpf_block(state, ctl.photon, 1, ctl.spin, pair, "ctl");
  } else {
    apply_rail_phase_block(state, ctl.photon, 1, ctl.spin, pair, "ctl");
    apply_rail_attenuator(state, ctl.photon, 0, pair.success_scale(),
                          balance_id(ctl.photon, "r0:ctl"));
  }
}

// Target stage on photon c's polarization: split off |1>^p into the cavity
// path (four wave plates, three block passes), balance |0>^p with the cubed
// transmission, recombine; the mismatched port is heralded.
void apply_pol_target_stage(RegisterState& state, const TargetWiring& target,
                            const ReflectionPair& pair) {
  const int pol_c = bit_of(Ph::c, D::polarization);
  const cplx s = pair.success_scale();

  RegisterState inner = state.peel(bit_equals(pol_c, 1));
  state.apply_attenuator(bit_equals(pol_c, 0), s * s * s, MassSink::detector,
                         balance_id(Ph::c, "pol:bypass"));

  inner.apply_single(pol_c, hadamard_op());
  apply_pol_cpf_block(inner, Ph::c, std::nullopt, target.spin_outer, pair, "t1");
  inner.apply_single(pol_c, hadamard_op());
  apply_pol_cpf_block(inner, Ph::c, std::nullopt, target.spin_mid, pair, "t2");
  inner.apply_single(pol_c, hadamard_op());
  apply_pol_cpf_block(inner, Ph::c, std::nullopt, target.spin_outer, pair, "t3");
  inner.apply_single(pol_c, hadamard_op());

  inner.project_detector("merge[c:pol]", bit_equals(pol_c, 0));
  state.absorb(std::move(inner));
}

// Target stage on photon c's spatial rail: rail 1 opens into a two-path
// interferometer (the register's rail bit doubles as the internal path
// qubit), rail 0 is balanced with the cubed transmission.
void apply_spatial_target_stage(RegisterState& state,
                                const TargetWiring& target,
                                const ReflectionPair& pair) {
  const int rail_c = bit_of(Ph::c, D::spatial);
  const cplx s = pair.success_scale();

  RegisterState inner = state.peel(bit_equals(rail_c, 1));
  state.apply_attenuator(bit_equals(rail_c, 0), s * s * s, MassSink::detector,
                         balance_id(Ph::c, "rail:bypass"));

  inner.apply_single(rail_c, bs_open_op());
  apply_rail_phase_block(inner, Ph::c, 1, target.spin_outer, pair, "t1");
  apply_rail_attenuator(inner, Ph::c, 0, s, balance_id(Ph::c, "d0:t1"));
  inner.apply_single(rail_c, hadamard_op());
  apply_rail_phase_block(inner, Ph::c, 1, target.spin_mid, pair, "t2");
  apply_rail_attenuator(inner, Ph::c, 0, s, balance_id(Ph::c, "d0:t2"));
  inner.apply_single(rail_c, hadamard_op());
  apply_rail_phase_block(inner, Ph::c, 0, target.spin_outer, pair, "t3");
  apply_rail_attenuator(inner, Ph::c, 1, s, balance_id(Ph::c, "d1:t3"));
  inner.apply_single(rail_c, bs_close_op());

  inner.project_detector("merge[c:rail]", bit_equals(rail_c, 0));
  state.absorb(std::move(inner));
}

struct BranchWork {
  RegisterState state;
  double branch_probability = 1.0;
  std::vector<std::pair<SpinId, int>> outcomes;
  std::vector<std::string> corrections;
};

}  // namespace

const char* variant_name(GateVariant v) {
  switch (v) {
    case GateVariant::pol_toffoli: return "pol_toffoli";
    case GateVariant::spatial_toffoli: return "spatial_toffoli";
    case GateVariant::hyper_toffoli: return "hyper_toffoli";
    case GateVariant::hybrid_1: return "hybrid_1";
    case GateVariant::hybrid_2: return "hybrid_2";
    default: return "hybrid_3";
  }
}

GateVariant variant_from_name(const std::string& name) {
  for (GateVariant v :
       {GateVariant::pol_toffoli, GateVariant::spatial_toffoli,
        GateVariant::hyper_toffoli, GateVariant::hybrid_1,
        GateVariant::hybrid_2, GateVariant::hybrid_3}) {
    if (name == variant_name(v)) return v;
  }
  throw ConfigError("unknown gate variant '" + name + "'");
}

// Spin preparations are chosen so that the target stage's firing condition
// (outer spin -1 and mid spin -1 for a polarization target, outer -1 and
// mid +1 for a spatial target) lands exactly on both controls being |1>.
GateWiring wiring_of(GateVariant v) {
  const SubGateWiring pol_sub{
      {Ph::a, D::polarization, 2, -1},
      {Ph::b, D::polarization, 1, -1},
      {D::polarization, 1, 2}};
  const SubGateWiring spatial_sub{
      {Ph::a, D::spatial, 4, -1},
      {Ph::b, D::spatial, 3, +1},
      {D::spatial, 3, 4}};
  switch (v) {
    case GateVariant::pol_toffoli:
      return {{pol_sub}};
    case GateVariant::spatial_toffoli:
      return {{spatial_sub}};
    case GateVariant::hyper_toffoli:
      return {{pol_sub, spatial_sub}};
    case GateVariant::hybrid_1:
      return {{{{Ph::a, D::polarization, 1, -1},
                {Ph::b, D::polarization, 2, +1},
                {D::spatial, 1, 2}},
               {{Ph::a, D::spatial, 3, +1},
                {Ph::b, D::spatial, 4, +1},
                {D::polarization, 3, 4}}}};
    case GateVariant::hybrid_2:
      return {{{{Ph::a, D::polarization, 1, -1},
                {Ph::b, D::spatial, 2, -1},
                {D::spatial, 1, 2}},
               {{Ph::a, D::spatial, 3, +1},
                {Ph::b, D::polarization, 4, -1},
                {D::polarization, 3, 4}}}};
    default:  // hybrid_3
      return {{{{Ph::a, D::polarization, 1, -1},
                {Ph::b, D::spatial, 2, +1},
                {D::polarization, 1, 2}},
               {{Ph::a, D::spatial, 3, -1},
                {Ph::b, D::polarization, 4, -1},
                {D::spatial, 4, 3}}}};
  }
}

std::array<int, kSpinCount> default_spin_init(GateVariant v) {
  std::array<int, kSpinCount> init{-1, -1, -1, -1};
  for (const SubGateWiring& sub : wiring_of(v).subs) {
    init[sub.control_a.spin - 1] = sub.control_a.init;
    init[sub.control_b.spin - 1] = sub.control_b.init;
  }
  return init;
}

std::string Correction::label() const {
  if (addr.kind == QubitAddress::Kind::photon_polarization && basis == 1) {
    return std::string("sigma_z_pol[") + photon_name(addr.photon) + "]";
  }
  std::string label = "phase_pi_";
  label += addr.kind == QubitAddress::Kind::photon_polarization ? "pol" : "rail";
  label += static_cast<char>('0' + basis);
  label += '[';
  label += photon_name(addr.photon);
  label += ']';
  return label;
}

namespace {

// A -1 outcome flips the sign of the control component that was correlated
// with spin |-1> during the target stage; the correction is the pi phase on
// exactly that basis state.
Correction correction_for(const ControlWiring& ctl) {
  QubitAddress addr = ctl.dof == Dof::polarization
                          ? QubitAddress::pol(ctl.photon)
                          : QubitAddress::spatial(ctl.photon);
  int basis;
  if (ctl.dof == Dof::polarization) {
    basis = ctl.init == -1 ? 1 : 0;
  } else {
    basis = ctl.init == -1 ? 0 : 1;
  }
  return Correction{addr, basis};
}

}  // namespace

FeedForwardTable feed_forward_table(const SubGateWiring& sub) {
  const ControlWiring& first = sub.control_a.spin < sub.control_b.spin
                                   ? sub.control_a
                                   : sub.control_b;
  const ControlWiring& second = sub.control_a.spin < sub.control_b.spin
                                    ? sub.control_b
                                    : sub.control_a;
  FeedForwardTable table;
  table.spin_first = first.spin;
  table.spin_second = second.spin;
  for (int idx = 0; idx < 4; ++idx) {
    std::vector<Correction>& entry = table.entries[idx];
    if (idx & 2) entry.push_back(correction_for(first));
    if (idx & 1) entry.push_back(correction_for(second));
  }
  return table;
}

const std::vector<Correction>& FeedForwardTable::corrections(
    int outcome_first, int outcome_second) const {
  const int idx = (outcome_first == -1 ? 2 : 0) | (outcome_second == -1 ? 1 : 0);
  return entries[idx];
}

void feed_forward(RegisterState& state, const FeedForwardTable& table,
                  const std::vector<std::pair<SpinId, int>>& outcomes,
                  std::vector<std::string>* applied) {
  int outcome_first = 0;
  int outcome_second = 0;
  for (const auto& [spin, outcome] : outcomes) {
    if (spin == table.spin_first) outcome_first = outcome;
    if (spin == table.spin_second) outcome_second = outcome;
  }
  if (outcome_first == 0 || outcome_second == 0) {
    throw ConfigError("feed-forward outcomes do not cover spins " +
                      std::to_string(table.spin_first) + "," +
                      std::to_string(table.spin_second));
  }
  for (const Correction& c : table.corrections(outcome_first, outcome_second)) {
    state.apply_single(c.addr, phase_pi_op(c.basis));
    if (applied) applied->push_back(c.label());
  }
}

GateResult run_wired_gate(GateVariant variant, const GateWiring& wiring,
                          const std::array<int, kSpinCount>& spin_init,
                          const PhotonInput& input, const ReflectionPair& pair,
                          RunMode mode, std::uint64_t seed) {
  std::vector<BranchWork> work;
  work.push_back({init_product(input, spin_init), 1.0, {}, {}});
  std::mt19937_64 rng(seed);

  for (const SubGateWiring& sub : wiring.subs) {
    const FeedForwardTable table = feed_forward_table(sub);
    const int target_bit = bit_of(Ph::c, sub.target.dof);
    std::vector<BranchWork> next;

    for (BranchWork& bw : work) {
      RegisterState& st = bw.state;
      apply_spin_hadamard(st, sub.control_a.spin);
      apply_spin_hadamard(st, sub.control_b.spin);
      apply_control_stage(st, sub.control_a, pair);
      apply_control_stage(st, sub.control_b, pair);
      apply_spin_hadamard(st, sub.control_a.spin);
      apply_spin_hadamard(st, sub.control_b.spin);

      st.apply_single(target_bit, hadamard_op());
      if (sub.target.dof == Dof::polarization) {
        apply_pol_target_stage(st, sub.target, pair);
      } else {
        apply_spatial_target_stage(st, sub.target, pair);
      }
      st.apply_single(target_bit, hadamard_op());

      apply_spin_hadamard(st, table.spin_first);
      apply_spin_hadamard(st, table.spin_second);

      if (mode == RunMode::exhaustive) {
        for (MeasureBranch& b1 : measure_spin_branches(st, table.spin_first)) {
          for (MeasureBranch& b2 :
               measure_spin_branches(b1.state, table.spin_second)) {
            BranchWork nb;
            nb.state = std::move(b2.state);
            nb.branch_probability =
                bw.branch_probability * b1.probability * b2.probability;
            nb.outcomes = bw.outcomes;
            nb.outcomes.emplace_back(table.spin_first, b1.outcome);
            nb.outcomes.emplace_back(table.spin_second, b2.outcome);
            nb.corrections = bw.corrections;
            feed_forward(nb.state, table, nb.outcomes, &nb.corrections);
            next.push_back(std::move(nb));
          }
        }
      } else {
        MeasureBranch b1 = measure_spin_sampled(st, table.spin_first, rng);
        MeasureBranch b2 = measure_spin_sampled(st, table.spin_second, rng);
        bw.branch_probability *= b1.probability * b2.probability;
        bw.outcomes.emplace_back(table.spin_first, b1.outcome);
        bw.outcomes.emplace_back(table.spin_second, b2.outcome);
        feed_forward(st, table, bw.outcomes, &bw.corrections);
        next.push_back(std::move(bw));
      }
    }
    work = std::move(next);
  }

  GateResult result;
  result.variant = variant;
  for (BranchWork& bw : work) {
    GateOutcome out;
    out.branch_probability = bw.branch_probability;
    out.spin_outcomes = std::move(bw.outcomes);
    out.corrections_applied = std::move(bw.corrections);
    out.heralds = bw.state.herald_ledger();
    out.loss = bw.state.loss_mass();
    const double balance =
        bw.state.trace() + bw.state.herald_total() + bw.state.loss_mass();
    if (std::abs(balance - 1.0) > 1e-9) {
      throw NumericError("probability bookkeeping violated: trace+heralds+loss = " +
                         std::to_string(balance));
    }
    out.conditional_state = std::move(bw.state);
    out.success_probability = out.conditional_state.renormalize();
    result.branches.push_back(std::move(out));
  }
  return result;
}

GateResult run_gate(GateVariant variant, const PhotonInput& input,
                    const ReflectionPair& pair, RunMode mode,
                    std::uint64_t seed,
                    const std::array<int, kSpinCount>* spin_init) {
  const GateWiring wiring = wiring_of(variant);
  const std::array<int, kSpinCount> init =
      spin_init ? *spin_init : default_spin_init(variant);
  return run_wired_gate(variant, wiring, init, input, pair, mode, seed);
}

}  // namespace hypersim
