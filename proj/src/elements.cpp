#include "elements.hpp"

#include <cmath>

namespace hypersim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string block_id(const char* kind, Photon ph, std::optional<int> rail,
                     SpinId spin, const std::string& tag) {
  std::string id = kind;
  id += '[';
  id += photon_name(ph);
  if (rail) {
    id += ":r";
    id += static_cast<char>('0' + *rail);
  }
  id += ":s";
  id += static_cast<char>('0' + spin);
  if (!tag.empty()) {
    id += ':';
    id += tag;
  }
  id += ']';
  return id;
}

BasisPredicate scope_pred(int rail_bit, std::optional<int> rail, int pol_bit,
                          int pol) {
  return [=](std::size_t basis) {
    if (rail && bit_value(basis, rail_bit) != *rail) return false;
    return bit_value(basis, pol_bit) == pol;
  };
}

}  // namespace

SingleQubitOp hadamard_op() {
  return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2, true};
}

SingleQubitOp pauli_x_op() { return {0.0, 1.0, 1.0, 0.0, true}; }

SingleQubitOp pauli_z_op() { return {1.0, 0.0, 0.0, -1.0, true}; }

SingleQubitOp phase_pi_op(int which) {
  return which == 0 ? SingleQubitOp{-1.0, 0.0, 0.0, 1.0, true}
                    : SingleQubitOp{1.0, 0.0, 0.0, -1.0, true};
}

SingleQubitOp bs_open_op() {
  return {kInvSqrt2, kInvSqrt2, -kInvSqrt2, kInvSqrt2, true};
}

SingleQubitOp bs_close_op() {
  return {kInvSqrt2, -kInvSqrt2, kInvSqrt2, kInvSqrt2, true};
}

void apply_spin_hadamard(RegisterState& state, SpinId spin) {
  state.apply_single(bit_of_spin(spin), hadamard_op());
}

void apply_rail_attenuator(RegisterState& state, Photon ph, int rail, cplx t,
                           const std::string& detector) {
  state.apply_attenuator(bit_equals(bit_of(ph, Dof::spatial), rail), t,
                         MassSink::detector, detector);
}

double apply_pol_cpf_block(RegisterState& state, Photon ph,
                           std::optional<int> rail, SpinId spin,
                           const ReflectionPair& pair, const std::string& tag) {
  const int pol_bit = bit_of(ph, Dof::polarization);
  const int rail_bit = bit_of(ph, Dof::spatial);
  const std::string id = block_id("pol_cpf", ph, rail, spin, tag);

  // |0>^p is reflected into the cavity arm, |1>^p passes the balancing
  // attenuator; reflected attenuator mass is heralded.
  RegisterState arm = state.peel(scope_pred(rail_bit, rail, pol_bit, 0));
  state.apply_attenuator(scope_pred(rail_bit, rail, pol_bit, 1),
                         pair.success_scale(), MassSink::detector,
                         id + ":balance");

  arm.apply_single(pol_bit, hadamard_op());
  arm.apply_controlled_amp(pol_bit, bit_of_spin(spin), pair);
  arm.apply_single(pol_bit, hadamard_op());
  arm.apply_single(pol_bit, pauli_x_op());

  // Recombination: the arm's |1>^p component exits at the detector port.
  const double clicked =
      arm.project_detector(id + ":merge", bit_equals(pol_bit, 1));
  state.absorb(std::move(arm));
  return clicked;
}

double apply_rail_phase_block(RegisterState& state, Photon ph,
                              std::optional<int> rail, SpinId spin,
                              const ReflectionPair& pair,
                              const std::string& tag) {
  const int pol_bit = bit_of(ph, Dof::polarization);
  const int rail_bit = bit_of(ph, Dof::spatial);
  const std::string id = block_id("rail_phase", ph, rail, spin, tag);

  // Both polarizations interact with the cavity; the transmitted arm is
  // conjugated with a qubit flip so it probes the |0>^p scattering branch.
  RegisterState arm0 = state.peel(scope_pred(rail_bit, rail, pol_bit, 0));
  RegisterState arm1 = state.peel(scope_pred(rail_bit, rail, pol_bit, 1));

  arm0.apply_single(pol_bit, hadamard_op());
  arm0.apply_controlled_amp(pol_bit, bit_of_spin(spin), pair);
  arm0.apply_single(pol_bit, hadamard_op());
  arm0.apply_single(pol_bit, pauli_x_op());

  arm1.apply_single(pol_bit, pauli_x_op());
  arm1.apply_single(pol_bit, hadamard_op());
  arm1.apply_controlled_amp(pol_bit, bit_of_spin(spin), pair);
  arm1.apply_single(pol_bit, hadamard_op());

  double clicked = arm0.project_detector(id + ":merge", bit_equals(pol_bit, 1));
  clicked += arm1.project_detector(id + ":merge", bit_equals(pol_bit, 0));
  state.absorb(std::move(arm0));
  state.absorb(std::move(arm1));
  return clicked;
}

double apply_pol_cpf_block_direct(RegisterState& state, Photon ph,
                                  std::optional<int> rail, SpinId spin,
                                  const ReflectionPair& pair,
                                  const std::string& tag) {
  const int pol_bit = bit_of(ph, Dof::polarization);
  const int rail_bit = bit_of(ph, Dof::spatial);
  const int spin_bit = bit_of_spin(spin);
  const std::string id = block_id("pol_cpf", ph, rail, spin, tag);
  const cplx s = pair.success_scale();
  const double herald_frac = std::norm(pair.herald_scale());

  double cavity_mass = 0.0;
  double balance_mass = 0.0;
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    if (rail && bit_value(basis, rail_bit) != *rail) continue;
    const double mass = std::norm(state.amp(basis));
    if (bit_value(basis, pol_bit) == 0) {
      cavity_mass += mass;
      const bool flip = bit_value(basis, spin_bit) == 1;  // spin |-1>
      state.amp(basis) *= flip ? -s : s;
    } else {
      balance_mass += mass;
      state.amp(basis) *= s;
    }
  }
  const double clicked = cavity_mass * herald_frac;
  state.add_herald(id + ":merge", clicked);
  state.add_herald(id + ":balance", balance_mass * (1.0 - std::norm(s)));
  state.add_loss(cavity_mass * (1.0 - std::norm(s) - herald_frac));
  return clicked;
}

double apply_rail_phase_block_direct(RegisterState& state, Photon ph,
                                     std::optional<int> rail, SpinId spin,
                                     const ReflectionPair& pair,
                                     const std::string& tag) {
  const int rail_bit = bit_of(ph, Dof::spatial);
  const int spin_bit = bit_of_spin(spin);
  const std::string id = block_id("rail_phase", ph, rail, spin, tag);
  const cplx s = pair.success_scale();
  const double herald_frac = std::norm(pair.herald_scale());

  double arm_mass = 0.0;
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    if (rail && bit_value(basis, rail_bit) != *rail) continue;
    arm_mass += std::norm(state.amp(basis));
    const bool flip = bit_value(basis, spin_bit) == 1;  // spin |-1>
    state.amp(basis) *= flip ? -s : s;
  }
  const double clicked = arm_mass * herald_frac;
  state.add_herald(id + ":merge", clicked);
  state.add_loss(arm_mass * (1.0 - std::norm(s) - herald_frac));
  return clicked;
}

}  // namespace hypersim
