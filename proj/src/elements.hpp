#pragma once

#include <optional>
#include <string>

#include "physics.hpp"
#include "register_state.hpp"

namespace hypersim {

// ---------------------------------------------------------------------------
// Optical element library. Single-qubit matrices first, then the two heralded
// interferometric blocks built from beam splitters, wave plates and one
// cavity-spin reflection each.
// ---------------------------------------------------------------------------

// Half-wave plate at 22.5 deg (polarization) / symmetric beam splitter
// (spatial rail): |0> -> (|0>+|1>)/sqrt2, |1> -> (|0>-|1>)/sqrt2.
SingleQubitOp hadamard_op();
// Half-wave plate at 45 deg: qubit flip.
SingleQubitOp pauli_x_op();
// Polarization phase flip: diag(1, -1).
SingleQubitOp pauli_z_op();
// Pi phase shifter on one basis state of a qubit: e^{i pi} on |which>.
SingleQubitOp phase_pi_op(int which);
// Beam splitter opening a rail into the two internal interferometer paths:
// |1> -> (|0>+|1>)/sqrt2 (the closing splitter is its inverse).
SingleQubitOp bs_open_op();
SingleQubitOp bs_close_op();

// Electron-spin Hadamard (pi/2 pulse): |+1> <-> (|+1>+|-1>)/sqrt2,
// |-1> <-> (|+1>-|-1>)/sqrt2.
void apply_spin_hadamard(RegisterState& state, SpinId spin);

// Balancing attenuator on one spatial rail of a photon, reflected port
// heralded to the named detector.
void apply_rail_attenuator(RegisterState& state, Photon ph, int rail, cplx t,
                           const std::string& detector);

// ---------------------------------------------------------------------------
// Heralded blocks.
//
// Both blocks scale the participating amplitudes by (r1-r0)/2 per pass; the
// mismatched recombination amplitude (r1+r0)/2 of every cavity arm exits at a
// detector port. `rail` restricts the block to one spatial path of the
// photon; nullopt applies it on either path (the target-photon stages, where
// the same cavities serve both rails).
//
// Returns the probability mass heralded at this block's detector ports
// during the pass.
// ---------------------------------------------------------------------------

// Polarization-spin block: conditional phase flip of -1 on |0>^p when the
// spin is |-1>, scaled by (r1-r0)/2. The |0>^p arm passes H, cavity, H, X;
// the |1>^p arm passes a balancing attenuator.
double apply_pol_cpf_block(RegisterState& state, Photon ph,
                           std::optional<int> rail, SpinId spin,
                           const ReflectionPair& pair,
                           const std::string& tag = {});

// Rail-phase block: spin-conditioned sign on every amplitude occupying the
// addressed rail (+ for spin +1, - for spin -1), scaled by (r1-r0)/2,
// identical for both polarizations. Reflected arm: H, cavity, H, X;
// transmitted arm: X, H, cavity, H.
double apply_rail_phase_block(RegisterState& state, Photon ph,
                              std::optional<int> rail, SpinId spin,
                              const ReflectionPair& pair,
                              const std::string& tag = {});

// Directly constructed conditional operators for the same channels: the
// scaled sign pattern applied amplitude-wise plus the equivalent ledger
// bookkeeping. Used to cross-check the composed versions.
double apply_pol_cpf_block_direct(RegisterState& state, Photon ph,
                                  std::optional<int> rail, SpinId spin,
                                  const ReflectionPair& pair,
                                  const std::string& tag = {});
double apply_rail_phase_block_direct(RegisterState& state, Photon ph,
                                     std::optional<int> rail, SpinId spin,
                                     const ReflectionPair& pair,
                                     const std::string& tag = {});

}  // namespace hypersim
