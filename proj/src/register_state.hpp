#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "physics.hpp"

namespace hypersim {

// ---------------------------------------------------------------------------
// Register layout
//
// Three photons, each carrying a polarization qubit and a spatial-rail qubit,
// plus four stationary spins: ten qubits, dimension 1024. Bit positions are
// fixed for the lifetime of the simulation.
//   bits 0..2  polarization of photons a, b, c
//   bits 3..5  spatial rail of photons a, b, c
//   bits 6..9  spins 1..4 (bit value 0 <-> spin +1, 1 <-> spin -1)
// ---------------------------------------------------------------------------

inline constexpr int kPhotonCount = 3;
inline constexpr int kSpinCount = 4;
inline constexpr int kQubitCount = 10;
inline constexpr std::size_t kDim = std::size_t{1} << kQubitCount;

enum class Photon : int { a = 0, b = 1, c = 2 };
enum class Dof : int { polarization = 0, spatial = 1 };
using SpinId = int;  // 1..4

constexpr int bit_of(Photon ph, Dof dof) {
  return static_cast<int>(ph) + (dof == Dof::spatial ? kPhotonCount : 0);
}
constexpr int bit_of_spin(SpinId spin) { return 2 * kPhotonCount + spin - 1; }

constexpr int bit_value(std::size_t basis, int bit) {
  return static_cast<int>((basis >> bit) & 1u);
}
// Spin outcome labels are +1/-1; bit 0 encodes +1.
constexpr int spin_bit_from_outcome(int outcome) { return outcome == +1 ? 0 : 1; }
constexpr int spin_outcome_from_bit(int bit) { return bit == 0 ? +1 : -1; }

const char* photon_name(Photon ph);

struct QubitAddress {
  enum class Kind { photon_polarization, photon_spatial, spin };
  Kind kind;
  Photon photon = Photon::a;  // valid for photon kinds
  SpinId spin = 1;            // valid for spin kind

  static QubitAddress pol(Photon ph) {
    return {Kind::photon_polarization, ph, 1};
  }
  static QubitAddress spatial(Photon ph) {
    return {Kind::photon_spatial, ph, 1};
  }
  static QubitAddress of_spin(SpinId s) { return {Kind::spin, Photon::a, s}; }

  int bit() const {
    switch (kind) {
      case Kind::photon_polarization: return bit_of(photon, Dof::polarization);
      case Kind::photon_spatial: return bit_of(photon, Dof::spatial);
      default: return bit_of_spin(spin);
    }
  }
  std::string label() const;
};

// Predicate over computational basis indices; selects the subspace an
// optical port or attenuator acts on.
using BasisPredicate = std::function<bool(std::size_t)>;

inline BasisPredicate bit_equals(int bit, int value) {
  return [bit, value](std::size_t basis) { return bit_value(basis, bit) == value; };
}
inline BasisPredicate all_basis() {
  return [](std::size_t) { return true; };
}

// A 2x2 operator applied to one register qubit.
struct SingleQubitOp {
  cplx m00, m01, m10, m11;
  bool unitary = true;

  bool check_unitary(double tol = 1e-12) const;
};

struct HeraldEntry {
  std::string detector;
  double mass = 0.0;
};

enum class MassSink { detector, loss };

// ---------------------------------------------------------------------------
// RegisterState: unnormalized state vector plus probability bookkeeping.
//
// Evolution is deliberately non-unitary: heralded ports move probability mass
// into the ledger, absorptive channels into loss_mass. For any sequence of
// channels applied to a normalized input,
//   trace() + herald_total() + loss_mass() == 1.
// ---------------------------------------------------------------------------
class RegisterState {
 public:
  RegisterState() : amps_(kDim, cplx{0.0, 0.0}) {}

  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx& amp(std::size_t basis) { return amps_[basis]; }
  const cplx& amp(std::size_t basis) const { return amps_[basis]; }

  double trace() const;
  const std::vector<HeraldEntry>& herald_ledger() const { return heralds_; }
  double herald_total() const;
  double loss_mass() const { return loss_mass_; }

  // Applies op to the addressed qubit. Trace is preserved iff op is unitary.
  void apply_single(const QubitAddress& addr, const SingleQubitOp& op);
  void apply_single(int bit, const SingleQubitOp& op);

  // Spin-selective scattering: every basis amplitude is multiplied by
  // scatter(pol, spin, pair). Absorbed mass (|r1| < 1) is added to loss_mass.
  void apply_controlled_amp(int pol_bit, int spin_bit,
                            const ReflectionPair& pair);

  // Amplitudes matching the predicate are scaled by t (|t| <= 1); the removed
  // mass goes to the named detector or to loss.
  void apply_attenuator(const BasisPredicate& pred, cplx t, MassSink sink,
                        const std::string& detector = {});

  // Probability mass in the predicate subspace is moved to the detector
  // ledger and the subspace zeroed. No renormalization. Returns the mass.
  double project_detector(const std::string& detector,
                          const BasisPredicate& pred);

  // Moves the matching amplitudes into a fresh state (this keeps the rest and
  // the ledger). Used to route part of the register into an interferometer
  // arm whose internal mode reuses a register bit.
  RegisterState peel(const BasisPredicate& pred);

  // Adds other's amplitudes back (caller guarantees disjoint support) and
  // folds its ledger and loss into this state.
  void absorb(RegisterState&& other);

  // Scales every amplitude by z (internal phases / balancing factors).
  void scale(cplx z);

  // Normalizes to unit trace; returns the success probability (the trace
  // before normalizing). Throws GateAbort when nothing survived.
  double renormalize();

  void add_loss(double mass) { loss_mass_ += mass; }
  void add_herald(const std::string& detector, double mass) {
    heralds_.push_back({detector, mass});
  }

 private:
  std::vector<cplx> amps_;
  std::vector<HeraldEntry> heralds_;
  double loss_mass_ = 0.0;
};

struct MeasureBranch {
  int outcome = +1;    // +1 or -1
  double probability;  // Born probability, conditional on the current state
  RegisterState state; // projected, renormalized to the pre-measurement trace
};

// Deterministic measurement: both branches with their Born probabilities.
// Throws GateAbort on a zero-trace state.
std::array<MeasureBranch, 2> measure_spin_branches(const RegisterState& state,
                                                   SpinId spin);

// Sampled measurement; collapses the state in place.
MeasureBranch measure_spin_sampled(RegisterState& state, SpinId spin,
                                   std::mt19937_64& rng);

// |<a|b>|^2 for unit-norm states (throws NumericError otherwise).
double fidelity(const RegisterState& a, const RegisterState& b);

// One degree of freedom of one photon: two complex amplitudes.
struct DofAmps {
  cplx c0{1.0, 0.0};
  cplx c1{0.0, 0.0};
};

// The twelve photonic input amplitudes (six normalized 2-vectors).
struct PhotonInput {
  DofAmps pol_a, pol_b, pol_c;
  DofAmps spat_a, spat_b, spat_c;

  const DofAmps& dof(Photon ph, Dof d) const;
  DofAmps& dof(Photon ph, Dof d);
};

// Tensor-product initial state. Each 2-vector must be normalized within
// 1e-10 (ConfigError naming the offending pair otherwise). Spins are basis
// labels +1/-1.
RegisterState init_product(const PhotonInput& input,
                           const std::array<int, kSpinCount>& spins);

}  // namespace hypersim
