#include "register_state.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace hypersim {

namespace {
constexpr double kAbortTrace = 1e-30;

std::string dof_pair_name(Photon ph, Dof d) {
  std::string name = d == Dof::polarization ? "pol_" : "spat_";
  name += photon_name(ph);
  return name;
}
}  // namespace

const char* photon_name(Photon ph) {
  switch (ph) {
    case Photon::a: return "a";
    case Photon::b: return "b";
    default: return "c";
  }
}

std::string QubitAddress::label() const {
  switch (kind) {
    case Kind::photon_polarization:
      return std::string("pol[") + photon_name(photon) + "]";
    case Kind::photon_spatial:
      return std::string("rail[") + photon_name(photon) + "]";
    default:
      return "spin" + std::to_string(spin);
  }
}

bool SingleQubitOp::check_unitary(double tol) const {
  // U^dag U == I
  const cplx a = std::conj(m00) * m00 + std::conj(m10) * m10;
  const cplx b = std::conj(m00) * m01 + std::conj(m10) * m11;
  const cplx d = std::conj(m01) * m01 + std::conj(m11) * m11;
  return std::abs(a - 1.0) < tol && std::abs(b) < tol && std::abs(d - 1.0) < tol;
}

double RegisterState::trace() const {
  double t = 0.0;
  for (const cplx& a : amps_) t += std::norm(a);
  return t;
}

double RegisterState::herald_total() const {
  double t = 0.0;
  for (const HeraldEntry& e : heralds_) t += e.mass;
  return t;
}

void RegisterState::apply_single(const QubitAddress& addr,
                                 const SingleQubitOp& op) {
  apply_single(addr.bit(), op);
}

void RegisterState::apply_single(int bit, const SingleQubitOp& op) {
  const std::size_t stride = std::size_t{1} << bit;
  for (std::size_t base = 0; base < kDim; ++base) {
    if (base & stride) continue;
    const cplx a0 = amps_[base];
    const cplx a1 = amps_[base | stride];
    amps_[base] = op.m00 * a0 + op.m01 * a1;
    amps_[base | stride] = op.m10 * a0 + op.m11 * a1;
  }
}

void RegisterState::apply_controlled_amp(int pol_bit, int spin_bit,
                                         const ReflectionPair& pair) {
  const double before = trace();
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    const int pol = bit_value(basis, pol_bit);
    const int spin = spin_outcome_from_bit(bit_value(basis, spin_bit));
    amps_[basis] *= scatter(pol, spin, pair);
  }
  loss_mass_ += before - trace();
}

void RegisterState::apply_attenuator(const BasisPredicate& pred, cplx t,
                                     MassSink sink,
                                     const std::string& detector) {
  if (std::abs(t) > 1.0 + 1e-12) {
    throw NumericError("attenuator transmission exceeds 1");
  }
  double matched = 0.0;
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    if (!pred(basis)) continue;
    matched += std::norm(amps_[basis]);
    amps_[basis] *= t;
  }
  const double removed = matched * (1.0 - std::norm(t));
  if (sink == MassSink::detector) {
    add_herald(detector, removed);
  } else {
    loss_mass_ += removed;
  }
}

double RegisterState::project_detector(const std::string& detector,
                                       const BasisPredicate& pred) {
  double clicked = 0.0;
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    if (!pred(basis)) continue;
    clicked += std::norm(amps_[basis]);
    amps_[basis] = cplx{0.0, 0.0};
  }
  add_herald(detector, clicked);
  return clicked;
}

RegisterState RegisterState::peel(const BasisPredicate& pred) {
  RegisterState routed;
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    if (!pred(basis)) continue;
    routed.amps_[basis] = amps_[basis];
    amps_[basis] = cplx{0.0, 0.0};
  }
  return routed;
}

void RegisterState::absorb(RegisterState&& other) {
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    amps_[basis] += other.amps_[basis];
  }
  for (HeraldEntry& e : other.heralds_) heralds_.push_back(std::move(e));
  loss_mass_ += other.loss_mass_;
  other.heralds_.clear();
  other.loss_mass_ = 0.0;
}

void RegisterState::scale(cplx z) {
  for (cplx& a : amps_) a *= z;
}

double RegisterState::renormalize() {
  const double t = trace();
  if (t <= kAbortTrace) {
    throw GateAbort("gate aborted, all amplitude heralded away");
  }
  const double inv = 1.0 / std::sqrt(t);
  for (cplx& a : amps_) a *= inv;
  return t;
}

std::array<MeasureBranch, 2> measure_spin_branches(const RegisterState& state,
                                                   SpinId spin) {
  const double total = state.trace();
  if (total <= kAbortTrace) {
    throw GateAbort("gate aborted, measurement on a zero-trace state");
  }
  const int bit = bit_of_spin(spin);
  std::array<MeasureBranch, 2> branches;
  for (int bv = 0; bv < 2; ++bv) {
    MeasureBranch& br = branches[bv];
    br.outcome = spin_outcome_from_bit(bv);
    br.state = state;
    double kept = 0.0;
    for (std::size_t basis = 0; basis < kDim; ++basis) {
      if (bit_value(basis, bit) != bv) {
        br.state.amp(basis) = cplx{0.0, 0.0};
      } else {
        kept += std::norm(state.amp(basis));
      }
    }
    br.probability = kept / total;
    if (kept > 0.0) {
      // keep the pre-measurement trace so heralded prefactors stay observable
      br.state.scale(std::sqrt(total / kept));
    }
  }
  return branches;
}

MeasureBranch measure_spin_sampled(RegisterState& state, SpinId spin,
                                   std::mt19937_64& rng) {
  auto branches = measure_spin_branches(state, spin);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int pick = unit(rng) < branches[0].probability ? 0 : 1;
  state = branches[pick].state;
  MeasureBranch result = std::move(branches[pick]);
  return result;
}

double fidelity(const RegisterState& a, const RegisterState& b) {
  if (std::abs(a.trace() - 1.0) > 1e-10 || std::abs(b.trace() - 1.0) > 1e-10) {
    throw NumericError("fidelity requires unit-norm states");
  }
  cplx overlap{0.0, 0.0};
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    overlap += std::conj(a.amp(basis)) * b.amp(basis);
  }
  return std::norm(overlap);
}

const DofAmps& PhotonInput::dof(Photon ph, Dof d) const {
  return const_cast<PhotonInput*>(this)->dof(ph, d);
}

DofAmps& PhotonInput::dof(Photon ph, Dof d) {
  if (d == Dof::polarization) {
    switch (ph) {
      case Photon::a: return pol_a;
      case Photon::b: return pol_b;
      default: return pol_c;
    }
  }
  switch (ph) {
    case Photon::a: return spat_a;
    case Photon::b: return spat_b;
    default: return spat_c;
  }
}

RegisterState init_product(const PhotonInput& input,
                           const std::array<int, kSpinCount>& spins) {
  for (Photon ph : {Photon::a, Photon::b, Photon::c}) {
    for (Dof d : {Dof::polarization, Dof::spatial}) {
      const DofAmps& v = input.dof(ph, d);
      const double norm = std::norm(v.c0) + std::norm(v.c1);
      if (std::abs(norm - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "input amplitudes for " << dof_pair_name(ph, d)
            << " are not normalized (|c0|^2+|c1|^2 = " << norm << ")";
        throw ConfigError(msg.str());
      }
    }
  }

  std::size_t spin_mask = 0;
  for (SpinId s = 1; s <= kSpinCount; ++s) {
    const int outcome = spins[s - 1];
    if (outcome != +1 && outcome != -1) {
      throw ConfigError("spin initial states must be +1 or -1");
    }
    spin_mask |= static_cast<std::size_t>(spin_bit_from_outcome(outcome))
                 << bit_of_spin(s);
  }

  RegisterState state;
  for (std::size_t photonic = 0; photonic < 64; ++photonic) {
    cplx amp{1.0, 0.0};
    for (Photon ph : {Photon::a, Photon::b, Photon::c}) {
      for (Dof d : {Dof::polarization, Dof::spatial}) {
        const DofAmps& v = input.dof(ph, d);
        amp *= bit_value(photonic, bit_of(ph, d)) ? v.c1 : v.c0;
      }
    }
    state.amp(photonic | spin_mask) = amp;
  }
  return state;
}

}  // namespace hypersim
