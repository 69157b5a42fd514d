#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "elements.hpp"
#include "errors.hpp"
#include "physics.hpp"
#include "register_state.hpp"

using namespace hypersim;

namespace {

RegisterState random_register_state(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RegisterState st;
  double trace = 0.0;
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    st.amp(basis) = cplx{normal(rng), normal(rng)};
    trace += std::norm(st.amp(basis));
  }
  st.scale(1.0 / std::sqrt(trace));
  return st;
}

std::map<std::string, double> ledger_sums(const RegisterState& st) {
  std::map<std::string, double> sums;
  for (const HeraldEntry& e : st.herald_ledger()) sums[e.detector] += e.mass;
  return sums;
}

// Basis state with the given photon-a polarization/rail, spin value for the
// addressed spin, everything else |0> / |+1>.
std::size_t basis_of(Photon ph, int pol, int rail, SpinId spin, int outcome) {
  std::size_t basis = 0;
  basis |= static_cast<std::size_t>(pol) << bit_of(ph, Dof::polarization);
  basis |= static_cast<std::size_t>(rail) << bit_of(ph, Dof::spatial);
  basis |= static_cast<std::size_t>(spin_bit_from_outcome(outcome))
           << bit_of_spin(spin);
  return basis;
}

const SystemParams kWeak = SystemParams::resonant(0.5, 0.01);

}  // namespace

TEST_CASE("spin Hadamard") {
  RegisterState st = init_product(PhotonInput{}, {+1, +1, +1, +1});
  apply_spin_hadamard(st, 2);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(st.amp(0) - cplx{h, 0.0}) < 1e-14);
  CHECK(std::abs(st.amp(std::size_t{1} << bit_of_spin(2)) - cplx{h, 0.0}) <
        1e-14);

  apply_spin_hadamard(st, 2);  // involution
  CHECK(std::abs(st.amp(0) - cplx{1.0, 0.0}) < 1e-14);

  std::mt19937_64 rng(3);
  RegisterState r = random_register_state(rng);
  apply_spin_hadamard(r, 4);
  CHECK(r.trace() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("polarization block: success amplitudes and herald masses") {
  const ReflectionPair pair = reflection_pair(kWeak);
  const cplx s = pair.success_scale();
  const double herald = std::norm(pair.herald_scale());

  SUBCASE("|0>^p with spin |+1> keeps +s") {
    RegisterState st;
    st.amp(basis_of(Photon::a, 0, 0, 2, +1)) = 1.0;
    const double clicked = apply_pol_cpf_block(st, Photon::a, 0, 2, pair);
    CHECK(std::abs(st.amp(basis_of(Photon::a, 0, 0, 2, +1)) - s) < 1e-14);
    CHECK(clicked == doctest::Approx(herald).epsilon(1e-12));
  }

  SUBCASE("|0>^p with spin |-1> flips to -s") {
    RegisterState st;
    st.amp(basis_of(Photon::a, 0, 1, 2, -1)) = 1.0;
    apply_pol_cpf_block(st, Photon::a, 1, 2, pair);
    CHECK(std::abs(st.amp(basis_of(Photon::a, 0, 1, 2, -1)) + s) < 1e-14);
  }

  SUBCASE("|1>^p passes the balancing arm only") {
    RegisterState st;
    st.amp(basis_of(Photon::a, 1, 0, 2, +1)) = 1.0;
    const double clicked = apply_pol_cpf_block(st, Photon::a, 0, 2, pair);
    CHECK(std::abs(st.amp(basis_of(Photon::a, 1, 0, 2, +1)) - s) < 1e-14);
    CHECK(clicked == doctest::Approx(0.0));
    const auto sums = ledger_sums(st);
    CHECK(sums.at("pol_cpf[a:r0:s2]:balance") ==
          doctest::Approx(1.0 - std::norm(s)).epsilon(1e-12));
  }

  SUBCASE("off-rail amplitudes are bystanders") {
    RegisterState st;
    st.amp(basis_of(Photon::a, 0, 1, 2, -1)) = 1.0;
    apply_pol_cpf_block(st, Photon::a, 0, 2, pair);  // block on rail 0
    CHECK(std::abs(st.amp(basis_of(Photon::a, 0, 1, 2, -1)) - 1.0) < 1e-15);
  }
}

TEST_CASE("rail block: spin-conditioned sign, polarization untouched") {
  const ReflectionPair pair = reflection_pair(kWeak);
  const cplx s = pair.success_scale();

  for (int pol = 0; pol < 2; ++pol) {
    RegisterState plus;
    plus.amp(basis_of(Photon::b, pol, 1, 3, +1)) = 1.0;
    apply_rail_phase_block(plus, Photon::b, 1, 3, pair);
    CHECK(std::abs(plus.amp(basis_of(Photon::b, pol, 1, 3, +1)) - s) < 1e-14);

    RegisterState minus;
    minus.amp(basis_of(Photon::b, pol, 1, 3, -1)) = 1.0;
    apply_rail_phase_block(minus, Photon::b, 1, 3, pair);
    CHECK(std::abs(minus.amp(basis_of(Photon::b, pol, 1, 3, -1)) + s) < 1e-14);
  }
}

TEST_CASE("blocks as scaled conditional-phase operators") {
  // dense extraction of the 4x4 (photon qubit x spin) operator at several
  // working points, one of them off-resonant with complex coefficients
  std::mt19937_64 rng(0xb5297a4d);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    SystemParams params;
    params.g = 0.3 + 2.0 * unit(rng);
    params.gamma = 0.005 + 0.1 * unit(rng);
    if (trial == 4) {
      params.omega_c = 0.4;
      params.omega_d = -0.3;
    }
    const ReflectionPair pair = reflection_pair(params);
    const cplx s = pair.success_scale();

    // polarization block on rail 1, spin 2
    for (int pol = 0; pol < 2; ++pol) {
      for (int outcome : {+1, -1}) {
        RegisterState st;
        st.amp(basis_of(Photon::a, pol, 1, 2, outcome)) = 1.0;
        apply_pol_cpf_block(st, Photon::a, 1, 2, pair);
        const cplx expected = (pol == 0 && outcome == -1) ? -s : s;
        CHECK(std::abs(st.amp(basis_of(Photon::a, pol, 1, 2, outcome)) -
                       expected) < 1e-12);
        // nothing anywhere else
        double elsewhere = 0.0;
        for (std::size_t basis = 0; basis < kDim; ++basis) {
          if (basis == basis_of(Photon::a, pol, 1, 2, outcome)) continue;
          elsewhere += std::norm(st.amp(basis));
        }
        CHECK(elsewhere < 1e-24);
      }
    }

    // rail block on rail 1, spin 4
    for (int pol = 0; pol < 2; ++pol) {
      for (int outcome : {+1, -1}) {
        RegisterState st;
        st.amp(basis_of(Photon::c, pol, 1, 4, outcome)) = 1.0;
        apply_rail_phase_block(st, Photon::c, 1, 4, pair);
        const cplx expected = outcome == -1 ? -s : s;
        CHECK(std::abs(st.amp(basis_of(Photon::c, pol, 1, 4, outcome)) -
                       expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("composed and direct block constructions agree") {
  std::mt19937_64 rng(0x2545f491);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int trial = 0; trial < 5; ++trial) {
    SystemParams params;
    params.g = 0.3 + 2.0 * unit(rng);
    params.gamma = 0.005 + 0.2 * unit(rng);
    if (trial >= 3) {  // off-resonant, complex coefficients
      params.omega_c = unit(rng) - 0.5;
      params.omega_d = unit(rng) - 0.5;
    }
    const ReflectionPair pair = reflection_pair(params);

    for (int kind = 0; kind < 2; ++kind) {
      RegisterState composed = random_register_state(rng);
      RegisterState direct = composed;
      double click_composed, click_direct;
      if (kind == 0) {
        click_composed = apply_pol_cpf_block(composed, Photon::b, 1, 1, pair);
        click_direct = apply_pol_cpf_block_direct(direct, Photon::b, 1, 1, pair);
      } else {
        click_composed = apply_rail_phase_block(composed, Photon::b, 0, 3, pair);
        click_direct =
            apply_rail_phase_block_direct(direct, Photon::b, 0, 3, pair);
      }
      CHECK(std::abs(click_composed - click_direct) < 1e-12);
      for (std::size_t basis = 0; basis < kDim; ++basis) {
        CHECK(std::abs(composed.amp(basis) - direct.amp(basis)) < 1e-12);
      }
      CHECK(std::abs(composed.loss_mass() - direct.loss_mass()) < 1e-12);
      const auto lc = ledger_sums(composed);
      const auto ld = ledger_sums(direct);
      for (const auto& [id, mass] : lc) {
        const auto it = ld.find(id);
        REQUIRE(it != ld.end());
        CHECK(std::abs(mass - it->second) < 1e-12);
      }
    }
  }
}

TEST_CASE("herald probability per pass tracks the mismatch amplitude") {
  std::mt19937_64 rng(0x7f4a7c15);
  SystemParams params;
  params.g = 0.9;
  params.gamma = 0.05;
  params.omega_c = 0.25;
  params.omega_d = -0.15;
  const ReflectionPair pair = reflection_pair(params);
  const double herald_frac = std::norm(pair.herald_scale());

  RegisterState st = random_register_state(rng);
  double arm_mass = 0.0;
  for (std::size_t basis = 0; basis < kDim; ++basis) {
    if (bit_value(basis, bit_of(Photon::a, Dof::spatial)) == 1 &&
        bit_value(basis, bit_of(Photon::a, Dof::polarization)) == 0) {
      arm_mass += std::norm(st.amp(basis));
    }
  }
  const double clicked = apply_pol_cpf_block(st, Photon::a, 1, 2, pair);
  CHECK(clicked == doctest::Approx(arm_mass * herald_frac).epsilon(1e-10));
}

TEST_CASE("lossless and strong-coupling limits") {
  SUBCASE("gamma = 0 on resonance: unit-modulus scale, silent detectors") {
    const ReflectionPair pair =
        reflection_pair(SystemParams::resonant(0.8, 0.0));
    CHECK(std::abs(std::abs(pair.success_scale()) - 1.0) < 1e-12);
    std::mt19937_64 rng(5);
    RegisterState st = random_register_state(rng);
    const double clicked = apply_pol_cpf_block(st, Photon::a, 0, 1, pair);
    CHECK(clicked < 1e-20);
    CHECK(st.trace() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("strong coupling: scale approaches 1, losses vanish") {
    const ReflectionPair pair =
        reflection_pair(SystemParams::resonant(1e6, 0.01));
    CHECK(std::abs(pair.success_scale() - cplx{1.0, 0.0}) < 1e-10);
    std::mt19937_64 rng(6);
    RegisterState st = random_register_state(rng);
    apply_rail_phase_block(st, Photon::c, 1, 4, pair);
    CHECK(st.trace() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(st.herald_total() + st.loss_mass() < 1e-10);
  }
}

TEST_CASE("block support: rail bits condition but never flip") {
  std::mt19937_64 rng(0xda3e39cb);
  const ReflectionPair pair = reflection_pair(SystemParams::resonant(1.1, 0.02));

  for (std::size_t basis = 0; basis < kDim; basis += 7) {
    RegisterState st;
    st.amp(basis) = 1.0;
    apply_pol_cpf_block(st, Photon::b, 0, 2, pair);
    const std::size_t spatial_mask = std::size_t{0x7} << kPhotonCount;
    for (std::size_t out = 0; out < kDim; ++out) {
      if (std::abs(st.amp(out)) == 0.0) continue;
      // polarization block: every populated output keeps all spatial bits
      CHECK((out & spatial_mask) == (basis & spatial_mask));
    }

    RegisterState st2;
    st2.amp(basis) = 1.0;
    apply_rail_phase_block(st2, Photon::b, 1, 3, pair);
    const std::size_t pol_mask = 0x7;
    for (std::size_t out = 0; out < kDim; ++out) {
      if (std::abs(st2.amp(out)) == 0.0) continue;
      // rail block: every populated output keeps all polarization bits
      CHECK((out & pol_mask) == (basis & pol_mask));
    }
  }
  (void)rng;
}

TEST_CASE("rail attenuator") {
  const ReflectionPair pair = reflection_pair(kWeak);
  const cplx s = pair.success_scale();

  RegisterState st;
  st.amp(basis_of(Photon::a, 0, 0, 1, +1)) = 1.0;
  apply_rail_attenuator(st, Photon::a, 0, s, "vbs");
  CHECK(std::abs(st.amp(basis_of(Photon::a, 0, 0, 1, +1)) - s) < 1e-15);
  CHECK(st.herald_total() ==
        doctest::Approx(1.0 - std::norm(s)).epsilon(1e-12));

  // t = 1 is the identity
  RegisterState id;
  id.amp(3) = 1.0;
  apply_rail_attenuator(id, Photon::a, 0, cplx{1.0, 0.0}, "vbs");
  CHECK(std::abs(id.amp(3) - cplx{1.0, 0.0}) < 1e-15);

  // balancing: a rail block on rail 1 and an equal attenuator on rail 0
  // leave both rails with the same magnitude
  RegisterState bal;
  bal.amp(basis_of(Photon::a, 0, 0, 4, -1)) = 1.0 / std::sqrt(2.0);
  bal.amp(basis_of(Photon::a, 0, 1, 4, -1)) = 1.0 / std::sqrt(2.0);
  apply_rail_phase_block(bal, Photon::a, 1, 4, pair);
  apply_rail_attenuator(bal, Photon::a, 0, s, "vbs");
  const double m0 = std::norm(bal.amp(basis_of(Photon::a, 0, 0, 4, -1)));
  const double m1 = std::norm(bal.amp(basis_of(Photon::a, 0, 1, 4, -1)));
  CHECK(m0 == doctest::Approx(m1).epsilon(1e-12));
}
