#pragma once

#include <complex>

namespace hypersim {

using cplx = std::complex<double>;

// Physical parameters of one emitter-cavity unit. All rates and frequencies
// are expressed in units of the cavity field decay rate, so kappa = 1 by
// convention and the detunings are dimensionless.
struct SystemParams {
  double omega_c = 0.0;  // cavity mode frequency
  double omega_d = 0.0;  // emitter transition frequency
  double omega_p = 0.0;  // probe photon frequency
  double g = 0.0;        // photon-spin coupling strength
  double kappa = 1.0;    // cavity field decay rate (reference unit)
  double gamma = 0.0;    // electron-spin decay rate

  static SystemParams resonant(double g_over_kappa, double gamma_over_kappa) {
    SystemParams p;
    p.g = g_over_kappa;
    p.gamma = gamma_over_kappa;
    return p;
  }
};

// Throws ConfigError if any field is non-finite or violates
// kappa > 0, gamma >= 0, g >= 0.
void validate(const SystemParams& params);

// The two reflection amplitudes a probe photon can pick up: r1 when the
// spin-selected transition couples to the cavity (hot), r0 when it does not
// (cold). |r0| = 1 always; |r1| <= 1 for gamma >= 0.
struct ReflectionPair {
  cplx r1;
  cplx r0;

  // Per-pass success scale of the heralded blocks.
  cplx success_scale() const { return (r1 - r0) / 2.0; }
  // Per-pass amplitude routed to the herald detector.
  cplx herald_scale() const { return (r1 + r0) / 2.0; }
};

// Reflection off the coupled (hot) cavity. Throws NumericError on the
// degenerate denominator-zero point (requires g = 0 and a vanishing
// emitter linewidth factor).
cplx reflection_hot(const SystemParams& params);

// Reflection off the uncoupled (cold) cavity; a pure phase.
cplx reflection_cold(const SystemParams& params);

ReflectionPair reflection_pair(const SystemParams& params);

// Spin-selective scattering rule for circularly polarized light:
// the photon sees the hot cavity when its polarization matches the spin
// branch (pol 0 with spin +1, pol 1 with spin -1), the cold one otherwise.
// pol is the polarization basis label {0,1}; spin is {+1,-1}.
cplx scatter(int pol, int spin, const ReflectionPair& pair);

}  // namespace hypersim
