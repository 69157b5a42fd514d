#include "physics.hpp"

#include <cmath>

#include "errors.hpp"

namespace hypersim {

void validate(const SystemParams& p) {
  const double fields[] = {p.omega_c, p.omega_d, p.omega_p,
                           p.g,       p.kappa,   p.gamma};
  for (double v : fields) {
    if (!std::isfinite(v)) {
      throw ConfigError("system parameters must be finite");
    }
  }
  if (p.kappa <= 0.0) throw ConfigError("kappa must be positive");
  if (p.gamma < 0.0) throw ConfigError("gamma must be non-negative");
  if (p.g < 0.0) throw ConfigError("g must be non-negative");
}

cplx reflection_hot(const SystemParams& p) {
  validate(p);
  const cplx i(0.0, 1.0);
  const cplx cavity_minus = i * (p.omega_c - p.omega_p) - p.kappa / 2.0;
  const cplx cavity_plus = i * (p.omega_c - p.omega_p) + p.kappa / 2.0;
  const cplx emitter = i * (p.omega_d - p.omega_p) + p.gamma / 2.0;
  const double g2 = p.g * p.g;
  const cplx den = cavity_plus * emitter + g2;
  if (std::abs(den) == 0.0) {
    throw NumericError(
        "degenerate reflection denominator (uncoupled, lossless, resonant "
        "emitter)");
  }
  return (cavity_minus * emitter + g2) / den;
}

cplx reflection_cold(const SystemParams& p) {
  validate(p);
  const cplx i(0.0, 1.0);
  return (i * (p.omega_c - p.omega_p) - p.kappa / 2.0) /
         (i * (p.omega_c - p.omega_p) + p.kappa / 2.0);
}

ReflectionPair reflection_pair(const SystemParams& p) {
  return ReflectionPair{reflection_hot(p), reflection_cold(p)};
}

cplx scatter(int pol, int spin, const ReflectionPair& pair) {
  const bool hot = (pol == 0 && spin == +1) || (pol == 1 && spin == -1);
  return hot ? pair.r1 : pair.r0;
}

}  // namespace hypersim
