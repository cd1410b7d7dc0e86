#pragma once

#include <span>
#include <string_view>

#include "kgedp/model.hpp"

namespace kgedp {

/// Which special case a (b, delta) pair falls into. The tests are exact comparisons
/// with zero.
enum class LimitCase {
    ConstantMass,     // b = 0, delta = 0
    EnergyDepOnly,    // b = 0, delta != 0
    PositionDepOnly,  // b != 0, delta = 0
    GeneralCase,      // b != 0, delta != 0
};

std::string_view to_string(LimitCase tag);

LimitCase classify(const PotentialSpec& potential);

struct RadialEnergySample {
    double r;  // fm
    double E;  // MeV
};

/// m0c2 + b*hbar*c*V_v(r,E): the mass-energy written through the vector potential.
double coupled_mass_energy(const PhysicalConstants& constants, const ParticleSpec& particle,
                           const PotentialSpec& potential, double r, double E);

/// Repulsive scalar term V_s(r,E) = B (1 + delta*E) / r.
double scalar_potential(const PotentialSpec& potential, double B, double r, double E);

/// True iff (m0c2 + b*hbar*c*V_v + V_s)^2 == m0^2c^4 to `rel_tol` at every sample.
bool constant_mass_identity_check(const PhysicalConstants& constants, const ParticleSpec& particle,
                                  const PotentialSpec& potential, double B,
                                  std::span<const RadialEnergySample> samples, double rel_tol = 1e-12);

}  // namespace kgedp
