#include "kgedp/limits.hpp"

#include <cmath>

#include "kgedp/errors.hpp"

namespace kgedp {

std::string_view to_string(LimitCase tag) {
    switch (tag) {
        case LimitCase::ConstantMass: return "constant_mass";
        case LimitCase::EnergyDepOnly: return "energy_dependent_only";
        case LimitCase::PositionDepOnly: return "position_dependent_only";
        case LimitCase::GeneralCase: return "general";
    }
    return "unknown";
}

LimitCase classify(const PotentialSpec& potential) {
    const bool b_zero = potential.b() == 0.0;
    const bool delta_zero = potential.delta() == 0.0;
    if (b_zero && delta_zero) return LimitCase::ConstantMass;
    if (b_zero) return LimitCase::EnergyDepOnly;
    if (delta_zero) return LimitCase::PositionDepOnly;
    return LimitCase::GeneralCase;
}

double coupled_mass_energy(const PhysicalConstants& constants, const ParticleSpec& particle,
                           const PotentialSpec& potential, double r, double E) {
    return particle.m0c2() + potential.b() * constants.hbar_c() * vector_potential(potential, r, E);
}

double scalar_potential(const PotentialSpec& potential, double B, double r, double E) {
    if (!(r > 0.0)) throw DomainError("scalar_potential requires r > 0");
    return B * potential.energy_factor(E) / r;
}

bool constant_mass_identity_check(const PhysicalConstants& constants, const ParticleSpec& particle,
                                  const PotentialSpec& potential, double B,
                                  std::span<const RadialEnergySample> samples, double rel_tol) {
    const double target = particle.m0c2() * particle.m0c2();
    for (const auto& s : samples) {
        const double total = coupled_mass_energy(constants, particle, potential, s.r, s.E) +
                             scalar_potential(potential, B, s.r, s.E);
        if (std::abs(total * total - target) > rel_tol * target) return false;
    }
    return true;
}

}  // namespace kgedp
