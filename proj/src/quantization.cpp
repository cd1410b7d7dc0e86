#include "kgedp/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgedp/errors.hpp"

namespace kgedp {

EnergyWindow physical_window(const ParticleSpec& particle, const PotentialSpec& potential, double margin) {
    double lo = -particle.m0c2() + margin;
    double hi = particle.m0c2() - margin;
    const double delta = potential.delta();
    if (delta > 0.0) {
        lo = std::max(lo, -1.0 / delta + margin);
    } else if (delta < 0.0) {
        hi = std::min(hi, -1.0 / delta - margin);
    }
    if (!(lo < hi)) throw DomainError("empty physical energy window");
    return {lo, hi};
}

ResidualSpec ResidualSpec::make(const PhysicalConstants& constants, const ParticleSpec& particle,
                                const PotentialSpec& potential, const QuantumNumbers& qn, Branch branch,
                                double margin) {
    return {constants, particle, potential, qn, branch, physical_window(particle, potential, margin)};
}

ResidualParts residual_parts(const ResidualSpec& spec, double E) {
    if (!spec.window.contains(E)) {
        throw DomainError("energy " + std::to_string(E) + " MeV outside residual window");
    }
    const auto params = case_parameters(spec.constants, spec.particle, spec.potential, spec.qn, E, spec.branch);
    const double denominator = spec.qn.n + 1.0 + params.eta;
    if (std::abs(denominator) < kPoleEpsilon) {
        throw PoleError("quantization denominator vanishes at E = " + std::to_string(E) + " MeV");
    }
    const double m = spec.particle.m0c2();
    const double f = spec.potential.energy_factor(E);
    const double hc = spec.constants.hbar_c();

    ResidualParts out{};
    out.lhs = std::sqrt((m * m - E * E) / (f * f));
    // (A / hbar c) N(E) == hbar c * beta^2 / 2 for every mode.
    out.rhs = 0.5 * hc * params.beta_sq / denominator;
    out.denominator = denominator;
    return out;
}

double residual(const ResidualSpec& spec, double E) { return residual_parts(spec, E).value(); }

std::optional<ResidualParts> try_residual_parts(const ResidualSpec& spec, double E) noexcept {
    try {
        return residual_parts(spec, E);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<double> quantization_denominator(const ResidualSpec& spec, double E) noexcept {
    try {
        const double K = centrifugal_K(spec.constants, spec.particle, spec.potential, spec.qn.l, E);
        return spec.qn.n + 1.0 + resolve_eta(K, spec.branch);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

bool sign_validity(const ResidualSpec& spec, double E) { return residual_parts(spec, E).rhs >= 0.0; }

double constant_mass_b(double A, double B, const PhysicalConstants& constants) {
    if (A == 0.0) throw DomainError("constant_mass_b requires A != 0");
    return B / (constants.hbar_c() * A);
}

}  // namespace kgedp
