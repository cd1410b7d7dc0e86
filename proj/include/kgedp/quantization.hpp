#pragma once

#include <optional>

#include "kgedp/model.hpp"

namespace kgedp {

/// Energy interval [lo, hi] in MeV. Windows built by physical_window already sit
/// `margin` inside the open physical interval, so the end points are evaluable.
struct EnergyWindow {
    double lo;
    double hi;

    bool contains(double E) const noexcept { return E >= lo && E <= hi; }
    double width() const noexcept { return hi - lo; }
};

/// (-m0c2, m0c2) intersected with {1 + delta*E > 0}, shrunk by `margin` at each end.
/// Throws DomainError if nothing is left.
EnergyWindow physical_window(const ParticleSpec& particle, const PotentialSpec& potential,
                             double margin = 1e-6);

/// Everything needed to evaluate the quantization condition of one (n, l) cell.
struct ResidualSpec {
    PhysicalConstants constants;
    ParticleSpec particle;
    PotentialSpec potential;
    QuantumNumbers qn;
    Branch branch = Branch::Plus;
    EnergyWindow window;

    static ResidualSpec make(const PhysicalConstants& constants, const ParticleSpec& particle,
                             const PotentialSpec& potential, const QuantumNumbers& qn,
                             Branch branch = Branch::Plus, double margin = 1e-6);
};

/// The two sides of  sqrt((m0^2c^4 - E^2)/(1 + delta*E)^2) = (A/hbar c) N(E) / (n + 1 + eta)
/// together with the denominator n + 1 + eta = n + 1/2 + s*sqrt(1/4 + K).
struct ResidualParts {
    double lhs;          // MeV
    double rhs;          // MeV
    double denominator;  // dimensionless

    double value() const noexcept { return lhs - rhs; }
};

/// Denominators closer to zero than this are treated as poles.
inline constexpr double kPoleEpsilon = 1e-12;

/// Throws BranchError (no real eta), PoleError (denominator ~ 0) or DomainError (E outside window).
ResidualParts residual_parts(const ResidualSpec& spec, double E);

/// LHS - RHS in MeV.
double residual(const ResidualSpec& spec, double E);

/// Nothrow variant: empty wherever the residual is undefined.
std::optional<ResidualParts> try_residual_parts(const ResidualSpec& spec, double E) noexcept;

/// n + 1 + eta(E), empty where eta is not real. Used to locate poles.
std::optional<double> quantization_denominator(const ResidualSpec& spec, double E) noexcept;

/// True iff RHS(E) >= 0, i.e. the condition can hold with a nonnegative square root on the left.
bool sign_validity(const ResidualSpec& spec, double E);

/// Mass coupling b = B / (hbar c A) that cancels a scalar term B(1 + delta*E)/r against the
/// vector coupling of the mass, leaving m0c2 + b*hbar*c*V_v + V_s = m0c2.
double constant_mass_b(double A, double B, const PhysicalConstants& constants);

}  // namespace kgedp
