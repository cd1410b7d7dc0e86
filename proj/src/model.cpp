#include "kgedp/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "kgedp/errors.hpp"

namespace kgedp {

namespace {

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

void require_energy_factor(const PotentialSpec& potential, double E) {
    if (!(potential.energy_factor(E) > 0.0)) {
        throw DomainError("1 + delta*E must be positive (E = " + std::to_string(E) + " MeV)");
    }
}

// Scalar sign entering beta^2 and K in the mixed cases: +1 for EMES, -1 for EMOS.
int mixed_sign(CouplingMode mode) { return mode == CouplingMode::EMES ? 1 : -1; }

}  // namespace

std::string_view to_string(CouplingMode mode) {
    switch (mode) {
        case CouplingMode::EMES: return "emes";
        case CouplingMode::EMOS: return "emos";
        case CouplingMode::PureVector: return "pv";
        case CouplingMode::PureScalar: return "ps";
    }
    return "unknown";
}

std::string_view to_string(Branch branch) { return branch == Branch::Plus ? "plus" : "minus"; }

CouplingMode parse_mode(std::string_view text) {
    const auto key = lowercase(text);
    if (key == "emes") return CouplingMode::EMES;
    if (key == "emos") return CouplingMode::EMOS;
    if (key == "pv" || key == "pure-vector") return CouplingMode::PureVector;
    if (key == "ps" || key == "pure-scalar") return CouplingMode::PureScalar;
    throw std::invalid_argument("unknown coupling mode '" + std::string(text) + "'");
}

Branch parse_branch(std::string_view text) {
    const auto key = lowercase(text);
    if (key == "plus" || key == "+") return Branch::Plus;
    if (key == "minus" || key == "-") return Branch::Minus;
    throw std::invalid_argument("unknown eta branch '" + std::string(text) + "'");
}

PhysicalConstants::PhysicalConstants(double hbar_c) : hbar_c_(hbar_c) {
    if (!(hbar_c > 0.0) || !std::isfinite(hbar_c)) {
        throw DomainError("hbar_c must be positive and finite");
    }
}

ParticleSpec::ParticleSpec(double m0c2, double lambda) : m0c2_(m0c2), lambda_(lambda) {
    if (!(m0c2 > 0.0) || !std::isfinite(m0c2)) throw DomainError("m0c2 must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
}

ParticleSpec ParticleSpec::neutral_pion() { return {134.977, 1.462}; }

ParticleSpec ParticleSpec::with_compton_wavelength(double m0c2, const PhysicalConstants& constants) {
    return {m0c2, constants.hbar_c() / m0c2};
}

PotentialSpec::PotentialSpec(CouplingMode mode, double A, double delta, double b)
    : mode_(mode), A_(A), delta_(delta), b_(b) {
    if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("A must be positive (attractive well)");
    if (!std::isfinite(delta)) throw DomainError("delta must be finite");
    if (!std::isfinite(b)) throw DomainError("b must be finite");
}

PotentialSpec PotentialSpec::from_lambda_b(CouplingMode mode, double A, double delta, double lambda_b,
                                           const ParticleSpec& particle) {
    return {mode, A, delta, lambda_b / particle.lambda()};
}

QuantumNumbers::QuantumNumbers(int n_, int l_) : n(n_), l(l_) {
    if (n < 0 || l < 0) throw DomainError("quantum numbers must be nonnegative");
}

double CaseParameters::tau() const { return std::sqrt(std::max(tau_sq, 0.0)); }

double mass_at(const ParticleSpec& particle, const PotentialSpec& potential, double r, double E) {
    if (!(r > 0.0)) throw DomainError("mass_at requires r > 0");
    const double coupling = potential.lambda_b(particle) * potential.A() * potential.energy_factor(E) / r;
    return particle.m0c2() * (1.0 - coupling);
}

double vector_potential(const PotentialSpec& potential, double r, double E) {
    if (!(r > 0.0)) throw DomainError("vector_potential requires r > 0");
    return -potential.A() * potential.energy_factor(E) / r;
}

double resolve_eta(double K, Branch branch) {
    const double disc = 0.25 + K;
    if (disc < 0.0) {
        throw BranchError("no real eta: 1/4 + K = " + std::to_string(disc));
    }
    return -0.5 + sign_of(branch) * std::sqrt(disc);
}

double centrifugal_K(const PhysicalConstants& constants, const ParticleSpec& particle,
                     const PotentialSpec& potential, int l, double E) {
    require_energy_factor(potential, E);
    const double hc2 = constants.hbar_c() * constants.hbar_c();
    const double m = particle.m0c2();
    const double lb = potential.lambda_b(particle);
    const double A2 = potential.A() * potential.A();
    const double f = potential.energy_factor(E);
    const double orbital = static_cast<double>(l) * (l + 1);

    double coefficient = 0.0;
    switch (potential.mode()) {
        case CouplingMode::EMES:
        case CouplingMode::EMOS:
            coefficient = (m * m * lb * lb * A2 + mixed_sign(potential.mode()) * 2.0 * lb * A2 * m) / hc2;
            break;
        case CouplingMode::PureVector:
            coefficient = A2 * (m * m * lb * lb - 1.0) / hc2;
            break;
        case CouplingMode::PureScalar:
            coefficient = A2 * (1.0 + m * lb) * (1.0 + m * lb) / hc2;
            break;
    }
    return coefficient * f * f + orbital;
}

double coulomb_beta_sq(const PhysicalConstants& constants, const ParticleSpec& particle,
                       const PotentialSpec& potential, double E) {
    const double hc2 = constants.hbar_c() * constants.hbar_c();
    const double m = particle.m0c2();
    const double lb = potential.lambda_b(particle);
    const double A = potential.A();

    switch (potential.mode()) {
        case CouplingMode::EMES:
        case CouplingMode::EMOS:
            return 2.0 * A * (E + mixed_sign(potential.mode()) * m + lb * m * m) / hc2;
        case CouplingMode::PureVector:
            return 2.0 * A * (E + lb * m * m) / hc2;
        case CouplingMode::PureScalar:
            return 2.0 * A * m * (1.0 + lb * m) / hc2;
    }
    return 0.0;
}

double decay_tau_sq(const PhysicalConstants& constants, const ParticleSpec& particle,
                    const PotentialSpec& potential, double E) {
    require_energy_factor(potential, E);
    const double hc = constants.hbar_c();
    const double m = particle.m0c2();
    const double f = potential.energy_factor(E);
    return (m * m - E * E) / (hc * hc * f * f);
}

CaseParameters case_parameters(const PhysicalConstants& constants, const ParticleSpec& particle,
                               const PotentialSpec& potential, const QuantumNumbers& qn, double E,
                               Branch branch) {
    if (std::abs(E) > particle.m0c2()) {
        throw DomainError("bound states require |E| <= m0c2 (E = " + std::to_string(E) + " MeV)");
    }
    CaseParameters out{};
    out.tau_sq = decay_tau_sq(constants, particle, potential, E);
    out.beta_sq = coulomb_beta_sq(constants, particle, potential, E);
    out.K = centrifugal_K(constants, particle, potential, qn.l, E);
    out.eta = resolve_eta(out.K, branch);
    return out;
}

}  // namespace kgedp
