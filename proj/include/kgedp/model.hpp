#pragma once

#include <string>
#include <string_view>

namespace kgedp {

/// hbar*c in MeV*fm.
inline constexpr double kDefaultHbarC = 197.3269804;

/// How the Coulomb-like term enters the Klein-Gordon equation.
///  EMES: V_v = V_s (equal magnitude, equal sign)
///  EMOS: V_v = -V_s (equal magnitude, opposite sign)
///  PureVector: V_s = 0
///  PureScalar: V_v = 0
enum class CouplingMode { EMES, EMOS, PureVector, PureScalar };

/// Sign in front of the square root in eta = -1/2 +/- sqrt(1/4 + K).
enum class Branch { Plus, Minus };

std::string_view to_string(CouplingMode mode);
std::string_view to_string(Branch branch);

/// Accepts the CLI spellings: emes, emos, pv, ps (case-insensitive).
CouplingMode parse_mode(std::string_view text);
/// Accepts plus/minus or +/-.
Branch parse_branch(std::string_view text);

inline int sign_of(Branch branch) { return branch == Branch::Plus ? 1 : -1; }

class PhysicalConstants {
public:
    explicit PhysicalConstants(double hbar_c = kDefaultHbarC);

    double hbar_c() const noexcept { return hbar_c_; }

private:
    double hbar_c_;
};

/// Rest energy m0c^2 (MeV) and reduced Compton wavelength lambda (fm).
class ParticleSpec {
public:
    ParticleSpec(double m0c2, double lambda);

    /// pi0 with m0c2 = 134.977 MeV and lambda = 1.462 fm.
    static ParticleSpec neutral_pion();

    /// lambda set to hbar*c / m0c2 exactly, so that m0c2 * lambda == hbar*c.
    static ParticleSpec with_compton_wavelength(double m0c2, const PhysicalConstants& constants);

    double m0c2() const noexcept { return m0c2_; }
    double lambda() const noexcept { return lambda_; }

private:
    double m0c2_;
    double lambda_;
};

/// Coulomb strength A (MeV*fm), energy tuning delta (1/MeV), mass coupling b
/// (1/(MeV*fm)) and the coupling mode. The product lambda*b (1/MeV) is what
/// enters the quantization conditions; it is derived from b on demand.
class PotentialSpec {
public:
    PotentialSpec(CouplingMode mode, double A, double delta, double b);

    /// Builds the spec from lambda*b directly (b = lambda_b / lambda).
    static PotentialSpec from_lambda_b(CouplingMode mode, double A, double delta, double lambda_b,
                                       const ParticleSpec& particle);

    CouplingMode mode() const noexcept { return mode_; }
    double A() const noexcept { return A_; }
    double delta() const noexcept { return delta_; }
    double b() const noexcept { return b_; }

    double lambda_b(const ParticleSpec& particle) const noexcept { return particle.lambda() * b_; }

    /// 1 + delta*E.
    double energy_factor(double E) const noexcept { return 1.0 + delta_ * E; }

    PotentialSpec with_mode(CouplingMode mode) const { return {mode, A_, delta_, b_}; }

private:
    CouplingMode mode_;
    double A_;
    double delta_;
    double b_;
};

struct QuantumNumbers {
    QuantumNumbers(int n, int l);

    int n;
    int l;
};

/// Parameters of the reduced radial equation
///   v'' + (-tau^2 + beta^2/z - K/z^2) v = 0,  z = (1 + delta*E) r,
/// with K = eta(eta + 1).
struct CaseParameters {
    double tau_sq;   // fm^-2
    double beta_sq;  // fm^-1
    double K;
    double eta;

    double tau() const;
};

/// m(r,E)c^2 = m0c^2 (1 - lambda*b*A*(1 + delta*E)/r). Can be negative at small r.
double mass_at(const ParticleSpec& particle, const PotentialSpec& potential, double r, double E);

/// V_v(r,E) = -A (1 + delta*E)/r.
double vector_potential(const PotentialSpec& potential, double r, double E);

/// eta = -1/2 + s*sqrt(1/4 + K). Throws BranchError when 1/4 + K < 0.
double resolve_eta(double K, Branch branch);

/// Mode-dependent K = eta(eta+1) at energy E. Throws DomainError if 1 + delta*E <= 0.
double centrifugal_K(const PhysicalConstants& constants, const ParticleSpec& particle,
                     const PotentialSpec& potential, int l, double E);

/// Mode-dependent beta^2 at energy E.
double coulomb_beta_sq(const PhysicalConstants& constants, const ParticleSpec& particle,
                       const PotentialSpec& potential, double E);

/// tau^2 = (m0^2c^4 - E^2) / (hbar^2c^2 (1 + delta*E)^2); identical for all modes.
double decay_tau_sq(const PhysicalConstants& constants, const ParticleSpec& particle,
                    const PotentialSpec& potential, double E);

/// Full parameter set at E. Requires |E| <= m0c2 and 1 + delta*E > 0.
CaseParameters case_parameters(const PhysicalConstants& constants, const ParticleSpec& particle,
                               const PotentialSpec& potential, const QuantumNumbers& qn, double E,
                               Branch branch = Branch::Plus);

}  // namespace kgedp
