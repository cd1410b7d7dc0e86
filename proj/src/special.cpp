#include "kgedp/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgedp/errors.hpp"

namespace kgedp {

namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

KummerParams::KummerParams(double a_, double c_) : a(a_), c(c_) {
    if (!std::isfinite(a) || !std::isfinite(c)) throw DomainError("Kummer parameters must be finite");
    if (is_nonpositive_integer(c)) {
        throw DomainError("Kummer parameter c = " + std::to_string(c) + " is a pole of the series");
    }
}

double kummer_1f1(const KummerParams& params, double x) {
    if (!(x >= 0.0)) throw DomainError("kummer_1f1 requires x >= 0");
    if (x == 0.0) return 1.0;

    double a = params.a;
    const double c = params.c;

    int degree = -1;
    if (a <= kKummerIntegerSnap) {
        const double k = std::round(-a);
        if (k >= 0.0 && std::abs(a + k) <= kKummerIntegerSnap) {
            degree = static_cast<int>(k);
            a = -k;
        }
    }

    CompensatedSum sum;
    double term = 1.0;
    sum.add(term);
    if (degree >= 0) {
        for (int k = 0; k < degree; ++k) {
            term *= (a + k) / (c + k) * x / (k + 1);
            sum.add(term);
        }
        return sum.value();
    }

    for (int k = 0; k < kKummerTermCap; ++k) {
        const double ratio = (a + k) / (c + k) * x / (k + 1);
        term *= ratio;
        sum.add(term);
        if (std::abs(ratio) < 0.5 && std::abs(term) <= 1e-17 * std::abs(sum.value())) {
            return sum.value();
        }
        if (!std::isfinite(term)) break;
    }
    throw EvaluationError("1F1 series did not converge (a = " + std::to_string(params.a) +
                          ", c = " + std::to_string(c) + ", x = " + std::to_string(x) + ")");
}

WaveSolution make_wave_solution_at(const PhysicalConstants& constants, const ParticleSpec& particle,
                                   const PotentialSpec& potential, const SpectrumEntry& entry, double E) {
    const auto p = case_parameters(constants, particle, potential, QuantumNumbers(entry.n, entry.l), E, entry.branch);
    const double tau = p.tau();
    if (!(tau > 0.0)) throw DomainError("wave solution needs tau > 0 (E strictly inside the gap)");
    SpectrumEntry at = entry;
    at.energy = E;
    const double a = (2.0 * tau * (p.eta + 1.0) - p.beta_sq) / (2.0 * tau);
    return WaveSolution{at, KummerParams(a, 2.0 * (p.eta + 1.0)), tau, p.eta, potential.energy_factor(E)};
}

WaveSolution make_wave_solution(const PhysicalConstants& constants, const ParticleSpec& particle,
                                const PotentialSpec& potential, const SpectrumEntry& entry) {
    if (!entry.present()) {
        throw AbsentError("no eigenvalue for n = " + std::to_string(entry.n) + ", l = " + std::to_string(entry.l) +
                          " (" + std::string(to_string(entry.line)) + ")");
    }
    return make_wave_solution_at(constants, particle, potential, entry, *entry.energy);
}

double wavefunction_u(const WaveSolution& sol, double r) {
    if (r < 0.0) throw DomainError("wavefunction_u requires r >= 0");
    if (r == 0.0) return 0.0;
    const double z = sol.energy_factor * r;
    const double F = kummer_1f1(sol.params, 2.0 * sol.tau * z);
    if (F == 0.0 || sol.N1 == 0.0) return 0.0;
    const double log_mag = -sol.tau * z + (sol.eta + 1.0) * std::log(z) + std::log(std::abs(F));
    const double sign = (F < 0.0) != (sol.N1 < 0.0) ? -1.0 : 1.0;
    return sign * std::abs(sol.N1) * std::exp(log_mag);
}

double default_r_max(const WaveSolution& sol) {
    const double power = sol.eigen.n + sol.eta + 1.0;
    return (25.0 + 3.0 * power) / sol.tau_eff();
}

std::vector<double> radial_grid(double r_max, int points) {
    if (!(r_max > 0.0)) throw DomainError("r_max must be positive");
    if (points < 2) throw DomainError("radial grid needs at least two points");
    std::vector<double> r(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) r[i] = r_max * i / (points - 1);
    r.back() = r_max;
    return r;
}

BoundaryReport boundary_report(const WaveSolution& sol, double r_max, int grid) {
    const auto r = radial_grid(r_max, grid);
    double peak = 0.0;
    int nodes = 0;
    double previous = 0.0;
    std::vector<double> u(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        u[i] = wavefunction_u(sol, r[i]);
        peak = std::max(peak, std::abs(u[i]));
        if (i == 0 || u[i] == 0.0) continue;
        if (previous != 0.0 && (u[i] < 0.0) != (previous < 0.0)) ++nodes;
        previous = u[i];
    }
    const double tail = peak > 0.0 ? std::abs(u.back()) / peak : 0.0;
    return {u.front(), tail, nodes, r_max, grid};
}

std::vector<double> trapezoid_normalize(const std::vector<double>& r, const std::vector<double>& u) {
    if (r.size() != u.size()) throw DomainError("grid and values differ in length");
    double integral = 0.0;
    for (std::size_t i = 1; i < r.size(); ++i) {
        integral += 0.5 * (r[i] - r[i - 1]) * (u[i] * u[i] + u[i - 1] * u[i - 1]);
    }
    if (!(integral > 0.0)) return u;
    const double scale = 1.0 / std::sqrt(integral);
    std::vector<double> out(u.size());
    std::transform(u.begin(), u.end(), out.begin(), [scale](double v) { return v * scale; });
    return out;
}

}  // namespace kgedp
