#pragma once

#include <vector>

#include "kgedp/model.hpp"
#include "kgedp/rootfind.hpp"

namespace kgedp {

/// Parameters of 1F1(a; c; x). c must not be zero or a negative integer.
struct KummerParams {
    KummerParams(double a, double c);

    double a;
    double c;
};

/// |a + k| below this (k = 0, 1, ...) truncates the series to the degree-k polynomial.
inline constexpr double kKummerIntegerSnap = 1e-8;
inline constexpr int kKummerTermCap = 10000;

/// First-kind confluent hypergeometric function by its power series,
///   sum_k (a)_k / (c)_k x^k / k!,
/// truncated exactly when a is (within kKummerIntegerSnap of) a nonpositive integer.
/// Throws EvaluationError if the series has not converged after kKummerTermCap terms.
double kummer_1f1(const KummerParams& params, double x);

/// An eigenstate together with what is needed to evaluate its radial function
///   u(r) = N1 exp(-tau f r) (f r)^(eta+1) 1F1(a; c; 2 tau f r),  f = 1 + delta*E.
/// The irregular solution is never used (N2 = 0).
struct WaveSolution {
    SpectrumEntry eigen;
    KummerParams params;
    double tau;            // fm^-1
    double eta;
    double energy_factor;  // 1 + delta*E
    double N1 = 1.0;
    double N2 = 0.0;

    double energy() const { return *eigen.energy; }
    /// Decay rate in r: tau * (1 + delta*E).
    double tau_eff() const { return tau * energy_factor; }
};

/// Builds the wave solution of a converged entry. Throws AbsentError if the entry has
/// no energy.
WaveSolution make_wave_solution(const PhysicalConstants& constants, const ParticleSpec& particle,
                                const PotentialSpec& potential, const SpectrumEntry& entry);

/// Same as above at an arbitrary energy (used for off-eigenvalue diagnostics).
WaveSolution make_wave_solution_at(const PhysicalConstants& constants, const ParticleSpec& particle,
                                   const PotentialSpec& potential, const SpectrumEntry& entry, double E);

/// Unnormalized u(r); u(0) = 0. Evaluated through log-magnitudes so large r underflows
/// to zero instead of producing inf * 0.
double wavefunction_u(const WaveSolution& sol, double r);

/// Default outer radius: (25 + 3 (n + eta + 1)) / tau_eff.
double default_r_max(const WaveSolution& sol);

struct BoundaryReport {
    double u_at_origin;
    double tail_ratio;  // |u(r_max)| / max |u|
    int node_count;     // sign changes on (0, r_max)
    double r_max;
    int grid;
};

/// Samples u on `grid` uniform points over [0, r_max].
BoundaryReport boundary_report(const WaveSolution& sol, double r_max, int grid = 2000);

/// Uniform radial grid over [0, r_max] with `points` nodes.
std::vector<double> radial_grid(double r_max, int points);

/// Scales `u` so that the trapezoid integral of u^2 over `r` is one. For plotting only.
std::vector<double> trapezoid_normalize(const std::vector<double>& r, const std::vector<double>& u);

}  // namespace kgedp
