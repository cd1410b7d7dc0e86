#pragma once

#include <functional>
#include <optional>
#include <type_traits>
#include <vector>

#include "kgedp/model.hpp"
#include "kgedp/quantization.hpp"

namespace kgedp {

struct SolverConfig {
    int grid_points = 4000;
    double tol_energy = 1e-9;    // MeV
    double tol_residual = 1e-8;  // MeV
    int max_iter = 200;
    double window_margin = 1e-6;  // MeV

    /// Throws std::invalid_argument on grid_points < 100, tol_energy <= 0,
    /// tol_residual <= 0, max_iter < 8 or negative margin.
    void validate() const;
};

/// A function that may be undefined at some points (returns empty there).
using PartialFunction = std::function<std::optional<double>(double)>;

struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Scan nodes over `window`, clustered towards both ends with a cosine map so that
/// levels accumulating at the thresholds are resolved. Includes both end points.
std::vector<double> scan_grid(const EnergyWindow& window, int points);

/// All adjacent grid pairs over which `f` changes sign. Pairs with an undefined end,
/// and pairs over which `pole` (when given) changes sign or is undefined, are dropped.
std::vector<Bracket> bracket_scan(const PartialFunction& f, const EnergyWindow& window,
                                  const SolverConfig& config, const PartialFunction& pole = {});

struct Refinement {
    double energy;
    double residual;
    int iterations;
};

/// Secant iteration safeguarded by bisection: whenever the Secant iterate leaves the
/// current bracket, or the bracket fails to halve over three steps, a bisection step is
/// taken instead. Stops when the last step is below tol_energy and |f| <= tol_residual.
/// Throws ConvergenceError (carrying the best iterate) after max_iter steps.
Refinement secant_refine(const PartialFunction& f, const Bracket& bracket, const SolverConfig& config);

/// Overload for everywhere-defined functions.
template <typename F>
    requires std::is_same_v<std::invoke_result_t<F&, double>, double>
Refinement secant_refine(F&& f, const Bracket& bracket, const SolverConfig& config) {
    return secant_refine(PartialFunction([&f](double x) -> std::optional<double> { return f(x); }), bracket, config);
}

enum class EigenLine { Lower, Upper };
enum class EntryStatus { Found, Absent, NotConverged };

std::string_view to_string(EigenLine line);
std::string_view to_string(EntryStatus status);

struct SpectrumEntry {
    int n = 0;
    int l = 0;
    EigenLine line = EigenLine::Lower;
    Branch branch = Branch::Plus;
    std::optional<double> energy;  // empty when absent
    double residual_at_root = 0.0;
    int iterations = 0;
    EntryStatus status = EntryStatus::Absent;

    bool present() const noexcept { return status == EntryStatus::Found && energy.has_value(); }
    bool operator==(const SpectrumEntry&) const = default;
};

/// Roots found in one (n, l) cell, plus refinements that failed to converge.
struct CellRoots {
    std::vector<Refinement> roots;  // sorted ascending, deduplicated, sign-valid
    std::vector<double> failures;   // best iterates of non-converged brackets
};

/// Scans the window of `spec`, refines each bracket and keeps roots with RHS >= 0.
/// Roots closer than 10*tol_energy are merged.
CellRoots find_roots(const ResidualSpec& spec, const SolverConfig& config);

/// Assigns roots of one cell to the lower/upper lines. With two or more roots the
/// smallest goes to the lower line and the largest to the upper line (any in between
/// by sign); a single root is placed by its sign (E < 0 lower). Missing lines become
/// Absent entries.
std::vector<SpectrumEntry> classify_cell(int n, int l, Branch branch, const CellRoots& roots);

struct SpectrumTable {
    std::vector<SpectrumEntry> entries;  // sorted by (n, l, line, energy)

    /// Entries for one cell and line (usually zero or one).
    std::vector<SpectrumEntry> find(int n, int l, EigenLine line) const;
    /// Energy on the given line, empty if absent.
    std::optional<double> energy(int n, int l, EigenLine line) const;

    bool operator==(const SpectrumTable&) const = default;
};

/// Every (n, l) with l <= min(n, l_max), n <= n_max. Non-converging cells are reported
/// per entry (status NotConverged) without aborting the table.
SpectrumTable solve_spectrum(const PhysicalConstants& constants, const ParticleSpec& particle,
                             const PotentialSpec& potential, int n_max, int l_max,
                             const SolverConfig& config = {}, Branch branch = Branch::Plus);

}  // namespace kgedp
