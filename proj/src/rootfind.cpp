#include "kgedp/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kgedp/errors.hpp"

namespace kgedp {

namespace {

bool opposite_signs(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

}  // namespace

void SolverConfig::validate() const {
    if (grid_points < 100) throw std::invalid_argument("grid_points must be >= 100");
    if (!(tol_energy > 0.0)) throw std::invalid_argument("tol_energy must be positive");
    if (!(tol_residual > 0.0)) throw std::invalid_argument("tol_residual must be positive");
    if (max_iter < 8) throw std::invalid_argument("max_iter must be >= 8");
    if (!(window_margin >= 0.0)) throw std::invalid_argument("window_margin must be nonnegative");
}

std::vector<double> scan_grid(const EnergyWindow& window, int points) {
    if (points < 2) throw std::invalid_argument("scan_grid needs at least two points");
    const double mid = 0.5 * (window.lo + window.hi);
    const double half = 0.5 * (window.hi - window.lo);
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double theta = std::numbers::pi * i / (points - 1);
        grid[i] = mid - half * std::cos(theta);
    }
    grid.front() = window.lo;
    grid.back() = window.hi;
    return grid;
}

std::vector<Bracket> bracket_scan(const PartialFunction& f, const EnergyWindow& window,
                                  const SolverConfig& config, const PartialFunction& pole) {
    config.validate();
    const auto grid = scan_grid(window, config.grid_points);

    std::vector<std::optional<double>> values(grid.size());
    std::vector<std::optional<double>> poles(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = f(grid[i]);
        if (pole) poles[i] = pole(grid[i]);
    }

    std::vector<Bracket> out;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const auto& fa = values[i];
        const auto& fb = values[i + 1];
        if (!fa || !fb) continue;
        // An exact zero on a node is reported once, by the pair that ends on it.
        const bool change = opposite_signs(*fa, *fb) || (*fb == 0.0 && *fa != 0.0);
        if (!change) continue;
        if (pole) {
            if (!poles[i] || !poles[i + 1]) continue;
            if (opposite_signs(*poles[i], *poles[i + 1])) continue;
        }
        out.push_back({grid[i], grid[i + 1], *fa, *fb});
    }
    return out;
}

Refinement secant_refine(const PartialFunction& f, const Bracket& bracket, const SolverConfig& config) {
    double a = bracket.lo;
    double b = bracket.hi;
    double fa = bracket.f_lo;
    double fb = bracket.f_hi;

    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};
    if (!opposite_signs(fa, fb)) {
        throw std::invalid_argument("secant_refine needs a sign-changing bracket");
    }

    double best = std::abs(fa) < std::abs(fb) ? a : b;
    double best_f = std::min(std::abs(fa), std::abs(fb));

    // The two most recent iterates drive the Secant step.
    double x0 = a, f0 = fa;
    double x1 = b, f1 = fb;
    double width_before = b - a;
    int stalled = 0;

    for (int iter = 1; iter <= config.max_iter; ++iter) {
        double x = std::numeric_limits<double>::quiet_NaN();
        if (f1 != f0) x = x1 - f1 * (x1 - x0) / (f1 - f0);

        const bool inside = std::isfinite(x) && x > a && x < b;
        if (!inside || stalled >= 3) {
            x = 0.5 * (a + b);
            stalled = 0;
        }

        auto fx_opt = f(x);
        if (!fx_opt && inside) {
            x = 0.5 * (a + b);
            fx_opt = f(x);
        }
        if (!fx_opt) {
            throw ConvergenceError("residual undefined inside bracket at E = " + std::to_string(x), best, iter);
        }
        const double fx = *fx_opt;

        if (std::abs(fx) < best_f) {
            best = x;
            best_f = std::abs(fx);
        }
        if (fx == 0.0) return {x, 0.0, iter};

        const double step = std::abs(x - x1);
        if (opposite_signs(fa, fx)) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        x0 = x1;
        f0 = f1;
        x1 = x;
        f1 = fx;

        if (std::abs(fx) <= config.tol_residual && (step <= config.tol_energy || b - a <= config.tol_energy)) {
            return {x, fx, iter};
        }

        // Bracket collapsed to rounding level: nothing more can be gained.
        if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b))) {
            if (best_f <= config.tol_residual) return {best, *f(best), iter};
            throw ConvergenceError("bracket collapsed with |residual| = " + std::to_string(best_f), best, iter);
        }

        const double width = b - a;
        stalled = width > 0.5 * width_before ? stalled + 1 : 0;
        if (stalled == 0) width_before = width;
    }
    throw ConvergenceError("secant_refine exceeded max_iter", best, config.max_iter);
}

std::string_view to_string(EigenLine line) { return line == EigenLine::Lower ? "lower" : "upper"; }

std::string_view to_string(EntryStatus status) {
    switch (status) {
        case EntryStatus::Found: return "found";
        case EntryStatus::Absent: return "absent";
        case EntryStatus::NotConverged: return "not_converged";
    }
    return "unknown";
}

CellRoots find_roots(const ResidualSpec& spec, const SolverConfig& config) {
    const PartialFunction f = [&spec](double E) -> std::optional<double> {
        const auto parts = try_residual_parts(spec, E);
        if (!parts) return std::nullopt;
        return parts->value();
    };
    const PartialFunction pole = [&spec](double E) { return quantization_denominator(spec, E); };

    CellRoots out;
    for (const auto& bracket : bracket_scan(f, spec.window, config, pole)) {
        try {
            const auto root = secant_refine(f, bracket, config);
            const auto parts = try_residual_parts(spec, root.energy);
            if (!parts || parts->rhs < 0.0) continue;
            out.roots.push_back(root);
        } catch (const ConvergenceError& err) {
            out.failures.push_back(err.best_iterate());
        }
    }

    std::sort(out.roots.begin(), out.roots.end(),
              [](const Refinement& x, const Refinement& y) { return x.energy < y.energy; });
    std::vector<Refinement> merged;
    for (const auto& root : out.roots) {
        if (!merged.empty() && root.energy - merged.back().energy < 10.0 * config.tol_energy) {
            if (std::abs(root.residual) < std::abs(merged.back().residual)) merged.back() = root;
            continue;
        }
        merged.push_back(root);
    }
    out.roots = std::move(merged);
    return out;
}

std::vector<SpectrumEntry> classify_cell(int n, int l, Branch branch, const CellRoots& roots) {
    std::vector<SpectrumEntry> out;
    auto make = [&](EigenLine line, std::optional<double> E, double res, int iters, EntryStatus status) {
        SpectrumEntry e;
        e.n = n;
        e.l = l;
        e.line = line;
        e.branch = branch;
        e.energy = E;
        e.residual_at_root = res;
        e.iterations = iters;
        e.status = status;
        return e;
    };
    auto by_sign = [](double E) { return E < 0.0 ? EigenLine::Lower : EigenLine::Upper; };

    const auto& rs = roots.roots;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        EigenLine line = by_sign(rs[i].energy);
        if (rs.size() >= 2 && i == 0) line = EigenLine::Lower;
        if (rs.size() >= 2 && i + 1 == rs.size()) line = EigenLine::Upper;
        out.push_back(make(line, rs[i].energy, rs[i].residual, rs[i].iterations, EntryStatus::Found));
    }
    for (double best : roots.failures) {
        out.push_back(make(by_sign(best), best, std::numeric_limits<double>::quiet_NaN(), 0,
                           EntryStatus::NotConverged));
    }
    for (EigenLine line : {EigenLine::Lower, EigenLine::Upper}) {
        const bool filled = std::any_of(out.begin(), out.end(), [&](const SpectrumEntry& e) { return e.line == line; });
        if (!filled) out.push_back(make(line, std::nullopt, 0.0, 0, EntryStatus::Absent));
    }
    std::sort(out.begin(), out.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
        if (x.line != y.line) return x.line < y.line;
        return x.energy.value_or(0.0) < y.energy.value_or(0.0);
    });
    return out;
}

std::vector<SpectrumEntry> SpectrumTable::find(int n, int l, EigenLine line) const {
    std::vector<SpectrumEntry> out;
    for (const auto& e : entries) {
        if (e.n == n && e.l == l && e.line == line) out.push_back(e);
    }
    return out;
}

std::optional<double> SpectrumTable::energy(int n, int l, EigenLine line) const {
    for (const auto& e : entries) {
        if (e.n == n && e.l == l && e.line == line && e.present()) return e.energy;
    }
    return std::nullopt;
}

SpectrumTable solve_spectrum(const PhysicalConstants& constants, const ParticleSpec& particle,
                             const PotentialSpec& potential, int n_max, int l_max, const SolverConfig& config,
                             Branch branch) {
    if (n_max < 0 || l_max < 0) throw std::invalid_argument("n_max and l_max must be nonnegative");
    config.validate();

    SpectrumTable table;
    for (int n = 0; n <= n_max; ++n) {
        for (int l = 0; l <= std::min(n, l_max); ++l) {
            const auto spec =
                ResidualSpec::make(constants, particle, potential, QuantumNumbers(n, l), branch, config.window_margin);
            const auto cell = classify_cell(n, l, branch, find_roots(spec, config));
            table.entries.insert(table.entries.end(), cell.begin(), cell.end());
        }
    }
    return table;
}

}  // namespace kgedp
