#include "kgedp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "kgedp/aim.hpp"
#include "kgedp/config.hpp"
#include "kgedp/errors.hpp"
#include "kgedp/quantization.hpp"
#include "kgedp/report.hpp"
#include "kgedp/rootfind.hpp"
#include "kgedp/special.hpp"

namespace kgedp::cli {

namespace {

struct PhysicsOptions {
    std::string config_path;
    double hbar_c = kDefaultHbarC;
    double m0c2 = 0.0;
    double lambda = 0.0;
    double A = 0.0;
    std::string mode = "emes";
    double delta = 0.0;
    double lambda_b = 0.0;
    std::string branch = "plus";
    bool stamp = false;

    CLI::Option* hbar_c_opt = nullptr;
    CLI::Option* m0c2_opt = nullptr;
    CLI::Option* lambda_opt = nullptr;
    CLI::Option* A_opt = nullptr;
};

void add_physics(CLI::App* app, PhysicsOptions& o) {
    app->add_option("--config", o.config_path, "key = value file with constants, particle and solver settings")
        ->check(CLI::ExistingFile);
    o.hbar_c_opt = app->add_option("--hbar-c", o.hbar_c, "hbar*c in MeV*fm");
    o.m0c2_opt = app->add_option("--m0c2", o.m0c2, "rest energy in MeV");
    o.lambda_opt = app->add_option("--lambda", o.lambda, "reduced Compton wavelength in fm");
    o.A_opt = app->add_option("--A", o.A, "Coulomb strength A in MeV*fm");
    app->add_option("--mode", o.mode, "coupling mode")
        ->check(CLI::IsMember({"emes", "emos", "pv", "ps"}, CLI::ignore_case));
    app->add_option("--delta", o.delta, "energy tuning delta in 1/MeV");
    app->add_option("--lambda-b", o.lambda_b, "mass coupling lambda*b in 1/MeV");
    app->add_option("--branch", o.branch, "eta branch")->check(CLI::IsMember({"plus", "minus"}, CLI::ignore_case));
    app->add_flag("--stamp", o.stamp, "record a wall-clock timestamp in the manifest");
}

RunConfig resolve_config(const PhysicsOptions& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(std::filesystem::path(o.config_path));
    if (*o.hbar_c_opt) cfg.constants = PhysicalConstants(o.hbar_c);
    if (*o.m0c2_opt) cfg.particle = ParticleSpec(o.m0c2, cfg.particle.lambda());
    if (*o.lambda_opt) cfg.particle = ParticleSpec(cfg.particle.m0c2(), o.lambda);
    if (*o.A_opt) {
        if (!(o.A > 0.0)) throw DomainError("--A must be positive");
        cfg.A = o.A;
    }
    return cfg;
}

RunManifest make_manifest(const std::string& command, const PhysicsOptions& o, const RunConfig& cfg) {
    RunManifest m;
    m.command = command;
    m.mode = std::string(to_string(parse_mode(o.mode)));
    m.branch = std::string(to_string(parse_branch(o.branch)));
    m.config = cfg;
    if (o.stamp) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        m.timestamp = buf;
    }
    return m;
}

bool any_not_converged(const std::vector<ParameterBlock>& blocks) {
    for (const auto& b : blocks) {
        for (const auto& e : b.table.entries) {
            if (e.status == EntryStatus::NotConverged) return true;
        }
    }
    return false;
}

struct SpectrumOutput {
    std::string format = "csv";
    std::string layout = "auto";
    int precision = 5;
    std::string output_path;
};

void add_output(CLI::App* app, SpectrumOutput& o) {
    app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--layout", o.layout, "CSV layout: long rows or one row per line of a block")
        ->check(CLI::IsMember({"auto", "long", "table"}));
    app->add_option("--precision", o.precision, "decimals for energies in CSV")->check(CLI::Range(0, 17));
    app->add_option("--output", o.output_path, "write to this file instead of stdout");
}

void emit_spectrum(std::ostream& out, const SpectrumOutput& o, bool table_default,
                   const std::vector<ParameterBlock>& blocks, const RunManifest& manifest, int n_max, int l_max) {
    if (o.format == "json") {
        out << spectrum_to_json(blocks, manifest).dump(2) << '\n';
        return;
    }
    out << "# manifest: " << manifest.to_json().dump() << '\n';
    const bool table = o.layout == "table" || (o.layout == "auto" && table_default);
    if (table) {
        write_spectrum_csv_table(out, blocks, n_max, l_max, o.precision);
    } else {
        write_spectrum_csv_long(out, blocks, o.precision);
    }
}

// Writes through `target` unless a file path was requested.
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
    if (path.empty()) {
        fn(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::invalid_argument("cannot write " + path);
    fn(file);
}

// ---------------------------------------------------------------- solve

struct SolveOptions {
    PhysicsOptions physics;
    SpectrumOutput output;
    int n_max = 3;
    int l_max = -1;
    bool paper_grid = false;
    std::string check_path;
    double tolerance = 0.02;
};

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = resolve_config(o.physics);
    const CouplingMode mode = parse_mode(o.physics.mode);
    const Branch branch = parse_branch(o.physics.branch);
    const int l_max = o.l_max < 0 ? o.n_max : o.l_max;

    std::vector<double> deltas{o.physics.delta};
    std::vector<double> lambda_bs{o.physics.lambda_b};
    if (o.paper_grid) deltas = lambda_bs = reference_tuning_values();

    const auto blocks = solve_grid(cfg, mode, deltas, lambda_bs, o.n_max, l_max, branch);
    auto manifest = make_manifest("solve", o.physics, cfg);
    manifest.extra["n_max"] = o.n_max;
    manifest.extra["l_max"] = l_max;
    with_output(o.output.output_path, out, [&](std::ostream& sink) {
        emit_spectrum(sink, o.output, o.paper_grid, blocks, manifest, o.n_max, l_max);
    });

    int code = kSuccess;
    if (!o.check_path.empty()) {
        const auto comparisons = compare_with_reference(load_reference_table(o.check_path), blocks, o.tolerance);
        std::vector<CellComparison> bad;
        std::copy_if(comparisons.begin(), comparisons.end(), std::back_inserter(bad),
                     [](const CellComparison& c) { return !c.ok(); });
        double worst = 0.0;
        for (const auto& c : comparisons) worst = std::max(worst, c.deviation);
        err << "# check against " << o.check_path << ": " << comparisons.size() - bad.size() << "/"
            << comparisons.size() << " cells agree (tolerance " << o.tolerance << " MeV, max deviation " << worst
            << " MeV)\n";
        if (!bad.empty()) {
            write_comparison(err, bad);
            code = kMismatch;
        }
    }
    if (any_not_converged(blocks)) {
        err << "warning: some roots did not converge\n";
        if (code == kSuccess) code = kConvergence;
    }
    return code;
}

// ---------------------------------------------------------------- wavefunction

struct WaveOptions {
    PhysicsOptions physics;
    int n = 0;
    int l = 0;
    std::string line = "both";
    double r_max = 0.0;
    int points = 2000;
    bool normalize = false;
    std::string output_path;
};

std::string format_value(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

double potential_or_limit(const PotentialSpec& pot, double r, double E) {
    if (r > 0.0) return vector_potential(pot, r, E);
    return -std::numeric_limits<double>::infinity();
}

double mass_or_limit(const ParticleSpec& particle, const PotentialSpec& pot, double r, double E) {
    if (r > 0.0) return mass_at(particle, pot, r, E);
    const double coupling = pot.lambda_b(particle) * pot.A() * pot.energy_factor(E);
    if (coupling == 0.0) return particle.m0c2();
    return coupling > 0.0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
}

int cmd_wavefunction(const WaveOptions& o, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = resolve_config(o.physics);
    const CouplingMode mode = parse_mode(o.physics.mode);
    const Branch branch = parse_branch(o.physics.branch);
    const auto pot = PotentialSpec::from_lambda_b(mode, cfg.A, o.physics.delta, o.physics.lambda_b, cfg.particle);

    const auto spec = ResidualSpec::make(cfg.constants, cfg.particle, pot, QuantumNumbers(o.n, o.l), branch,
                                         cfg.solver.window_margin);
    const auto cell = classify_cell(o.n, o.l, branch, find_roots(spec, cfg.solver));

    std::vector<WaveSolution> states;
    std::vector<std::string> tags;
    for (const auto& e : cell) {
        const std::string tag(to_string(e.line));
        if (o.line != "both" && o.line != tag) continue;
        if (!e.present()) continue;
        states.push_back(make_wave_solution(cfg.constants, cfg.particle, pot, e));
        tags.push_back(tag);
    }
    if (states.empty()) {
        throw AbsentError("Absent: no eigenvalue for mode " + o.physics.mode + ", n = " + std::to_string(o.n) +
                          ", l = " + std::to_string(o.l) + ", line " + o.line);
    }

    double r_max = o.r_max;
    if (!(r_max > 0.0)) {
        for (const auto& s : states) r_max = std::max(r_max, default_r_max(s));
    }
    const auto r = radial_grid(r_max, o.points);

    std::vector<std::vector<double>> u(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        u[k].resize(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) u[k][i] = wavefunction_u(states[k], r[i]);
        if (o.normalize) u[k] = trapezoid_normalize(r, u[k]);
    }

    auto manifest = make_manifest("wavefunction", o.physics, cfg);
    manifest.extra["delta"] = o.physics.delta;
    manifest.extra["lambda_b"] = o.physics.lambda_b;
    manifest.extra["n"] = o.n;
    manifest.extra["l"] = o.l;
    manifest.extra["r_max"] = r_max;
    manifest.extra["points"] = o.points;
    manifest.extra["normalized"] = o.normalize;

    with_output(o.output_path, out, [&](std::ostream& sink) {
        sink << "# manifest: " << manifest.to_json().dump() << '\n';
        sink << 'r';
        const bool single = states.size() == 1;
        for (const auto& tag : tags) {
            if (single) {
                sink << ",u,V,m";
            } else {
                sink << ",u_" << tag << ",V_" << tag << ",m_" << tag;
            }
        }
        sink << '\n';
        for (std::size_t i = 0; i < r.size(); ++i) {
            sink << format_value(r[i]);
            for (std::size_t k = 0; k < states.size(); ++k) {
                const double E = states[k].energy();
                sink << ',' << format_value(u[k][i]) << ',' << format_value(potential_or_limit(pot, r[i], E)) << ','
                     << format_value(mass_or_limit(cfg.particle, pot, r[i], E));
            }
            sink << '\n';
        }
        for (std::size_t k = 0; k < states.size(); ++k) {
            const auto report = boundary_report(states[k], r_max, o.points);
            char buf[320];
            std::snprintf(buf, sizeof buf,
                          "# boundary %s: E=%.9f u0=%g tail_ratio=%.3e nodes=%d kummer_a=%.9f r_max=%.6g grid=%d\n",
                          tags[k].c_str(), states[k].energy(), report.u_at_origin, report.tail_ratio,
                          report.node_count, states[k].params.a, report.r_max, report.grid);
            sink << buf;
        }
    });
    (void)err;
    return kSuccess;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
    PhysicsOptions physics;
    SpectrumOutput output;
    std::string axis = "delta";
    double from = -0.003;
    double to = 0.003;
    double step = 0.0005;
    int n_max = 3;
    int l_max = -1;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    if (!(o.step > 0.0)) {
        err << "error: --step must be positive\n";
        return kUsage;
    }
    if (o.to < o.from) {
        err << "error: --to must not be below --from\n";
        return kUsage;
    }
    const RunConfig cfg = resolve_config(o.physics);
    const CouplingMode mode = parse_mode(o.physics.mode);
    const Branch branch = parse_branch(o.physics.branch);
    const int l_max = o.l_max < 0 ? o.n_max : o.l_max;

    const auto count = static_cast<long>(std::floor((o.to - o.from) / o.step + 1e-9)) + 1;
    std::vector<double> values;
    for (long i = 0; i < count; ++i) {
        const double v = o.from + static_cast<double>(i) * o.step;
        // Land exactly on --to when the range is a whole number of steps.
        values.push_back(std::abs(v - o.to) < 1e-9 * o.step ? o.to : v);
    }

    std::vector<double> deltas{o.physics.delta};
    std::vector<double> lambda_bs{o.physics.lambda_b};
    if (o.axis == "delta") {
        deltas = values;
    } else {
        lambda_bs = values;
    }

    const auto blocks = solve_grid(cfg, mode, deltas, lambda_bs, o.n_max, l_max, branch);
    auto manifest = make_manifest("sweep", o.physics, cfg);
    manifest.extra["axis"] = o.axis;
    manifest.extra["from"] = o.from;
    manifest.extra["to"] = o.to;
    manifest.extra["step"] = o.step;
    manifest.extra["n_max"] = o.n_max;
    manifest.extra["l_max"] = l_max;
    with_output(o.output.output_path, out, [&](std::ostream& sink) {
        emit_spectrum(sink, o.output, false, blocks, manifest, o.n_max, l_max);
    });
    if (any_not_converged(blocks)) {
        err << "warning: some roots did not converge\n";
        return kConvergence;
    }
    return kSuccess;
}

// ---------------------------------------------------------------- aim-verify

struct AimOptions {
    int n_max = 4;
    int cap = 4;
    int seeds = 25;
    unsigned long long rng_seed = 20240601ULL;
    bool perturb = false;
    double perturbation = 0.01;
};

int cmd_aim_verify(const AimOptions& o, std::ostream& out, std::ostream& err) {
    if (o.n_max < 0 || o.n_max > o.cap) {
        err << "error: --nmax must lie in [0, " << o.cap << "] (raise --cap to go further)\n";
        return kUsage;
    }
    std::mt19937_64 rng(o.rng_seed);
    std::uniform_int_distribution<int> denominators(1, 12);
    std::uniform_int_distribution<int> eta_numerators(-5, 72);
    std::uniform_int_distribution<int> beta_numerators(1, 240);

    std::vector<std::pair<aim::Rational, aim::Rational>> seeds;
    while (static_cast<int>(seeds.size()) < o.seeds) {
        const int q = denominators(rng);
        aim::Rational eta(eta_numerators(rng), q);
        eta.canonicalize();
        if (!(eta > aim::Rational(-1, 2))) continue;
        aim::Rational beta_sq(beta_numerators(rng), denominators(rng));
        beta_sq.canonicalize();
        seeds.emplace_back(eta, beta_sq);
    }

    // Perturbation as an exact rational: tau -> tau * (1 + p).
    aim::Rational factor(1);
    if (o.perturb) {
        factor = aim::Rational(static_cast<long>(std::llround(o.perturbation * 1e6)), 1000000) + 1;
        factor.canonicalize();
    }

    out << "# aim-verify seeds=" << o.seeds << " rng_seed=" << o.rng_seed << " perturb="
        << (o.perturb ? factor.get_str() : std::string("none")) << '\n';
    bool all_pass = true;
    for (int n = 0; n <= o.n_max; ++n) {
        int zero = 0;
        for (const auto& [eta, beta_sq] : seeds) {
            aim::Rational tau = aim::quantized_tau(beta_sq, eta, n) * factor;
            tau.canonicalize();
            if (aim::terminates(tau, eta, beta_sq, n)) ++zero;
        }
        const bool pass = zero == static_cast<int>(seeds.size());
        all_pass = all_pass && pass;
        out << "n=" << n << " tau=beta^2/(2(eta+" << n + 1 << "))" << (o.perturb ? "*(1+p)" : "")
            << " identically_zero=" << zero << '/' << seeds.size() << ' ' << (pass ? "PASS" : "FAIL") << '\n';
    }
    return all_pass ? kSuccess : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound-state spectra of the Klein-Gordon equation with an energy-dependent Coulomb-like "
                 "potential and a position- and energy-dependent mass"};
    app.name("kgedp");
    app.require_subcommand(1);

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "energy spectrum for one setting or the reference grid");
    add_physics(solve_cmd, solve.physics);
    add_output(solve_cmd, solve.output);
    solve_cmd->add_option("--nmax", solve.n_max, "largest n")->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--lmax", solve.l_max, "largest l (default: nmax)");
    solve_cmd->add_flag("--paper-grid", solve.paper_grid, "solve every delta, lambda*b in {-0.003, 0, 0.003}");
    solve_cmd->add_option("--check", solve.check_path, "compare with a reference table (wide CSV)")
        ->check(CLI::ExistingFile);
    solve_cmd->add_option("--tolerance", solve.tolerance, "agreement tolerance for --check in MeV");

    WaveOptions wave;
    auto* wave_cmd = app.add_subcommand("wavefunction", "unnormalized radial wave function, potential and mass");
    add_physics(wave_cmd, wave.physics);
    wave_cmd->add_option("--n", wave.n, "radial quantum number")->check(CLI::NonNegativeNumber);
    wave_cmd->add_option("--l", wave.l, "orbital quantum number")->check(CLI::NonNegativeNumber);
    wave_cmd->add_option("--line", wave.line, "which eigenvalue")->check(CLI::IsMember({"lower", "upper", "both"}));
    wave_cmd->add_option("--r-max", wave.r_max, "outer radius in fm (default: (25 + 3(n+eta+1))/tau_eff)");
    wave_cmd->add_option("--points", wave.points, "radial grid points")->check(CLI::Range(2, 10000000));
    wave_cmd->add_flag("--normalize", wave.normalize, "scale to unit trapezoid L2 norm");
    wave_cmd->add_option("--output", wave.output_path, "write to this file instead of stdout");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "eigenvalue trajectories over delta or lambda*b");
    add_physics(sweep_cmd, sweep.physics);
    add_output(sweep_cmd, sweep.output);
    sweep_cmd->add_option("--axis", sweep.axis, "swept parameter")->check(CLI::IsMember({"delta", "lambda-b"}));
    sweep_cmd->add_option("--from", sweep.from, "first value (1/MeV)");
    sweep_cmd->add_option("--to", sweep.to, "last value (1/MeV)");
    sweep_cmd->add_option("--step", sweep.step, "increment (1/MeV), must be positive");
    sweep_cmd->add_option("--nmax", sweep.n_max, "largest n")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--lmax", sweep.l_max, "largest l (default: nmax)");

    AimOptions aim_opts;
    auto* aim_cmd = app.add_subcommand("aim-verify", "exact check of the asymptotic-iteration termination");
    aim_cmd->add_option("--nmax", aim_opts.n_max, "largest quantum number to certify");
    aim_cmd->add_option("--cap", aim_opts.cap, "upper limit accepted for --nmax");
    aim_cmd->add_option("--seeds", aim_opts.seeds, "random rational (eta, beta^2) pairs")->check(CLI::PositiveNumber);
    aim_cmd->add_option("--rng-seed", aim_opts.rng_seed, "random generator seed");
    aim_cmd->add_flag("--perturb", aim_opts.perturb, "scale tau by (1 + p); every check must then fail");
    aim_cmd->add_option("--perturbation", aim_opts.perturbation, "relative perturbation p")
        ->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve, out, err);
        if (*wave_cmd) return cmd_wavefunction(wave, out, err);
        if (*sweep_cmd) return cmd_sweep(sweep, out, err);
        if (*aim_cmd) return cmd_aim_verify(aim_opts, out, err);
    } catch (const AbsentError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (best iterate " << e.best_iterate() << ")\n";
        return kConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace kgedp::cli
