#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kgedp/aim.hpp"
#include "kgedp/cli.hpp"
#include "kgedp/errors.hpp"
#include "kgedp/limits.hpp"
#include "kgedp/quantization.hpp"
#include "kgedp/rootfind.hpp"
#include "kgedp/special.hpp"

namespace py = pybind11;
using namespace kgedp;

namespace {

EigenLine parse_line(const std::string& text) {
    if (text == "lower") return EigenLine::Lower;
    if (text == "upper") return EigenLine::Upper;
    throw py::value_error("line must be 'lower' or 'upper'");
}

const SpectrumEntry& pick(const SpectrumTable& table, int n, int l, EigenLine line) {
    for (const auto& e : table.entries) {
        if (e.n == n && e.l == l && e.line == line && e.present()) return e;
    }
    throw AbsentError("no eigenvalue for n = " + std::to_string(n) + ", l = " + std::to_string(l) + " (" +
                      std::string(to_string(line)) + ")");
}

// Rationals cross the boundary as strings such as "3/7" (str(fractions.Fraction) works).
aim::Rational rational(const std::string& text) {
    aim::Rational q(text);
    q.canonicalize();
    return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Klein-Gordon bound states with an energy-dependent Coulomb-like potential";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<BranchError>(m, "BranchError", PyExc_ValueError);
    py::register_exception<PoleError>(m, "PoleError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_RuntimeError);
    py::register_exception<AbsentError>(m, "AbsentError", PyExc_LookupError);

    py::enum_<CouplingMode>(m, "CouplingMode")
        .value("EMES", CouplingMode::EMES)
        .value("EMOS", CouplingMode::EMOS)
        .value("PV", CouplingMode::PureVector)
        .value("PS", CouplingMode::PureScalar);
    py::enum_<Branch>(m, "Branch").value("PLUS", Branch::Plus).value("MINUS", Branch::Minus);
    py::enum_<EigenLine>(m, "EigenLine").value("LOWER", EigenLine::Lower).value("UPPER", EigenLine::Upper);
    py::enum_<EntryStatus>(m, "EntryStatus")
        .value("FOUND", EntryStatus::Found)
        .value("ABSENT", EntryStatus::Absent)
        .value("NOT_CONVERGED", EntryStatus::NotConverged);
    m.def("parse_mode", [](const std::string& s) { return parse_mode(s); });

    m.attr("DEFAULT_HBAR_C") = kDefaultHbarC;

    py::class_<PhysicalConstants>(m, "PhysicalConstants")
        .def(py::init<double>(), py::arg("hbar_c") = kDefaultHbarC)
        .def_property_readonly("hbar_c", &PhysicalConstants::hbar_c);

    py::class_<ParticleSpec>(m, "ParticleSpec")
        .def(py::init<double, double>(), py::arg("m0c2"), py::arg("lambda_"))
        .def_static("neutral_pion", &ParticleSpec::neutral_pion)
        .def_property_readonly("m0c2", &ParticleSpec::m0c2)
        .def_property_readonly("lambda_", &ParticleSpec::lambda);

    py::class_<PotentialSpec>(m, "PotentialSpec")
        .def(py::init<CouplingMode, double, double, double>(), py::arg("mode"), py::arg("A"), py::arg("delta"),
             py::arg("b"))
        .def_static("from_lambda_b", &PotentialSpec::from_lambda_b, py::arg("mode"), py::arg("A"), py::arg("delta"),
                    py::arg("lambda_b"), py::arg("particle") = ParticleSpec::neutral_pion())
        .def_property_readonly("mode", &PotentialSpec::mode)
        .def_property_readonly("A", &PotentialSpec::A)
        .def_property_readonly("delta", &PotentialSpec::delta)
        .def_property_readonly("b", &PotentialSpec::b)
        .def("lambda_b", &PotentialSpec::lambda_b);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("grid_points", &SolverConfig::grid_points)
        .def_readwrite("tol_energy", &SolverConfig::tol_energy)
        .def_readwrite("tol_residual", &SolverConfig::tol_residual)
        .def_readwrite("max_iter", &SolverConfig::max_iter)
        .def_readwrite("window_margin", &SolverConfig::window_margin);

    py::class_<SpectrumEntry>(m, "SpectrumEntry")
        .def_readonly("n", &SpectrumEntry::n)
        .def_readonly("l", &SpectrumEntry::l)
        .def_readonly("line", &SpectrumEntry::line)
        .def_readonly("branch", &SpectrumEntry::branch)
        .def_readonly("energy", &SpectrumEntry::energy)
        .def_readonly("residual_at_root", &SpectrumEntry::residual_at_root)
        .def_readonly("iterations", &SpectrumEntry::iterations)
        .def_readonly("status", &SpectrumEntry::status)
        .def_property_readonly("present", &SpectrumEntry::present);

    py::class_<SpectrumTable>(m, "SpectrumTable")
        .def_readonly("entries", &SpectrumTable::entries)
        .def("energy", [](const SpectrumTable& t, int n, int l, const std::string& line) {
            return t.energy(n, l, parse_line(line));
        });

    m.def("solve_spectrum", &solve_spectrum, py::arg("constants"), py::arg("particle"), py::arg("potential"),
          py::arg("n_max") = 3, py::arg("l_max") = 3, py::arg("config") = SolverConfig{},
          py::arg("branch") = Branch::Plus, "Every (n, l) with l <= min(n, l_max), n <= n_max.");

    m.def(
        "residual",
        [](const PhysicalConstants& c, const ParticleSpec& p, const PotentialSpec& pot, int n, int l, double E,
           Branch branch) {
            return residual(ResidualSpec::make(c, p, pot, QuantumNumbers(n, l), branch), E);
        },
        py::arg("constants"), py::arg("particle"), py::arg("potential"), py::arg("n"), py::arg("l"), py::arg("E"),
        py::arg("branch") = Branch::Plus, "LHS - RHS of the quantization condition in MeV.");

    m.def(
        "kummer_1f1", [](double a, double c, double x) { return kummer_1f1(KummerParams(a, c), x); }, py::arg("a"),
        py::arg("c"), py::arg("x"));

    py::class_<BoundaryReport>(m, "BoundaryReport")
        .def_readonly("u_at_origin", &BoundaryReport::u_at_origin)
        .def_readonly("tail_ratio", &BoundaryReport::tail_ratio)
        .def_readonly("node_count", &BoundaryReport::node_count)
        .def_readonly("r_max", &BoundaryReport::r_max)
        .def_readonly("grid", &BoundaryReport::grid);

    py::class_<WaveSolution>(m, "WaveSolution")
        .def_property_readonly("energy", &WaveSolution::energy)
        .def_property_readonly("a", [](const WaveSolution& s) { return s.params.a; })
        .def_property_readonly("c", [](const WaveSolution& s) { return s.params.c; })
        .def_readonly("tau", &WaveSolution::tau)
        .def_readonly("eta", &WaveSolution::eta)
        .def_property_readonly("tau_eff", &WaveSolution::tau_eff)
        .def_property_readonly("default_r_max", [](const WaveSolution& s) { return default_r_max(s); })
        .def("u", [](const WaveSolution& s, double r) { return wavefunction_u(s, r); }, py::arg("r"))
        .def(
            "boundary_report",
            [](const WaveSolution& s, std::optional<double> r_max, int grid) {
                return boundary_report(s, r_max.value_or(default_r_max(s)), grid);
            },
            py::arg("r_max") = py::none(), py::arg("grid") = 2000);

    m.def(
        "wave_solution",
        [](const PhysicalConstants& c, const ParticleSpec& p, const PotentialSpec& pot, int n, int l,
           const std::string& line, const SolverConfig& cfg) {
            const auto table = solve_spectrum(c, p, pot, n, l, cfg);
            return make_wave_solution(c, p, pot, pick(table, n, l, parse_line(line)));
        },
        py::arg("constants"), py::arg("particle"), py::arg("potential"), py::arg("n"), py::arg("l"),
        py::arg("line") = "upper", py::arg("config") = SolverConfig{},
        "Solves the (n, l) cell and returns the state on the requested line. Raises AbsentError if missing.");

    m.def(
        "aim_terminates",
        [](const std::string& tau, const std::string& eta, const std::string& beta_sq, int n) {
            return aim::terminates(rational(tau), rational(eta), rational(beta_sq), n);
        },
        py::arg("tau"), py::arg("eta"), py::arg("beta_sq"), py::arg("n"),
        "Exact AIM termination check; rationals are passed as strings like '3/7'.");
    m.def(
        "aim_quantized_tau",
        [](const std::string& beta_sq, const std::string& eta, int n) {
            return aim::quantized_tau(rational(beta_sq), rational(eta), n).get_str();
        },
        py::arg("beta_sq"), py::arg("eta"), py::arg("n"));

    m.def("constant_mass_b", &constant_mass_b, py::arg("A"), py::arg("B"), py::arg("constants") = PhysicalConstants{});
    m.def(
        "constant_mass_identity_check",
        [](const PhysicalConstants& c, const ParticleSpec& p, const PotentialSpec& pot, double B,
           const std::vector<std::pair<double, double>>& samples, double rel_tol) {
            std::vector<RadialEnergySample> s;
            for (const auto& [r, E] : samples) s.push_back({r, E});
            return constant_mass_identity_check(c, p, pot, B, s, rel_tol);
        },
        py::arg("constants"), py::arg("particle"), py::arg("potential"), py::arg("B"), py::arg("samples"),
        py::arg("rel_tol") = 1e-12);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one CLI command in-process; returns (exit_code, stdout, stderr).");
}
