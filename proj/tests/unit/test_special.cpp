#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "kgedp/errors.hpp"
#include "kgedp/rootfind.hpp"
#include "kgedp/special.hpp"

namespace kgedp {
namespace {

using testing::potential;
using testing::kummer_oracle;

const PhysicalConstants kC{};
const ParticleSpec kPion = ParticleSpec::neutral_pion();

double relative(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

TEST(KummerTest, ElementaryValues) {
    EXPECT_EQ(kummer_1f1(KummerParams(2.5, 3.0), 0.0), 1.0);
    for (double x : {0.5, 1.0, 10.0, 40.0}) {
        EXPECT_LE(relative(kummer_1f1(KummerParams(1.7, 1.7), x), std::exp(x)), 1e-12);
    }
    EXPECT_NEAR(kummer_1f1(KummerParams(-1.0, 2.0), 3.0), -0.5, 1e-15);
}

TEST(KummerTest, NegativeIntegerAIsPolynomial) {
    // 1F1(-2; c; x) = 1 - 2x/c + x^2/(c(c+1)).
    const double c = 3.5;
    for (double x : {0.0, 1.0, 7.0, 30.0}) {
        const double poly = 1.0 - 2.0 * x / c + x * x / (c * (c + 1.0));
        EXPECT_NEAR(kummer_1f1(KummerParams(-2.0, c), x), poly, 1e-12 * std::max(1.0, std::abs(poly)));
        EXPECT_EQ(kummer_1f1(KummerParams(-2.0 + 1e-10, c), x), kummer_1f1(KummerParams(-2.0, c), x));
    }
}

TEST(KummerTest, RejectsPolesAndNegativeArgument) {
    EXPECT_THROW(KummerParams(1.0, 0.0), DomainError);
    EXPECT_THROW(KummerParams(1.0, -2.0), DomainError);
    EXPECT_THROW(kummer_1f1(KummerParams(1.0, 1.5), -1.0), DomainError);
}

TEST(KummerTest, TermCapRaises) {
    EXPECT_THROW(kummer_1f1(KummerParams(1.0, 1.0), 1e5), EvaluationError);
}

TEST(KummerTest, MatchesWidePrecisionOracle) {
    std::mt19937_64 rng(1729);
    std::uniform_real_distribution<double> ua(0.05, 8.0);
    std::uniform_real_distribution<double> uc(0.5, 10.0);
    for (int i = 0; i < 50; ++i) {
        const double a = ua(rng), c = uc(rng);
        for (double x = 0.0; x <= 50.0; x += 2.5) {
            EXPECT_LE(relative(kummer_1f1(KummerParams(a, c), x), kummer_oracle(a, c, x)), 1e-12)
                << "a=" << a << " c=" << c << " x=" << x;
        }
    }
}

WaveSolution state(CouplingMode mode, double delta, double lb, int n, int l, EigenLine line) {
    const auto pot = potential(mode, delta, lb);
    const auto table = solve_spectrum(kC, kPion, pot, n, l);
    for (const auto& e : table.find(n, l, line)) {
        if (e.present()) return make_wave_solution(kC, kPion, pot, e);
    }
    throw AbsentError("state missing in test setup");
}

TEST(WaveFunctionTest, VanishesAtOrigin) {
    const auto sol = state(CouplingMode::EMES, -0.003, 0.003, 0, 0, EigenLine::Upper);
    EXPECT_EQ(wavefunction_u(sol, 0.0), 0.0);
    EXPECT_THROW(wavefunction_u(sol, -1.0), DomainError);
}

TEST(WaveFunctionTest, UpperGroundStateDecaysBy40fm) {
    const auto sol = state(CouplingMode::EMES, -0.003, 0.003, 0, 0, EigenLine::Upper);
    const auto report = boundary_report(sol, 40.0);
    EXPECT_LT(report.tail_ratio, 1e-6);
    EXPECT_EQ(report.node_count, 0);
}

TEST(WaveFunctionTest, EigenstatesAreRegularAndDecaying) {
    for (auto mode : {CouplingMode::EMES, CouplingMode::PureScalar, CouplingMode::PureVector}) {
        const auto pot = potential(mode, 0.003, -0.003);
        const auto table = solve_spectrum(kC, kPion, pot, 3, 3);
        for (const auto& e : table.entries) {
            if (!e.present()) continue;
            const auto sol = make_wave_solution(kC, kPion, pot, e);
            EXPECT_NEAR(sol.params.a, -e.n, 1e-6);
            const auto report = boundary_report(sol, default_r_max(sol));
            EXPECT_EQ(report.u_at_origin, 0.0);
            EXPECT_LT(report.tail_ratio, 1e-4) << to_string(mode) << " n=" << e.n << " l=" << e.l;
            EXPECT_EQ(report.node_count, e.n);
        }
    }
}

TEST(WaveFunctionTest, OffEigenvalueEnergyFailsTail) {
    const auto pot = potential(CouplingMode::EMES, 0.0, 0.0);
    const auto table = solve_spectrum(kC, kPion, pot, 1, 0);
    const auto entry = table.find(1, 0, EigenLine::Upper).front();
    const auto sol = make_wave_solution(kC, kPion, pot, entry);
    const double r_max = default_r_max(sol);
    for (double shift : {-1.0, 1.0}) {
        const auto off = make_wave_solution_at(kC, kPion, pot, entry, *entry.energy + shift);
        EXPECT_GT(boundary_report(off, r_max).tail_ratio, 1e-2);
    }
}

TEST(WaveFunctionTest, MatchesConstantMassCoulombForm) {
    // delta = 0, b = 0: u = exp(-k r) r^(l+1) 1F1(-n; 2l+2; 2 k r), k = sqrt(m^2 - E^2)/hbar c.
    const auto pot = potential(CouplingMode::EMES, 0.0, 0.0);
    const auto table = solve_spectrum(kC, kPion, pot, 3, 3);
    for (const auto& e : table.entries) {
        if (!e.present()) continue;
        const auto sol = make_wave_solution(kC, kPion, pot, e);
        const double E = *e.energy;
        const double k = std::sqrt(134.977 * 134.977 - E * E) / kC.hbar_c();
        for (double r : {0.5, 2.0, 10.0, 30.0}) {
            const double want = std::exp(-k * r) * std::pow(r, e.l + 1) *
                                kummer_1f1(KummerParams(-e.n, 2.0 * e.l + 2.0), 2.0 * k * r);
            EXPECT_NEAR(wavefunction_u(sol, r), want, 1e-10 * std::abs(want) + 1e-300);
        }
    }
}

TEST(WaveFunctionTest, AbsentEntryRaises) {
    SpectrumEntry missing;
    EXPECT_THROW(make_wave_solution(kC, kPion, potential(CouplingMode::PureVector, 0.0, 0.0), missing), AbsentError);
}

TEST(WaveFunctionTest, TrapezoidNormalization) {
    const auto sol = state(CouplingMode::PureScalar, 0.0, 0.0, 1, 1, EigenLine::Upper);
    const auto r = radial_grid(default_r_max(sol), 4000);
    std::vector<double> u;
    for (double x : r) u.push_back(wavefunction_u(sol, x));
    const auto v = trapezoid_normalize(r, u);
    double integral = 0.0;
    for (std::size_t i = 1; i < r.size(); ++i) integral += 0.5 * (r[i] - r[i - 1]) * (v[i] * v[i] + v[i - 1] * v[i - 1]);
    EXPECT_NEAR(integral, 1.0, 1e-12);
}

}  // namespace
}  // namespace kgedp
