#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "kgedp/errors.hpp"
#include "kgedp/quantization.hpp"
#include "kgedp/rootfind.hpp"

namespace kgedp {
namespace {

using testing::potential;

const PhysicalConstants kC{};
const ParticleSpec kPion = ParticleSpec::neutral_pion();

// Anchor tolerance: the published levels are printed to 5 decimals and do not share one hbar*c.
constexpr double kAnchorTol = 0.005;

ResidualSpec spec(CouplingMode mode, double delta, double lambda_b, int n, int l, Branch branch = Branch::Plus) {
    return ResidualSpec::make(kC, kPion, potential(mode, delta, lambda_b), QuantumNumbers(n, l), branch);
}

bool changes_sign_near(const ResidualSpec& s, double E, double tol) {
    return residual(s, E - tol) * residual(s, E + tol) < 0.0;
}

TEST(QuantizationTest, WindowRespectsThresholdsAndEnergyFactor) {
    const auto w0 = physical_window(kPion, potential(CouplingMode::EMES, 0.0, 0.0));
    EXPECT_DOUBLE_EQ(w0.lo, -134.977 + 1e-6);
    EXPECT_DOUBLE_EQ(w0.hi, 134.977 - 1e-6);
    const auto w1 = physical_window(kPion, potential(CouplingMode::EMES, 0.01, 0.0));
    EXPECT_DOUBLE_EQ(w1.lo, -100.0 + 1e-6);
    const auto w2 = physical_window(kPion, potential(CouplingMode::EMES, -0.01, 0.0));
    EXPECT_DOUBLE_EQ(w2.hi, 100.0 - 1e-6);
}

TEST(QuantizationTest, EmesAnchorWithoutTuning) {
    const auto s = spec(CouplingMode::EMES, 0.0, 0.0, 1, 0);
    EXPECT_TRUE(changes_sign_near(s, 79.81538, kAnchorTol));
    EXPECT_TRUE(sign_validity(s, 79.81538));
    // Closed form for b = 0, delta = 0: E = m (D^2 - a^2) / (D^2 + a^2), D = n + l + 1, a = A / hbar c.
    const double a2 = std::pow(200.0 / kC.hbar_c(), 2);
    const double closed = 134.977 * (4.0 - a2) / (4.0 + a2);
    EXPECT_NEAR(residual(s, closed), 0.0, 1e-12);
}

TEST(QuantizationTest, PureScalarAnchorPair) {
    const auto s = spec(CouplingMode::PureScalar, 0.0, 0.0, 0, 0);
    EXPECT_TRUE(changes_sign_near(s, 105.71706, kAnchorTol));
    EXPECT_TRUE(changes_sign_near(s, -105.71706, kAnchorTol));
}

TEST(QuantizationTest, PureScalarResidualIsEvenWithoutDelta) {
    const auto s = spec(CouplingMode::PureScalar, 0.0, 0.003, 2, 1);
    for (double E = 0.5; E < 134.0; E += 7.3) EXPECT_EQ(residual(s, E), residual(s, -E));
}

TEST(QuantizationTest, ThresholdLimitLeavesMinusRhs) {
    for (auto mode : {CouplingMode::EMES, CouplingMode::EMOS, CouplingMode::PureScalar}) {
        const auto s = spec(mode, 0.0, 0.003, 1, 1);
        const double E = s.window.hi;
        const auto parts = residual_parts(s, E);
        EXPECT_LT(parts.lhs, 0.02);
        EXPECT_NEAR(parts.value(), -parts.rhs, 0.02);
    }
}

TEST(QuantizationTest, EmesDegeneracyWithoutCoupling) {
    for (double delta : {-0.003, 0.0, 0.003}) {
        for (int n = 1; n <= 3; ++n) {
            for (int l = 0; l < n; ++l) {
                const auto a = spec(CouplingMode::EMES, delta, 0.0, n, l);
                const auto b = spec(CouplingMode::EMES, delta, 0.0, n - 1, l + 1);
                for (double E = a.window.lo; E < a.window.hi; E += 3.7) EXPECT_EQ(residual(a, E), residual(b, E));
            }
        }
    }
}

TEST(QuantizationTest, SignValidityEmosFalseAcrossWindow) {
    const auto s = spec(CouplingMode::EMOS, 0.0, 0.0, 1, 0);
    for (double E : scan_grid(s.window, 4000)) ASSERT_FALSE(sign_validity(s, E)) << E;
}

TEST(QuantizationTest, SignValidityMatchesRhsOracle) {
    // Independent RHS sign for EMES: sign(E + m + lambda_b m^2). l = 0 has no real eta here.
    const double lb = -0.003;
    const double m = 134.977;
    const auto s = spec(CouplingMode::EMES, 0.0, lb, 1, 1);
    int negatives = 0;
    for (double E : scan_grid(s.window, 2001)) {
        const double numerator = E + m + lb * m * m;
        if (std::abs(numerator) < 1e-9) continue;
        EXPECT_EQ(sign_validity(s, E), numerator > 0.0) << E;
        negatives += numerator < 0.0;
    }
    EXPECT_GT(negatives, 0);
}

TEST(QuantizationTest, MinusBranchPole) {
    // EMES, b = 0, l = n on the minus branch: eta = -(l + 1), so n + 1 + eta = 0.
    const auto s = spec(CouplingMode::EMES, 0.0, 0.0, 2, 2, Branch::Minus);
    EXPECT_THROW(residual(s, 10.0), PoleError);
    EXPECT_FALSE(try_residual_parts(s, 10.0).has_value());
}

TEST(QuantizationTest, BranchErrorAndEmptyOptional) {
    const auto s = spec(CouplingMode::PureVector, 0.0, 0.0, 0, 0);
    EXPECT_THROW(residual(s, 10.0), BranchError);
    EXPECT_FALSE(quantization_denominator(s, 10.0).has_value());
}

TEST(QuantizationTest, OutsideWindowIsDomainError) {
    const auto s = spec(CouplingMode::EMES, 0.0, 0.0, 0, 0);
    EXPECT_THROW(residual(s, 134.977), DomainError);
    EXPECT_THROW(residual(s, -200.0), DomainError);
}

TEST(QuantizationTest, ConstantMassCoupling) {
    EXPECT_EQ(constant_mass_b(200.0, 0.0, kC), 0.0);
    EXPECT_DOUBLE_EQ(constant_mass_b(200.0, 200.0, kC), 1.0 / kC.hbar_c());
    EXPECT_LT(constant_mass_b(200.0, -100.0, kC), 0.0);
    EXPECT_THROW(constant_mass_b(0.0, 100.0, kC), DomainError);
}

TEST(QuantizationTest, ConstantMassPointwiseWithComptonWavelength) {
    const auto particle = ParticleSpec::with_compton_wavelength(134.977, kC);
    for (double B : {200.0, -100.0}) {
        for (double delta : {0.0, 0.003}) {
            const PotentialSpec pot(CouplingMode::EMES, 200.0, delta, constant_mass_b(200.0, B, kC));
            for (double r : {0.5, 1.0, 5.0}) {
                for (double E : {0.0, 50.0, -50.0}) {
                    const double vs = B * pot.energy_factor(E) / r;
                    EXPECT_NEAR(mass_at(particle, pot, r, E) + vs, 134.977, 1e-12 * 134.977);
                }
            }
        }
    }
}

}  // namespace
}  // namespace kgedp
