#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "kgedp/errors.hpp"
#include "kgedp/model.hpp"

namespace kgedp {
namespace {

using testing::potential;

const PhysicalConstants kC{};
const ParticleSpec kPion = ParticleSpec::neutral_pion();

TEST(ModelTest, MassIsConstantWithoutCoupling) {
    const auto pot = potential(CouplingMode::EMES, 0.003, 0.0);
    for (double r : {0.1, 1.0, 10.0}) {
        for (double E : {-100.0, 0.0, 100.0}) EXPECT_DOUBLE_EQ(mass_at(kPion, pot, r, E), 134.977);
    }
}

TEST(ModelTest, MassVanishesAtCouplingRadius) {
    const auto pot = potential(CouplingMode::EMES, 0.0, 0.003);
    EXPECT_NEAR(mass_at(kPion, pot, 0.003 * 200.0, 10.0), 0.0, 1e-12);
    EXPECT_NEAR(mass_at(kPion, pot, 1e12, 10.0), 134.977, 1e-9);
    EXPECT_LT(mass_at(kPion, pot, 0.1, 10.0), 0.0);
}

TEST(ModelTest, MassRejectsNonpositiveRadius) {
    const auto pot = potential(CouplingMode::EMES, 0.0, 0.003);
    EXPECT_THROW(mass_at(kPion, pot, 0.0, 1.0), DomainError);
    EXPECT_THROW(mass_at(kPion, pot, -1.0, 1.0), DomainError);
}

TEST(ModelTest, VectorPotentialScalesWithEnergyFactor) {
    EXPECT_DOUBLE_EQ(vector_potential(potential(CouplingMode::EMES, 0.0, 0.0), 1.0, 50.0), -200.0);
    EXPECT_NEAR(vector_potential(potential(CouplingMode::EMES, -0.003, 0.0), 2.0, 100.0), -70.0, 1e-12);
    EXPECT_EQ(vector_potential(potential(CouplingMode::EMES, -0.01, 0.0), 1.0, 100.0), 0.0);
}

TEST(ModelTest, EmesWithoutCouplingHasIntegerEta) {
    for (double delta : {-0.003, 0.0, 0.003}) {
        const auto pot = potential(CouplingMode::EMES, delta, 0.0);
        for (int l = 0; l <= 3; ++l) {
            const auto p = case_parameters(kC, kPion, pot, QuantumNumbers(3, l), 20.0);
            EXPECT_EQ(p.K, l * (l + 1.0));
            EXPECT_EQ(p.eta, static_cast<double>(l));
        }
    }
}

TEST(ModelTest, PureScalarK) {
    const auto p = case_parameters(kC, kPion, potential(CouplingMode::PureScalar, 0.0, 0.0), QuantumNumbers(0, 0), 0.0);
    EXPECT_NEAR(p.K, 1.0272757850764527, 1e-14);
}

TEST(ModelTest, TauIdenticalAcrossModes) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> energy(-130.0, 130.0);
    std::uniform_real_distribution<double> tune(-0.003, 0.003);
    for (int i = 0; i < 50; ++i) {
        const double E = energy(rng);
        const double delta = tune(rng);
        const double lb = tune(rng);
        const double ref = decay_tau_sq(kC, kPion, potential(CouplingMode::EMES, delta, lb), E);
        for (auto mode : {CouplingMode::EMOS, CouplingMode::PureVector, CouplingMode::PureScalar}) {
            EXPECT_EQ(decay_tau_sq(kC, kPion, potential(mode, delta, lb), E), ref);
        }
    }
}

TEST(ModelTest, TauVanishesAtThreshold) {
    const auto p = case_parameters(kC, kPion, potential(CouplingMode::EMES, 0.0, 0.0), QuantumNumbers(0, 0), 134.977);
    EXPECT_EQ(p.tau_sq, 0.0);
}

TEST(ModelTest, EtaSolvesK) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> energy(-130.0, 130.0);
    std::uniform_real_distribution<double> tune(-0.003, 0.003);
    for (int i = 0; i < 100; ++i) {
        const auto mode = static_cast<CouplingMode>(i % 4);
        const auto pot = potential(mode, tune(rng), tune(rng));
        const int l = 1 + i % 3;
        const auto p = case_parameters(kC, kPion, pot, QuantumNumbers(3, l), energy(rng));
        EXPECT_NEAR(p.eta * (p.eta + 1.0), p.K, 1e-12 * std::max(1.0, std::abs(p.K)));
    }
}

TEST(ModelTest, EmesEmosBetaDifference) {
    const double E = 40.0;
    const double m = kPion.m0c2();
    const double hc = kC.hbar_c();
    const double emes = coulomb_beta_sq(kC, kPion, potential(CouplingMode::EMES, 0.0, 0.0), E);
    const double emos = coulomb_beta_sq(kC, kPion, potential(CouplingMode::EMOS, 0.0, 0.0), E);
    const double pv = coulomb_beta_sq(kC, kPion, potential(CouplingMode::PureVector, 0.0, 0.0), E);
    EXPECT_NEAR(emes - pv, 2.0 * 200.0 * m / (hc * hc), 1e-14);
    EXPECT_NEAR(pv - emos, 2.0 * 200.0 * m / (hc * hc), 1e-14);
}

TEST(ModelTest, PureVectorGroundStateHasNoRealEta) {
    const auto pot = potential(CouplingMode::PureVector, 0.0, 0.0);
    EXPECT_THROW(case_parameters(kC, kPion, pot, QuantumNumbers(0, 0), 10.0), BranchError);
    EXPECT_NO_THROW(case_parameters(kC, kPion, pot, QuantumNumbers(1, 1), 10.0));
}

TEST(ModelTest, RejectsEnergiesOutsideDomain) {
    const auto pot = potential(CouplingMode::EMES, -0.01, 0.0);
    EXPECT_THROW(case_parameters(kC, kPion, pot, QuantumNumbers(0, 0), 100.0), DomainError);
    EXPECT_THROW(case_parameters(kC, kPion, pot, QuantumNumbers(0, 0), 140.0), DomainError);
}

TEST(ModelTest, ConstructorsValidate) {
    EXPECT_THROW(PotentialSpec(CouplingMode::EMES, 0.0, 0.0, 0.0), DomainError);
    EXPECT_THROW(PhysicalConstants(0.0), DomainError);
    EXPECT_THROW(ParticleSpec(-1.0, 1.0), DomainError);
    EXPECT_THROW(QuantumNumbers(-1, 0), DomainError);
}

TEST(ModelTest, ParsesNames) {
    EXPECT_EQ(parse_mode("EMES"), CouplingMode::EMES);
    EXPECT_EQ(parse_mode("pv"), CouplingMode::PureVector);
    EXPECT_EQ(parse_mode("ps"), CouplingMode::PureScalar);
    EXPECT_THROW(parse_mode("dirac"), std::invalid_argument);
    EXPECT_EQ(parse_branch("-"), Branch::Minus);
    EXPECT_EQ(parse_branch("plus"), Branch::Plus);
}

TEST(ModelTest, LambdaBRoundTrips) {
    const auto pot = potential(CouplingMode::EMES, 0.0, 0.003);
    EXPECT_NEAR(pot.lambda_b(kPion), 0.003, 1e-18);
    EXPECT_NEAR(pot.b(), 0.003 / 1.462, 1e-18);
}

}  // namespace
}  // namespace kgedp
