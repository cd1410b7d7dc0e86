#pragma once

#include <filesystem>
#include <string>

#include "kgedp/model.hpp"

namespace kgedp::testing {

inline std::filesystem::path reference_dir() { return std::filesystem::path(KGEDP_DATA_DIR) / "reference"; }

inline std::filesystem::path reference_table(const std::string& name) {
    return reference_dir() / (name + "_table.csv");
}

inline constexpr double kWellStrength = 200.0;  // MeV*fm

inline PotentialSpec potential(CouplingMode mode, double delta, double lambda_b) {
    return PotentialSpec::from_lambda_b(mode, kWellStrength, delta, lambda_b, ParticleSpec::neutral_pion());
}

}  // namespace kgedp::testing
