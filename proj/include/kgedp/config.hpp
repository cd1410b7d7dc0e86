#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "kgedp/model.hpp"
#include "kgedp/rootfind.hpp"

namespace kgedp {

/// Constants, default particle, well strength and solver settings.
///
/// Config files are plain `key = value` lines; `#` starts a comment and blank lines are
/// ignored. Recognised keys:
///
///   hbar_c         MeV*fm     (default 197.3269804)
///   m0c2           MeV        (default 134.977, neutral pion)
///   lambda         fm         (default 1.462)
///   A              MeV*fm     (default 200)
///   grid_points    integer    (default 4000)
///   tol_energy     MeV        (default 1e-9)
///   tol_residual   MeV        (default 1e-8)
///   max_iter       integer    (default 200)
///   window_margin  MeV        (default 1e-6)
///
/// Unknown keys and malformed lines are errors.
struct RunConfig {
    PhysicalConstants constants{};
    ParticleSpec particle = ParticleSpec::neutral_pion();
    double A = 200.0;
    SolverConfig solver{};

    /// Applies one key; throws std::invalid_argument on unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
};

/// Parses `key = value` lines into a map (later keys win). Throws std::invalid_argument
/// with the line number on malformed input.
std::map<std::string, std::string> parse_key_values(std::istream& in);

RunConfig load_config(const std::filesystem::path& path);
RunConfig load_config(std::istream& in);

}  // namespace kgedp
