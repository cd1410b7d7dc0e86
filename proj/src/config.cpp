#include "kgedp/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace kgedp {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || value.empty()) {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
    }
    return out;
}

int to_int(const std::string& key, const std::string& value) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::invalid_argument("config key '" + key + "': not an integer: '" + value + "'");
    }
    return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "hbar_c") {
        constants = PhysicalConstants(to_double(key, value));
    } else if (key == "m0c2") {
        particle = ParticleSpec(to_double(key, value), particle.lambda());
    } else if (key == "lambda") {
        particle = ParticleSpec(particle.m0c2(), to_double(key, value));
    } else if (key == "A") {
        A = to_double(key, value);
        if (!(A > 0.0)) throw std::invalid_argument("config key 'A' must be positive");
    } else if (key == "grid_points") {
        solver.grid_points = to_int(key, value);
    } else if (key == "tol_energy") {
        solver.tol_energy = to_double(key, value);
    } else if (key == "tol_residual") {
        solver.tol_residual = to_double(key, value);
    } else if (key == "max_iter") {
        solver.max_iter = to_int(key, value);
    } else if (key == "window_margin") {
        solver.window_margin = to_double(key, value);
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
        out[key] = value;
    }
    return out;
}

RunConfig load_config(std::istream& in) {
    RunConfig config;
    for (const auto& [key, value] : parse_key_values(in)) config.set(key, value);
    config.solver.validate();
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path.string());
    return load_config(in);
}

}  // namespace kgedp
