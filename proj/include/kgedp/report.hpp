#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kgedp/config.hpp"
#include "kgedp/rootfind.hpp"

namespace kgedp {

/// Spectrum for one (delta, lambda*b) setting.
struct ParameterBlock {
    double delta = 0.0;
    double lambda_b = 0.0;
    SpectrumTable table;

    bool operator==(const ParameterBlock&) const = default;
};

/// The (n, l) cells listed for n <= n_max, l <= min(n, l_max), in table column order.
std::vector<std::pair<int, int>> table_cells(int n_max, int l_max);

/// {-0.003, 0, 0.003} (1/MeV), the tuning values used for both delta and lambda*b.
std::vector<double> reference_tuning_values();

/// Solves every (delta, lambda_b) combination, delta-major.
std::vector<ParameterBlock> solve_grid(const RunConfig& config, CouplingMode mode, const std::vector<double>& deltas,
                                       const std::vector<double>& lambda_bs, int n_max, int l_max,
                                       Branch branch = Branch::Plus);

/// Provenance attached to every output.
struct RunManifest {
    std::string command;
    std::string mode;
    std::string branch = "plus";
    RunConfig config;
    std::optional<std::string> timestamp;
    nlohmann::json extra = nlohmann::json::object();

    nlohmann::json to_json() const;
};

std::string code_version();

/// "None" for an absent value, otherwise fixed-point with `precision` decimals.
std::string format_energy(std::optional<double> value, int precision);
std::string format_parameter(double value);

/// One row per entry: delta,lambda_b,n,l,line,energy.
void write_spectrum_csv_long(std::ostream& out, const std::vector<ParameterBlock>& blocks, int precision);

/// Two rows (lower, upper) per block and one column per (n, l) cell. Several roots on
/// one line are joined with ';'.
void write_spectrum_csv_table(std::ostream& out, const std::vector<ParameterBlock>& blocks, int n_max, int l_max,
                              int precision);

nlohmann::json spectrum_to_json(const std::vector<ParameterBlock>& blocks, const RunManifest& manifest);
std::vector<ParameterBlock> spectrum_from_json(const nlohmann::json& doc);

/// A transcribed reference table in the wide layout written by write_spectrum_csv_table.
struct ReferenceRow {
    double delta;
    double lambda_b;
    EigenLine line;
    std::map<std::pair<int, int>, std::optional<double>> values;
};

struct ReferenceTable {
    std::vector<std::pair<int, int>> cells;
    std::vector<ReferenceRow> rows;
};

ReferenceTable read_reference_table(std::istream& in);
ReferenceTable load_reference_table(const std::filesystem::path& path);

enum class Verdict { Match, Mismatch, Missing, Extra, BothAbsent };
std::string_view to_string(Verdict verdict);

struct CellComparison {
    double delta;
    double lambda_b;
    int n;
    int l;
    EigenLine line;
    std::optional<double> reference;
    std::optional<double> computed;
    double deviation;  // |reference - computed| when both exist, else 0
    Verdict verdict;

    bool ok() const noexcept { return verdict == Verdict::Match || verdict == Verdict::BothAbsent; }
};

/// Cell-by-cell diff. A computed line holding several roots matches on the closest one.
/// Throws std::invalid_argument if a reference block has no computed counterpart.
std::vector<CellComparison> compare_with_reference(const ReferenceTable& reference,
                                                   const std::vector<ParameterBlock>& computed, double tolerance);

void write_comparison(std::ostream& out, const std::vector<CellComparison>& cells, int precision = 5);

}  // namespace kgedp
