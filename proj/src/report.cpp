#include "kgedp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifndef KGEDP_VERSION
#define KGEDP_VERSION "0.0.0"
#endif

namespace kgedp {

using nlohmann::json;

namespace {

constexpr double kParameterMatch = 1e-12;

bool same_parameter(double a, double b) { return std::abs(a - b) <= kParameterMatch; }

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) {
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        out.push_back(first == std::string::npos ? std::string{} : field.substr(first, last - first + 1));
    }
    return out;
}

std::pair<int, int> parse_cell_header(const std::string& name) {
    if (name.size() != 3 || name[0] != 'E' || !std::isdigit(name[1]) || !std::isdigit(name[2])) {
        throw std::invalid_argument("reference column '" + name + "' is not of the form Enl");
    }
    return {name[1] - '0', name[2] - '0'};
}

EigenLine parse_line(const std::string& text) {
    if (text == "lower") return EigenLine::Lower;
    if (text == "upper") return EigenLine::Upper;
    throw std::invalid_argument("unknown line '" + text + "' (expected lower or upper)");
}

json entry_to_json(const SpectrumEntry& e) {
    json j;
    j["n"] = e.n;
    j["l"] = e.l;
    j["line"] = std::string(to_string(e.line));
    j["branch"] = std::string(to_string(e.branch));
    j["energy"] = e.energy ? json(*e.energy) : json(nullptr);
    j["residual"] = std::isfinite(e.residual_at_root) ? json(e.residual_at_root) : json(nullptr);
    j["iterations"] = e.iterations;
    j["status"] = std::string(to_string(e.status));
    return j;
}

SpectrumEntry entry_from_json(const json& j) {
    SpectrumEntry e;
    e.n = j.at("n").get<int>();
    e.l = j.at("l").get<int>();
    e.line = parse_line(j.at("line").get<std::string>());
    e.branch = parse_branch(j.at("branch").get<std::string>());
    if (!j.at("energy").is_null()) e.energy = j.at("energy").get<double>();
    e.residual_at_root =
        j.at("residual").is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at("residual").get<double>();
    e.iterations = j.at("iterations").get<int>();
    const auto status = j.at("status").get<std::string>();
    if (status == "found") {
        e.status = EntryStatus::Found;
    } else if (status == "absent") {
        e.status = EntryStatus::Absent;
    } else if (status == "not_converged") {
        e.status = EntryStatus::NotConverged;
    } else {
        throw std::invalid_argument("unknown entry status '" + status + "'");
    }
    return e;
}

}  // namespace

std::vector<std::pair<int, int>> table_cells(int n_max, int l_max) {
    std::vector<std::pair<int, int>> cells;
    for (int n = 0; n <= n_max; ++n) {
        for (int l = 0; l <= std::min(n, l_max); ++l) cells.emplace_back(n, l);
    }
    return cells;
}

std::vector<double> reference_tuning_values() { return {-0.003, 0.0, 0.003}; }

std::vector<ParameterBlock> solve_grid(const RunConfig& config, CouplingMode mode, const std::vector<double>& deltas,
                                       const std::vector<double>& lambda_bs, int n_max, int l_max, Branch branch) {
    std::vector<ParameterBlock> blocks;
    for (double delta : deltas) {
        for (double lambda_b : lambda_bs) {
            const auto potential = PotentialSpec::from_lambda_b(mode, config.A, delta, lambda_b, config.particle);
            blocks.push_back({delta, lambda_b,
                              solve_spectrum(config.constants, config.particle, potential, n_max, l_max,
                                             config.solver, branch)});
        }
    }
    return blocks;
}

std::string code_version() { return KGEDP_VERSION; }

json RunManifest::to_json() const {
    json j;
    j["command"] = command;
    if (!mode.empty()) j["mode"] = mode;
    j["branch"] = branch;
    j["hbar_c"] = config.constants.hbar_c();
    j["m0c2"] = config.particle.m0c2();
    j["lambda"] = config.particle.lambda();
    j["A"] = config.A;
    j["solver"] = {{"grid_points", config.solver.grid_points},
                   {"tol_energy", config.solver.tol_energy},
                   {"tol_residual", config.solver.tol_residual},
                   {"max_iter", config.solver.max_iter},
                   {"window_margin", config.solver.window_margin}};
    if (timestamp) j["timestamp"] = *timestamp;
    j["version"] = code_version();
    for (const auto& [key, value] : extra.items()) j[key] = value;
    return j;
}

std::string format_energy(std::optional<double> value, int precision) {
    if (!value) return "None";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, *value);
    return buf;
}

std::string format_parameter(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

void write_spectrum_csv_long(std::ostream& out, const std::vector<ParameterBlock>& blocks, int precision) {
    out << "delta,lambda_b,n,l,line,energy\n";
    for (const auto& block : blocks) {
        for (const auto& e : block.table.entries) {
            const auto energy = e.status == EntryStatus::Found ? e.energy : std::nullopt;
            out << format_parameter(block.delta) << ',' << format_parameter(block.lambda_b) << ',' << e.n << ','
                << e.l << ',' << to_string(e.line) << ',' << format_energy(energy, precision) << '\n';
        }
    }
}

void write_spectrum_csv_table(std::ostream& out, const std::vector<ParameterBlock>& blocks, int n_max, int l_max,
                              int precision) {
    const auto cells = table_cells(n_max, l_max);
    out << "delta,lambda_b,line";
    for (const auto& [n, l] : cells) out << ",E" << n << l;
    out << '\n';
    for (const auto& block : blocks) {
        for (EigenLine line : {EigenLine::Lower, EigenLine::Upper}) {
            out << format_parameter(block.delta) << ',' << format_parameter(block.lambda_b) << ','
                << to_string(line);
            for (const auto& [n, l] : cells) {
                std::string text;
                for (const auto& e : block.table.find(n, l, line)) {
                    if (!e.present()) continue;
                    if (!text.empty()) text += ';';
                    text += format_energy(e.energy, precision);
                }
                out << ',' << (text.empty() ? "None" : text);
            }
            out << '\n';
        }
    }
}

json spectrum_to_json(const std::vector<ParameterBlock>& blocks, const RunManifest& manifest) {
    json doc;
    doc["manifest"] = manifest.to_json();
    doc["blocks"] = json::array();
    for (const auto& block : blocks) {
        json jb;
        jb["delta"] = block.delta;
        jb["lambda_b"] = block.lambda_b;
        jb["entries"] = json::array();
        for (const auto& e : block.table.entries) jb["entries"].push_back(entry_to_json(e));
        doc["blocks"].push_back(std::move(jb));
    }
    return doc;
}

std::vector<ParameterBlock> spectrum_from_json(const json& doc) {
    std::vector<ParameterBlock> blocks;
    for (const auto& jb : doc.at("blocks")) {
        ParameterBlock block;
        block.delta = jb.at("delta").get<double>();
        block.lambda_b = jb.at("lambda_b").get<double>();
        for (const auto& je : jb.at("entries")) block.table.entries.push_back(entry_from_json(je));
        blocks.push_back(std::move(block));
    }
    return blocks;
}

ReferenceTable read_reference_table(std::istream& in) {
    ReferenceTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split(line, ',');
        if (!header_seen) {
            if (fields.size() < 4 || fields[0] != "delta" || fields[1] != "lambda_b" || fields[2] != "line") {
                throw std::invalid_argument("reference table header must start with delta,lambda_b,line");
            }
            for (std::size_t i = 3; i < fields.size(); ++i) table.cells.push_back(parse_cell_header(fields[i]));
            header_seen = true;
            continue;
        }
        if (fields.size() != table.cells.size() + 3) {
            throw std::invalid_argument("reference row has " + std::to_string(fields.size()) + " fields: " + line);
        }
        ReferenceRow row{std::stod(fields[0]), std::stod(fields[1]), parse_line(fields[2]), {}};
        for (std::size_t i = 0; i < table.cells.size(); ++i) {
            const auto& text = fields[i + 3];
            row.values[table.cells[i]] = text == "None" ? std::nullopt : std::optional<double>(std::stod(text));
        }
        table.rows.push_back(std::move(row));
    }
    if (!header_seen) throw std::invalid_argument("reference table is empty");
    return table;
}

ReferenceTable load_reference_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open reference table " + path.string());
    return read_reference_table(in);
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Match: return "MATCH";
        case Verdict::Mismatch: return "MISMATCH";
        case Verdict::Missing: return "MISSING";
        case Verdict::Extra: return "EXTRA";
        case Verdict::BothAbsent: return "NONE";
    }
    return "?";
}

std::vector<CellComparison> compare_with_reference(const ReferenceTable& reference,
                                                   const std::vector<ParameterBlock>& computed, double tolerance) {
    std::vector<CellComparison> out;
    for (const auto& row : reference.rows) {
        const auto block = std::find_if(computed.begin(), computed.end(), [&](const ParameterBlock& b) {
            return same_parameter(b.delta, row.delta) && same_parameter(b.lambda_b, row.lambda_b);
        });
        if (block == computed.end()) {
            throw std::invalid_argument("no computed block for delta = " + format_parameter(row.delta) +
                                        ", lambda_b = " + format_parameter(row.lambda_b));
        }
        for (const auto& cell : reference.cells) {
            const auto& ref = row.values.at(cell);
            std::optional<double> got;
            for (const auto& e : block->table.find(cell.first, cell.second, row.line)) {
                if (!e.present()) continue;
                if (!got || (ref && std::abs(*e.energy - *ref) < std::abs(*got - *ref))) got = e.energy;
            }
            CellComparison c{row.delta, row.lambda_b, cell.first, cell.second, row.line, ref, got, 0.0,
                             Verdict::BothAbsent};
            if (ref && got) {
                c.deviation = std::abs(*ref - *got);
                c.verdict = c.deviation <= tolerance ? Verdict::Match : Verdict::Mismatch;
            } else if (ref) {
                c.verdict = Verdict::Missing;
            } else if (got) {
                c.verdict = Verdict::Extra;
            }
            out.push_back(c);
        }
    }
    return out;
}

void write_comparison(std::ostream& out, const std::vector<CellComparison>& cells, int precision) {
    out << "delta,lambda_b,line,n,l,reference,computed,deviation,verdict\n";
    for (const auto& c : cells) {
        char dev[32];
        std::snprintf(dev, sizeof dev, "%.6f", c.deviation);
        out << format_parameter(c.delta) << ',' << format_parameter(c.lambda_b) << ',' << to_string(c.line) << ','
            << c.n << ',' << c.l << ',' << format_energy(c.reference, precision) << ','
            << format_energy(c.computed, precision) << ',' << dev << ',' << to_string(c.verdict) << '\n';
    }
}

}  // namespace kgedp
