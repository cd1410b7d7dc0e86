#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "kgedp/config.hpp"
#include "kgedp/report.hpp"

namespace kgedp {
namespace {

TEST(ConfigTest, ParsesKeysAndComments) {
    std::istringstream in("# constants\nhbar_c = 197.33\n\n  A=150  # weaker well\ngrid_points = 2000\n");
    const auto cfg = load_config(in);
    EXPECT_DOUBLE_EQ(cfg.constants.hbar_c(), 197.33);
    EXPECT_DOUBLE_EQ(cfg.A, 150.0);
    EXPECT_EQ(cfg.solver.grid_points, 2000);
    EXPECT_DOUBLE_EQ(cfg.particle.m0c2(), 134.977);
}

TEST(ConfigTest, RejectsBadInput) {
    std::istringstream unknown("mass = 1\n");
    EXPECT_THROW(load_config(unknown), std::invalid_argument);
    std::istringstream malformed("hbar_c 197\n");
    EXPECT_THROW(load_config(malformed), std::invalid_argument);
    std::istringstream not_number("tol_energy = small\n");
    EXPECT_THROW(load_config(not_number), std::invalid_argument);
    std::istringstream not_integer("max_iter = 2.5\n");
    EXPECT_THROW(load_config(not_integer), std::invalid_argument);
    EXPECT_THROW(load_config(std::filesystem::path("/nonexistent/kgedp.cfg")), std::invalid_argument);
}

TEST(ReportTest, Formatting) {
    EXPECT_EQ(format_energy(std::nullopt, 5), "None");
    EXPECT_EQ(format_energy(-1.814653, 5), "-1.81465");
    EXPECT_EQ(format_parameter(0.0), "0");
    EXPECT_EQ(format_parameter(-0.003), "-0.003");
    const auto cells = table_cells(3, 3);
    ASSERT_EQ(cells.size(), 10u);
    EXPECT_EQ(cells[3], std::make_pair(2, 0));
}

std::vector<ParameterBlock> small_grid() {
    RunConfig cfg;
    return solve_grid(cfg, CouplingMode::EMES, {0.0, 0.003}, {0.003}, 2, 2);
}

TEST(ReportTest, JsonRoundTrip) {
    const auto blocks = small_grid();
    RunManifest manifest{"solve", "emes"};
    const auto doc = spectrum_to_json(blocks, manifest);
    EXPECT_EQ(doc.at("manifest").at("mode"), "emes");
    EXPECT_FALSE(doc.at("manifest").contains("timestamp"));
    const auto back = spectrum_from_json(nlohmann::json::parse(doc.dump()));
    EXPECT_EQ(back, blocks);
}

TEST(ReportTest, TableLayoutRoundTripsThroughReferenceReader) {
    const auto blocks = small_grid();
    std::ostringstream csv;
    write_spectrum_csv_table(csv, blocks, 2, 2, 9);
    std::istringstream in(csv.str());
    const auto ref = read_reference_table(in);
    EXPECT_EQ(ref.rows.size(), 4u);
    EXPECT_EQ(ref.cells.size(), 6u);
    for (const auto& c : compare_with_reference(ref, blocks, 1e-8)) EXPECT_TRUE(c.ok());
}

TEST(ReportTest, LongLayout) {
    std::ostringstream csv;
    write_spectrum_csv_long(csv, small_grid(), 5);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "delta,lambda_b,n,l,line,energy");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    EXPECT_GE(rows, 2 * 2 * 6);
}

TEST(ReportTest, ReferenceFixturesParse) {
    for (const char* name : {"emes", "emos", "pv", "ps"}) {
        const auto ref = load_reference_table(testing::reference_table(name));
        EXPECT_EQ(ref.rows.size(), 18u) << name;
        EXPECT_EQ(ref.cells.size(), 10u) << name;
    }
    const auto emes = load_reference_table(testing::reference_table("emes"));
    const auto& row = *std::find_if(emes.rows.begin(), emes.rows.end(), [](const ReferenceRow& r) {
        return r.delta == 0.0 && r.lambda_b == 0.0 && r.line == EigenLine::Upper;
    });
    EXPECT_DOUBLE_EQ(*row.values.at({1, 0}), 79.81538);
}

TEST(ReportTest, ComparisonVerdicts) {
    std::istringstream in(
        "delta,lambda_b,line,E00,E10\n"
        "0,0,lower,None,-1.0\n"
        "0,0,upper,5.0,None\n");
    const auto ref = read_reference_table(in);
    ParameterBlock block;
    block.table.entries = classify_cell(0, 0, Branch::Plus, CellRoots{{{5.01, 0.0, 1}}, {}});
    const auto e10 = classify_cell(1, 0, Branch::Plus, CellRoots{{{7.0, 0.0, 1}}, {}});
    block.table.entries.insert(block.table.entries.end(), e10.begin(), e10.end());
    const auto out = compare_with_reference(ref, {block}, 0.02);
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0].verdict, Verdict::BothAbsent);
    EXPECT_EQ(out[1].verdict, Verdict::Missing);
    EXPECT_EQ(out[2].verdict, Verdict::Match);
    EXPECT_EQ(out[3].verdict, Verdict::Extra);
    EXPECT_THROW(compare_with_reference(ref, {}, 0.02), std::invalid_argument);
}

TEST(ReportTest, MalformedReference) {
    std::istringstream bad_header("d,l,line,E00\n");
    EXPECT_THROW(read_reference_table(bad_header), std::invalid_argument);
    std::istringstream short_row("delta,lambda_b,line,E00\n0,0,lower\n");
    EXPECT_THROW(read_reference_table(short_row), std::invalid_argument);
}

}  // namespace
}  // namespace kgedp
