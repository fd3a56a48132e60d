#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "sar_bruteforce.hpp"
#include "sdra/cli.hpp"
#include "sdra/design.hpp"
#include "sdra/fields.hpp"
#include "sdra/modal.hpp"
#include "sdra/sar.hpp"
#include "sdra/text.hpp"

using namespace sdra;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) cells.push_back(cell);
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(split(line, ','));
  return rows;
}

// Every CSV cell equals the JSON field of the same name after parsing.
void expect_same_rows(const std::string& csv, const std::string& json) {
  const auto rows = csv_rows(csv);
  ASSERT_FALSE(rows.empty());
  const auto doc = nlohmann::json::parse(json);
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), rows.size() - 1);
  const auto& header = rows.front();
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& row = rows[i + 1];
    ASSERT_EQ(row.size(), header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto& value = doc[i].at(header[c]);
      if (value.is_null()) {
        EXPECT_TRUE(row[c].empty()) << header[c];
      } else if (value.is_string()) {
        EXPECT_EQ(row[c], value.get<std::string>()) << header[c];
      } else {
        EXPECT_EQ(std::stod(row[c]), value.get<double>()) << header[c] << " row " << i;
      }
    }
  }
}

std::vector<std::string> with(std::vector<std::string> args, const std::vector<std::string>& more) {
  args.insert(args.end(), more.begin(), more.end());
  return args;
}

const SectorGeometry kReference = SectorGeometry::quarter(12e-3, 2.54e-3, 12.85);

}  // namespace

TEST(Cli, FreqAnchorPrintsLibraryFrequency) {
  const auto r = invoke(
      {"freq", "--radius-mm", "12", "--eps-r", "12.85", "--mode", "TE:v=2,n=1,p=0"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  const auto& header = rows[0];
  const auto col = std::find(header.begin(), header.end(), "f_hz") - header.begin();
  const double f = resonant_frequency(kReference, ModeSpec::with_order(ModeFamily::TE, 2.0, 1, 0));
  EXPECT_EQ(rows[1][col], format_number(f));
  EXPECT_NEAR(std::stod(rows[1][col]) / 6.12e9, 1.0, 5e-3);
}

TEST(Cli, PowerBudget) {
  const auto r = invoke({"power", "--pin-w", "1", "--sar", "53.3", "--standard", "ieee", "--mass",
                         "10g", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const double p = doc.at(0).at("p_max_w").get<double>();
  EXPECT_EQ(p, max_allowed_power(1.0, 53.3, limit_lookup(SarStandard::ieee_c95_1,
                                                          AveragingMass::ten_grams,
                                                          LimitKind::average)));
  EXPECT_NEAR(p / 0.0375, 1.0, 2e-3);
}

TEST(Cli, ModesBelowCutoffIsEmptyTable) {
  const auto r = invoke({"modes", "--radius-mm", "12", "--fmax-ghz", "0.001"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "family,m,v,n,p,f_hz,f_ghz\n");
  const auto j = invoke({"modes", "--radius-mm", "12", "--fmax-ghz", "0.001", "--format", "json"});
  EXPECT_EQ(j.status, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out).size(), 0u);
}

TEST(Cli, ModesMatchEnumeration) {
  const auto r = invoke({"modes", "--radius-mm", "12", "--fmax-ghz", "10", "--extra-v", "1"});
  ASSERT_EQ(r.status, 0) << r.err;
  ModeSearch search{10e9, 3, 3, 1, {1.0}};
  const auto expected = enumerate_modes(kReference, search);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), expected.size() + 1);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(rows[i + 1][5], format_number(expected[i].frequency));
  }
}

TEST(Cli, FieldCsvIsByteIdenticalToExport) {
  const auto mode = ModeSpec::from_index(ModeFamily::TE, 1, 1, 1);
  const auto grid = sample_grid(kReference, mode, 9, 7, 5);
  const std::vector<std::string> base = {"field", "--radius-mm", "12", "--mode", "TE:m=1,n=1,p=1",
                                         "--nr", "9", "--nphi", "7", "--nz", "5"};
  const auto csv = invoke(base);
  ASSERT_EQ(csv.status, 0) << csv.err;
  EXPECT_EQ(csv.out, export_grid(grid, GridFormat::csv));
  const auto json = invoke(with(base, {"--format", "json"}));
  ASSERT_EQ(json.status, 0) << json.err;
  EXPECT_EQ(json.out, export_grid(grid, GridFormat::json));

  // Same rows in both encodings.
  const auto doc = nlohmann::json::parse(json.out);
  const auto rows = csv_rows(csv.out);
  ASSERT_EQ(doc.at("samples").size(), rows.size() - 1);
  for (std::size_t i = 0; i < doc.at("samples").size(); ++i) {
    const auto& sample = doc.at("samples")[i];
    for (std::size_t c = 0; c < sample.size(); ++c) {
      EXPECT_EQ(std::stod(rows[i + 1][c]), sample[c].get<double>());
    }
  }
}

TEST(Cli, FieldSvgIsWellFormedDocument) {
  const auto r = invoke({"field", "--radius-mm", "12", "--mode", "TE:m=1,n=1", "--nr", "6",
                         "--nphi", "5", "--format", "svg"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
  EXPECT_NE(r.out.find("</svg>"), std::string::npos);
}

TEST(Cli, SweepCsvIsByteIdenticalAndJsonAgrees) {
  const std::vector<std::string> base = {"sweep", "--radius-mm", "12", "--param", "radius",
                                         "--start", "8", "--stop", "16", "--steps", "17",
                                         "--mode", "TE:v=2,n=1,p=0", "--mode", "EH:v=1,n=1,p=0"};
  const auto csv = invoke(base);
  ASSERT_EQ(csv.status, 0) << csv.err;
  const SweepSpec spec{SweepParameter::radius, 8e-3, 16e-3, 17,
                       {ModeSpec::with_order(ModeFamily::TE, 2.0, 1, 0),
                        ModeSpec::with_order(ModeFamily::EH, 1.0, 1, 0)}};
  EXPECT_EQ(csv.out, sweep_to_csv(sweep(kReference, spec)));
  const auto json = invoke(with(base, {"--format", "json"}));
  ASSERT_EQ(json.status, 0) << json.err;
  expect_same_rows(csv.out, json.out);
  const auto plot = invoke(with(base, {"--format", "svg"}));
  ASSERT_EQ(plot.status, 0) << plot.err;
  EXPECT_EQ(plot.out.rfind("<svg", 0), 0u);
}

TEST(Cli, CsvAndJsonAgreeForTables) {
  const std::vector<std::vector<std::string>> cases = {
      {"freq", "--radius-mm", "12", "--mode", "TE:m=1,n=1", "--mode", "EH:v=1,n=1,p=1"},
      {"modes", "--radius-mm", "12", "--fmax-ghz", "12", "--extra-v", "1"},
      {"oracle", "--radius-mm", "1000", "--nr", "24", "--nphi", "24", "--count", "3"},
      {"power", "--pin-w", "0.5", "--sar", "12", "--standard", "ecc", "--mass", "10g"},
      {"design", "--target-ghz", "5", "--mode", "TE:v=2,n=1", "--height-mm", "2.54"},
  };
  for (const auto& args : cases) {
    const auto csv = invoke(args);
    const auto json = invoke(with(args, {"--format", "json"}));
    ASSERT_EQ(csv.status, 0) << args[0] << ": " << csv.err;
    ASSERT_EQ(json.status, 0) << args[0] << ": " << json.err;
    SCOPED_TRACE(args[0]);
    expect_same_rows(csv.out, json.out);
  }
}

TEST(Cli, DesignMatchesSolveRadius) {
  const auto r = invoke({"design", "--target-ghz", "6.12", "--mode", "TE:v=2,n=1,p=0",
                         "--bracket-mm", "5,30", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const double a = solve_radius(6.12e9, SectorGeometry::quarter(5e-3, 2.54e-3, 12.85),
                                ModeSpec::with_order(ModeFamily::TE, 2.0, 1, 0), 5e-3, 30e-3);
  EXPECT_EQ(nlohmann::json::parse(r.out).at(0).at("radius_m").get<double>(), a);
}

TEST(Cli, SarMatchesLibraryAndFormatsAgree) {
  const auto dir = fs::temp_directory_path() / "sdra_cli_sar";
  fs::create_directories(dir);
  const auto grid = testref::dyadic_hotspot_grid(8);
  const auto path = dir / "tissue.json";
  write_text_file(path, tissue_grid_to_json(grid).dump());
  const std::vector<std::string> base = {"sar", "--grid", path.string(), "--mass", "10g",
                                         "--standard", "ieee"};
  const auto csv = invoke(base);
  const auto json = invoke(with(base, {"--format", "json"}));
  ASSERT_EQ(csv.status, 0) << csv.err;
  ASSERT_EQ(json.status, 0) << json.err;
  expect_same_rows(csv.out, json.out);
  const auto expected = averaged_sar(grid, averaging_mass_kg(AveragingMass::ten_grams));
  const auto row = nlohmann::json::parse(json.out).at(0);
  EXPECT_EQ(row.at("peak_avg_w_per_kg").get<double>(), expected.peak_avg);
  EXPECT_EQ(row.at("index").get<std::size_t>(), expected.center_index);
  fs::remove_all(dir);
}

TEST(Cli, OutputFileReceivesDocument) {
  const auto path = fs::temp_directory_path() / "sdra_cli_out.csv";
  const auto r = invoke({"freq", "--radius-mm", "12", "--mode", "TE:m=1,n=1", "-o", path.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto direct = invoke({"freq", "--radius-mm", "12", "--mode", "TE:m=1,n=1"});
  EXPECT_EQ(read_text_file(path), direct.out);
  fs::remove(path);
}

TEST(Cli, GeometryFileMatchesInlineFlags) {
  const auto path = fs::temp_directory_path() / "sdra_cli_geom.json";
  write_text_file(path,
                  R"({"radius_mm": 12, "height_mm": 2.54, "sector_deg": 90, "eps_r": 12.85})");
  const auto from_file = invoke({"freq", "--geometry", path.string(), "--mode", "TE:m=1,n=1"});
  const auto inline_flags = invoke({"freq", "--radius-mm", "12", "--mode", "TE:m=1,n=1"});
  ASSERT_EQ(from_file.status, 0) << from_file.err;
  EXPECT_EQ(from_file.out, inline_flags.out);
  fs::remove(path);
}

TEST(Cli, UsageErrorsExitTwoAndNameTheFlag) {
  struct Case {
    std::vector<std::string> args;
    std::string flag;
  };
  const std::vector<Case> cases = {
      {{}, "subcommand"},
      {{"bogus"}, "bogus"},
      {{"freq", "--mode", "TE:m=1,n=1"}, "--radius-mm"},
      {{"freq", "--radius-mm", "12"}, "--mode"},
      {{"freq", "--radius-mm", "12", "--mode", "QQ:m=1,n=1"}, "--mode"},
      {{"freq", "--radius-mm", "abc", "--mode", "TE:m=1,n=1"}, "--radius-mm"},
      {{"freq", "--radius-mm", "12", "--geometry", "g.json", "--mode", "TE:m=1,n=1"}, "--geometry"},
      {{"freq", "--radius-mm", "12", "--mode", "TE:m=1,n=1", "--format", "svg"}, "--format"},
      {{"power", "--pin-w", "1", "--sar", "2", "--standard", "fcc"}, "--standard"},
      {{"sar", "--mass", "10g"}, "--grid"},
  };
  for (const auto& c : cases) {
    const auto r = invoke(c.args);
    EXPECT_EQ(r.status, 2) << r.err;
    EXPECT_NE(r.err.find(c.flag), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Cli, ComputationErrorsExitOneWithModuleMessage) {
  const auto bad_radius = invoke({"freq", "--radius-mm", "-1", "--mode", "TE:m=1,n=1"});
  EXPECT_EQ(bad_radius.status, 1);
  try {
    SectorGeometry(-1e-3, 2.54e-3, std::numbers::pi / 2, 12.85);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(bad_radius.err.find(e.what()), std::string::npos) << bad_radius.err;
  }
  const auto unreachable = invoke({"design", "--target-ghz", "600", "--mode", "TE:v=2,n=1"});
  EXPECT_EQ(unreachable.status, 1);
  EXPECT_NE(unreachable.err.find("straddle"), std::string::npos);
  EXPECT_TRUE(unreachable.out.empty());
  const auto missing = invoke({"sar", "--grid", "/nonexistent/tissue.json", "--mass", "1g"});
  EXPECT_EQ(missing.status, 1);
  EXPECT_NE(missing.err.find("/nonexistent/tissue.json"), std::string::npos);
}

TEST(Cli, HelpGoesToOutputStream) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("freq"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}
