#include "sdra/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <map>
#include <numbers>
#include <optional>
#include <variant>

#include "sdra/design.hpp"
#include "sdra/errors.hpp"
#include "sdra/fields.hpp"
#include "sdra/modal.hpp"
#include "sdra/modal_io.hpp"
#include "sdra/oracle.hpp"
#include "sdra/sar.hpp"
#include "sdra/svg.hpp"
#include "sdra/text.hpp"

namespace sdra::cli {

namespace {

constexpr double kMm = 1e-3;
constexpr double kGHz = 1e9;
constexpr double kDeg = std::numbers::pi / 180.0;

// Bad flag values that CLI11 cannot see on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const {
    std::string text;
    for (std::size_t i = 0; i < columns.size(); ++i) text += (i ? "," : "") + columns[i];
    text += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text += ',';
        std::visit(
            [&](const auto& c) {
              using T = std::decay_t<decltype(c)>;
              if constexpr (std::is_same_v<T, long long>) text += std::to_string(c);
              else if constexpr (std::is_same_v<T, double>) text += format_number(c);
              else if constexpr (std::is_same_v<T, std::string>) text += c;
            },
            row[i]);
      }
      text += '\n';
    }
    return text;
  }

  std::string to_json() const {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::visit(
            [&](const auto& c) {
              using T = std::decay_t<decltype(c)>;
              if constexpr (std::is_same_v<T, std::monostate>) obj[columns[i]] = nullptr;
              else obj[columns[i]] = c;
            },
            row[i]);
      }
      doc.push_back(std::move(obj));
    }
    return doc.dump() + "\n";
  }
};

std::vector<Cell> mode_cells(const ModeSpec& mode, double v) {
  const auto m = mode.m();
  return {to_string(mode.family()), m ? Cell{static_cast<long long>(*m)} : Cell{}, v,
          static_cast<long long>(mode.n()), static_cast<long long>(mode.p())};
}

const std::vector<std::string> kModeColumns = {"family", "m", "v", "n", "p"};

std::vector<std::string> with_mode_columns(std::vector<std::string> tail) {
  std::vector<std::string> cols = kModeColumns;
  cols.insert(cols.end(), tail.begin(), tail.end());
  return cols;
}

ModeSpec mode_flag(const std::string& text) {
  try {
    return parse_mode(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--mode: ") + e.what());
  }
}

struct GeometryFlags {
  std::string file;
  double radius_mm = 0.0;
  double height_mm = 2.54;
  double sector_deg = 90.0;
  double eps_r = 12.85;
  CLI::Option* file_opt = nullptr;
  CLI::Option* radius_opt = nullptr;

  void attach(CLI::App* sub) {
    file_opt = sub->add_option("--geometry", file, "Geometry JSON file");
    radius_opt = sub->add_option("--radius-mm", radius_mm, "Sector radius (mm)");
    auto* h = sub->add_option("--height-mm", height_mm, "Height (mm)")->capture_default_str();
    auto* s =
        sub->add_option("--sector-deg", sector_deg, "Sector angle (deg)")->capture_default_str();
    auto* e = sub->add_option("--eps-r", eps_r, "Relative permittivity")->capture_default_str();
    for (auto* opt : {radius_opt, h, s, e}) file_opt->excludes(opt);
  }

  SectorGeometry resolve(std::optional<double> fallback_radius_mm = std::nullopt) const {
    if (file_opt->count() > 0) return load_geometry(file);
    double r = radius_mm;
    if (radius_opt->count() == 0) {
      if (!fallback_radius_mm) throw UsageError("--radius-mm or --geometry is required");
      r = *fallback_radius_mm;
    }
    return SectorGeometry(r * kMm, height_mm * kMm, sector_deg * kDeg, eps_r);
  }
};

struct Common {
  std::string format = "csv";
  std::string output;

  void attach(CLI::App* sub, bool svg) {
    std::vector<std::string> allowed = {"csv", "json"};
    if (svg) allowed.push_back("svg");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember(allowed))
        ->capture_default_str();
    sub->add_option("--output,-o", output, "Output file (default: standard output)");
  }
};

std::string table_document(const Table& table, const std::string& format) {
  return format == "json" ? table.to_json() : table.to_csv();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modal analysis of sectoral cylindrical dielectric resonators", "sdra"};
  app.require_subcommand(1, 1);

  Common common;
  std::vector<std::string> mode_texts;
  std::function<std::string()> action;

  // freq
  auto* freq = app.add_subcommand("freq", "Resonant frequency of one or more modes");
  GeometryFlags freq_geo;
  freq_geo.attach(freq);
  common.attach(freq, false);
  freq->add_option("--mode", mode_texts, "Mode, e.g. TE:v=2,n=1,p=0")->required();
  freq->callback([&] {
    action = [&] {
      const auto geom = freq_geo.resolve();
      std::vector<ModeSpec> modes;
      for (const auto& t : mode_texts) modes.push_back(mode_flag(t));
      Table table{with_mode_columns({"k_r", "k_phi", "k_z", "k", "f_hz", "f_ghz"}), {}};
      for (const auto& mode : modes) {
        const auto w = wavenumbers(geom, mode);
        const double f = resonant_frequency(geom, mode);
        auto row = mode_cells(mode, mode.order(geom));
        row.insert(row.end(), {w.k_r, w.k_phi, w.k_z, w.k, f, f / kGHz});
        table.rows.push_back(std::move(row));
      }
      return table_document(table, common.format);
    };
  });

  // modes
  ModeSearch search{0.0, 3, 3, 1, {}};
  double fmax_ghz = 0.0;
  std::vector<double> extra_v;
  std::string derived_family = "TE", explicit_family = "EH";
  auto* modes = app.add_subcommand("modes", "All modes up to a frequency ceiling");
  GeometryFlags modes_geo;
  modes_geo.attach(modes);
  common.attach(modes, false);
  modes->add_option("--fmax-ghz", fmax_ghz, "Frequency ceiling (GHz)")->required();
  modes->add_option("--m-max", search.m_max)->capture_default_str();
  modes->add_option("--n-max", search.n_max)->capture_default_str();
  modes->add_option("--p-max", search.p_max)->capture_default_str();
  modes->add_option("--extra-v", extra_v, "Additional explicit orders, e.g. 1");
  modes->add_option("--derived-family", derived_family)
      ->check(CLI::IsMember({"TE", "EH"}))
      ->capture_default_str();
  modes->add_option("--explicit-family", explicit_family)
      ->check(CLI::IsMember({"TE", "EH"}))
      ->capture_default_str();
  modes->callback([&] {
    action = [&] {
      const auto geom = modes_geo.resolve();
      search.f_max = fmax_ghz * kGHz;
      search.explicit_orders = extra_v;
      search.derived_family = parse_family(derived_family);
      search.explicit_family = parse_family(explicit_family);
      Table table{with_mode_columns({"f_hz", "f_ghz"}), {}};
      for (const auto& mf : enumerate_modes(geom, search)) {
        auto row = mode_cells(mf.mode, mf.v);
        row.insert(row.end(), {mf.frequency, mf.frequency / kGHz});
        table.rows.push_back(std::move(row));
      }
      return table_document(table, common.format);
    };
  });

  // field
  std::size_t n_r = 33, n_phi = 33, n_z = 0, plane = 0;
  std::string component = "hz";
  auto* field = app.add_subcommand("field", "Sample the field solution on a grid");
  GeometryFlags field_geo;
  field_geo.attach(field);
  common.attach(field, true);
  field->add_option("--mode", mode_texts, "Mode, e.g. TE:v=2,n=1,p=0")->required()->expected(1);
  field->add_option("--nr", n_r)->capture_default_str();
  field->add_option("--nphi", n_phi)->capture_default_str();
  field->add_option("--nz", n_z, "Nodes along z (default 1 for p = 0, else 17)");
  field->add_option("--plane", plane, "z-plane index drawn by --format svg")->capture_default_str();
  field->add_option("--component", component, "Quantity drawn by --format svg")
      ->check(CLI::IsMember({"hz", "ephi", "er", "e"}))
      ->capture_default_str();
  field->callback([&] {
    action = [&] {
      const auto geom = field_geo.resolve();
      const auto mode = mode_flag(mode_texts.front());
      const std::size_t nz = n_z > 0 ? n_z : (mode.p() == 0 ? 1 : 17);
      const auto grid = sample_grid(geom, mode, n_r, n_phi, nz);
      if (common.format == "svg") {
        static const std::map<std::string, svg::Component> kinds = {
            {"hz", svg::Component::h_z},
            {"ephi", svg::Component::e_phi},
            {"er", svg::Component::e_r},
            {"e", svg::Component::e_total}};
        return svg::field_heatmap(grid, plane, kinds.at(component));
      }
      return export_grid(grid, common.format == "json" ? GridFormat::json : GridFormat::csv);
    };
  });

  // oracle
  std::size_t fd_nr = 64, fd_nphi = 64, count = 3;
  auto* oracle = app.add_subcommand("oracle", "Finite-difference cross-check of k_r");
  GeometryFlags oracle_geo;
  oracle_geo.attach(oracle);
  common.attach(oracle, false);
  oracle->add_option("--nr", fd_nr)->capture_default_str();
  oracle->add_option("--nphi", fd_nphi)->capture_default_str();
  oracle->add_option("--count", count)->capture_default_str();
  oracle->callback([&] {
    action = [&] {
      const auto geom = oracle_geo.resolve();
      Table table{{"m", "n", "v", "analytic_k_r", "fd_k_t", "relative_error"}, {}};
      for (const auto& c : compare_modes(geom, count, fd_nr, fd_nphi)) {
        table.rows.push_back({static_cast<long long>(c.m), static_cast<long long>(c.n), c.v,
                              c.analytic_k_r, c.fd_k_t, c.relative_error});
      }
      return table_document(table, common.format);
    };
  });

  // power and sar share the limit flags
  std::string standard, mass = "10g", kind = "average";
  const auto limit_flags = [&](CLI::App* sub, bool standard_required) {
    auto* s = sub->add_option("--standard", standard, "ieee | ecc")
                  ->check(CLI::IsMember({"ieee", "ecc"}));
    if (standard_required) s->required();
    sub->add_option("--mass", mass, "Averaging mass")
        ->check(CLI::IsMember({"1g", "10g"}))
        ->capture_default_str();
    sub->add_option("--kind", kind)
        ->check(CLI::IsMember({"average", "peak"}))
        ->capture_default_str();
  };

  double p_in = 0.0, sar_value = 0.0;
  auto* power = app.add_subcommand("power", "Largest input power within a SAR limit");
  common.attach(power, false);
  power->add_option("--pin-w", p_in, "Input power of the SAR figure (W)")->required();
  power->add_option("--sar", sar_value, "Achieved SAR at --pin-w (W/kg)")->required();
  limit_flags(power, true);
  power->callback([&] {
    action = [&] {
      const auto limit = limit_lookup(parse_standard(standard), parse_mass(mass), parse_kind(kind));
      const double p_max = max_allowed_power(p_in, sar_value, limit);
      Table table{{"p_in_w", "sar_w_per_kg", "standard", "mass", "kind", "limit_w_per_kg",
                   "p_max_w"},
                  {{p_in, sar_value, to_string(limit.standard), to_string(limit.mass),
                    to_string(limit.kind), limit.value, p_max}}};
      return table_document(table, common.format);
    };
  });

  std::string grid_json, header_json, grid_csv;
  auto* sar = app.add_subcommand("sar", "Mass-averaged SAR of a voxel grid");
  common.attach(sar, false);
  auto* grid_opt = sar->add_option("--grid", grid_json, "Tissue grid JSON");
  auto* header_opt = sar->add_option("--header", header_json, "Tissue header JSON for --csv");
  auto* csv_opt = sar->add_option("--csv", grid_csv, "Tissue voxels CSV");
  grid_opt->excludes(header_opt)->excludes(csv_opt);
  header_opt->needs(csv_opt);
  csv_opt->needs(header_opt);
  limit_flags(sar, false);
  sar->callback([&] {
    action = [&] {
      if (grid_opt->count() == 0 && csv_opt->count() == 0) {
        throw UsageError("--grid or --header/--csv is required");
      }
      const auto tissue = grid_opt->count() > 0 ? load_tissue_grid(grid_json)
                                                : load_tissue_grid_csv(header_json, grid_csv);
      const double target = averaging_mass_kg(parse_mass(mass));
      const auto avg = averaged_sar(tissue, target);
      Table table{{"peak_avg_w_per_kg", "ix", "iy", "iz", "index", "half_width", "mass_kg",
                   "p_in_w"},
                  {}};
      std::vector<Cell> row = {avg.peak_avg,
                               static_cast<long long>(avg.center[0]),
                               static_cast<long long>(avg.center[1]),
                               static_cast<long long>(avg.center[2]),
                               static_cast<long long>(avg.center_index),
                               static_cast<long long>(avg.half_width),
                               target,
                               tissue.p_in()};
      if (!standard.empty()) {
        const auto limit =
            limit_lookup(parse_standard(standard), parse_mass(mass), parse_kind(kind));
        table.columns.insert(table.columns.end(), {"limit_w_per_kg", "p_max_w"});
        row.insert(row.end(), {limit.value, max_allowed_power(tissue.p_in(), avg.peak_avg, limit)});
      }
      table.rows.push_back(std::move(row));
      return table_document(table, common.format);
    };
  });

  // sweep
  std::string param;
  double start = 0.0, stop = 0.0;
  int steps = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Frequency versus one geometry parameter");
  GeometryFlags sweep_cmd_geo;
  sweep_cmd_geo.attach(sweep_cmd);
  common.attach(sweep_cmd, true);
  sweep_cmd->add_option("--param", param, "radius | height | eps_r | sector_angle")
      ->required()
      ->check(CLI::IsMember({"radius", "height", "eps_r", "sector_angle"}));
  sweep_cmd->add_option("--start", start, "First value (mm, deg or plain eps_r)")->required();
  sweep_cmd->add_option("--stop", stop, "Last value (same unit as --start)")->required();
  sweep_cmd->add_option("--steps", steps)->required();
  sweep_cmd->add_option("--mode", mode_texts, "Mode(s) to track")->required();
  sweep_cmd->callback([&] {
    action = [&] {
      const auto geom = sweep_cmd_geo.resolve();
      const auto parameter = parse_sweep_parameter(param);
      const double unit = parameter == SweepParameter::eps_r          ? 1.0
                          : parameter == SweepParameter::sector_angle ? kDeg
                                                                      : kMm;
      SweepSpec spec{parameter, start * unit, stop * unit, steps, {}};
      for (const auto& t : mode_texts) spec.modes.push_back(mode_flag(t));
      const auto rows = sweep(geom, spec);
      if (common.format == "csv") return sweep_to_csv(rows);
      if (common.format == "svg") {
        std::vector<svg::Series> series;
        for (const auto& mode : spec.modes) series.push_back({mode.label(), {}, {}});
        for (std::size_t i = 0; i < rows.size(); ++i) {
          auto& s = series[i % spec.modes.size()];
          s.x.push_back(rows[i].value / unit);
          s.y.push_back(rows[i].frequency / kGHz);
        }
        const std::string x_unit = unit == kMm ? " (mm)" : unit == kDeg ? " (deg)" : "";
        return svg::line_plot("Resonant frequency", param + x_unit, "f (GHz)", series);
      }
      nlohmann::json doc = nlohmann::json::array();
      for (const auto& r : rows) {
        doc.push_back({{"param_name", to_string(r.parameter)},
                       {"param_value", r.value},
                       {"family", to_string(r.mode.family())},
                       {"v", r.v},
                       {"n", r.mode.n()},
                       {"p", r.mode.p()},
                       {"f_hz", r.frequency}});
      }
      return doc.dump() + "\n";
    };
  });

  // design
  double target_ghz = 0.0;
  std::vector<double> bracket_mm = {1.0, 100.0};
  auto* design = app.add_subcommand("design", "Radius that puts a mode at a target frequency");
  GeometryFlags design_geo;
  design_geo.attach(design);
  common.attach(design, false);
  design->add_option("--target-ghz", target_ghz)->required();
  design->add_option("--mode", mode_texts)->required()->expected(1);
  design->add_option("--bracket-mm", bracket_mm, "Radius search interval lo,hi (mm)")
      ->expected(2)
      ->delimiter(',')
      ->capture_default_str();
  design->callback([&] {
    action = [&] {
      const auto mode = mode_flag(mode_texts.front());
      // The radius is what gets solved for, so it may be left out.
      const auto geom = design_geo.resolve(bracket_mm[0]);
      const double target = target_ghz * kGHz;
      const double a = solve_radius(target, geom, mode, bracket_mm[0] * kMm, bracket_mm[1] * kMm);
      auto row = mode_cells(mode, mode.order(geom));
      row.insert(row.end(),
                 {target, a, a / kMm, resonant_frequency(geom.with_radius(a), mode)});
      Table table{with_mode_columns({"target_hz", "radius_m", "radius_mm", "f_hz"}), {row}};
      return table_document(table, common.format);
    };
  });

  if (!args.empty() && !args.front().starts_with('-') &&
      app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "error: unknown subcommand '" << args.front() << "'\n";
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string document;
  try {
    document = action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (common.output.empty()) {
    out << document;
    return 0;
  }
  try {
    write_text_file(common.output, document);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace sdra::cli
