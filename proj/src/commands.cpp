#include "kresling/commands.hpp"

#include <cmath>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "kresling/config.hpp"
#include "kresling/errors.hpp"
#include "kresling/geometry.hpp"
#include "kresling/kinematics.hpp"
#include "kresling/materials.hpp"
#include "kresling/quasistatics.hpp"
#include "kresling/report.hpp"
#include "kresling/selfcheck.hpp"
#include "kresling/units.hpp"

#ifndef KRESLING_DATA_DIR
#define KRESLING_DATA_DIR "data"
#endif

namespace kresling {

namespace {

constexpr int kTorqueDecimals = 3;
constexpr int kVolumeDecimals = 2;

struct Options {
  std::string config;
  std::string actuator;
  std::string out;
  std::vector<std::string> grids;
  std::string pressure;
  std::string model = "exact";
  std::string quantity = "theta_u";
  std::string thetas;
  std::string data;
  std::string material;
  double k = 0.0;
  int terms = 3;
  bool residuals = false;
  bool no_meta = false;
};

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size() && std::isfinite(value)) return value;
  } catch (const std::logic_error&) {
  }
  throw ArgumentError(fmt::format("{}: '{}' is not a finite number", what, text));
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    values.push_back(parse_number(text.substr(start, end - start), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

// Each --grid flag may itself hold several comma-separated axes.
std::vector<std::string> grid_axes(const std::vector<std::string>& flags) {
  std::vector<std::string> axes;
  for (const auto& flag : flags) {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = flag.find(',', start);
      axes.push_back(flag.substr(start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return axes;
}

HeightModel parse_model(const std::string& name) {
  if (name == "exact") return HeightModel::Exact;
  if (name == "linear") return HeightModel::Linear;
  throw ArgumentError(fmt::format("--model must be 'exact' or 'linear' (got '{}')", name));
}

SweepQuantity parse_quantity(const std::string& name) {
  if (name == "theta_u") return SweepQuantity::ThetaU;
  if (name == "theta_f") return SweepQuantity::ThetaF;
  if (name == "theta_max") return SweepQuantity::ThetaMax;
  if (name == "theta_ts") return SweepQuantity::ThetaTs;
  throw ArgumentError(fmt::format(
      "--quantity must be one of theta_u, theta_f, theta_max, theta_ts (got '{}')", name));
}

class Command {
 public:
  Command(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  void emit(const CsvTable& table, const std::string& name, const std::string& note = {}) {
    std::optional<std::string> meta;
    if (!o_.no_meta) {
      meta = fmt::format("kresling {}; angles in degrees{}", name, note.empty() ? "" : "; " + note);
    }
    if (o_.out.empty()) {
      write_csv(table, out_, meta);
    } else {
      write_csv(table, std::filesystem::path(o_.out), meta);
    }
  }

  ConfigDocument config() const {
    if (o_.config.empty()) throw ArgumentError("--config is required");
    return load_config(o_.config);
  }

  void analyze() {
    const auto doc = config();
    CsvTable table{{"actuator", "modules", "type", "b_over_a", "delta0_deg", "theta_u0_deg",
                    "theta_f_deg", "theta_max_deg", "theta_ts_deg", "h0_mm", "v0_mm3",
                    "net_fold_rotation_deg"},
                   {}};
    auto row = [&](const std::string& name, const ActuatorSpec& spec) {
      if (!spec.uniform_geometry()) {
        throw ArgumentError(fmt::format("actuator '{}': analyze needs identical modules", name));
      }
      const auto& p = spec.modules().front();
      double net = 0.0;
      for (const auto& m : spec.modules()) {
        net += signed_rotation(m.handedness(), folding_rotation(m.delta0(), m.b_over_a()));
      }
      const double ts = skeleton_max_rotation(p.b_over_a(), spec.skeleton_ratio(), p.delta0());
      table.add_row({name, std::to_string(spec.size()), to_string(spec.type()),
                     fixed(p.b_over_a(), 4), fixed(p.delta0_deg(), precision::kAngle),
                     fixed(units::deg(p.rest_rotation()), precision::kAngle),
                     fixed(units::deg(folding_rotation(p.delta0(), p.b_over_a())),
                           precision::kAngle),
                     fixed(units::deg(p.max_rotation()), precision::kAngle),
                     fixed(units::deg(ts), precision::kAngle),
                     fixed(p.rest_height(), precision::kLength),
                     fixed(chamber_volume(p, p.rest_rotation()), kVolumeDecimals),
                     fixed(units::deg(net), precision::kAngle)});
    };
    if (o_.actuator.empty()) {
      for (const auto& [name, spec] : doc.actuators) row(name, spec);
    } else {
      row(o_.actuator, doc.actuator(o_.actuator));
    }
    emit(table, "analyze");
  }

  void sweep() {
    const SweepQuantity quantity = parse_quantity(o_.quantity);
    const auto axes = grid_axes(o_.grids);
    if (axes.size() != 2) {
      throw ArgumentError(fmt::format(
          "sweep needs two grid axes, delta0 (deg) then b/a (got {})", axes.size()));
    }
    std::vector<double> deltas;
    for (double d : parse_grid(axes[0])) deltas.push_back(units::rad(d));
    const auto ratios = parse_grid(axes[1]);
    const auto grid = parametric_sweep(quantity, deltas, ratios, o_.k);
    CsvTable table{{"delta0_deg", "b_over_a", o_.quantity + "_deg"}, {}};
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      for (std::size_t j = 0; j < ratios.size(); ++j) {
        table.add_row({fixed(units::deg(deltas[i]), precision::kAngle), fixed(ratios[j], 4),
                       fixed(units::deg(grid.at(i, j)), precision::kAngle)});
      }
    }
    emit(table, "sweep", o_.quantity == "theta_ts" ? fmt::format("k = {}", o_.k) : "");
  }

  std::vector<double> pressures() const {
    const auto axes = grid_axes(o_.grids);
    if (!o_.pressure.empty() && !axes.empty()) {
      throw ArgumentError("give pressures with either --pressure or --grid, not both");
    }
    if (!o_.pressure.empty()) return parse_list(o_.pressure, "--pressure");
    if (axes.size() != 1) throw ArgumentError("curve needs one pressure grid axis (kPa)");
    return parse_grid(axes[0]);
  }

  void curve() {
    const auto doc = config();
    const auto& spec = doc.actuator(o_.actuator);
    const auto p = pressures();
    const auto samples = pressure_angle_curve(spec, p);
    const double rest = spec.modules().front().rest_rotation();
    double handed = 0.0;
    for (const auto& m : spec.modules()) handed += signed_rotation(m.handedness(), 1.0);

    CsvTable table{{"pressure_kpa", "theta_u_deg", "net_rotation_deg", "volume_mm3",
                    "residual_torque_nmm", "equilibria", "solved"},
                   {}};
    for (const auto& s : samples) {
      table.add_row({fixed(s.pressure_kpa, precision::kPressure),
                     fixed(units::deg(s.theta_u), precision::kAngle),
                     fixed(units::deg(handed * (s.theta_u - rest)), precision::kAngle),
                     fixed(s.volume_mm3, kVolumeDecimals), fixed(s.torque_nmm, kTorqueDecimals),
                     std::to_string(s.root_count), s.solved ? "1" : "0"});
    }
    emit(table, "curve");
  }

  void torque() {
    const auto doc = config();
    const auto& spec = doc.actuator(o_.actuator);
    const double p = o_.pressure.empty() ? -5.0 : parse_number(o_.pressure, "--pressure");
    const auto axes = grid_axes(o_.grids);
    if (axes.size() != 1) throw ArgumentError("torque needs one operating-length grid axis (mm)");
    const auto lengths = parse_grid(axes[0]);
    CsvTable table{{"length_mm", "theta_u_deg", "torque_nmm", "rigidity_nmm2_per_deg"}, {}};
    for (const auto& s : torque_vs_operating_length(spec, p, lengths)) {
      table.add_row({fixed(s.length_mm, precision::kLength),
                     fixed(units::deg(s.theta_u), precision::kAngle),
                     fixed(s.torque_nmm, kTorqueDecimals), fixed(s.rigidity, kTorqueDecimals)});
    }
    emit(table, "torque", fmt::format("p = {} kPa", fixed(p, precision::kPressure)));
  }

  void chain() {
    const auto doc = config();
    const auto& spec = doc.actuator(o_.actuator);
    const HeightModel model = parse_model(o_.model);
    std::vector<double> magnitudes;
    if (!o_.thetas.empty() == !o_.pressure.empty()) {
      throw ArgumentError("chain needs exactly one of --thetas or --pressure");
    }
    if (!o_.thetas.empty()) {
      for (double d : parse_list(o_.thetas, "--thetas")) magnitudes.push_back(units::rad(d));
      if (magnitudes.size() == 1) magnitudes.assign(spec.size(), magnitudes.front());
    } else {
      const ModuleMechanics mechanics(spec);
      magnitudes.assign(spec.size(),
                        mechanics.equilibrium_rotation(parse_number(o_.pressure, "--pressure")));
    }
    if (magnitudes.size() != spec.size()) {
      throw ArgumentError(fmt::format("--thetas needs 1 or {} values (got {})", spec.size(),
                                      magnitudes.size()));
    }
    std::vector<double> signed_thetas;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      if (magnitudes[i] < 0.0) throw ArgumentError("--thetas are magnitudes and must be >= 0");
      signed_thetas.push_back(signed_rotation(spec.modules()[i].handedness(), magnitudes[i]));
    }
    for (const auto& w : chain_pose(spec, signed_thetas, model).warnings) {
      err_ << "warning: " << w << '\n';
    }
    CsvTable table{{"edge", "x_mm", "y_mm", "z_mm", "rotation_deg"}, {}};
    const auto edges = chain_edge_poses(spec, signed_thetas, model);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto t = edges[i].translation();
      table.add_row({std::to_string(i), fixed(t.x(), precision::kLength),
                     fixed(t.y(), precision::kLength), fixed(t.z(), precision::kLength),
                     fixed(units::deg(edges[i].rotation_angle()), precision::kAngle)});
    }
    emit(table, "chain", fmt::format("height model {}", o_.model));
  }

  void fit_material() {
    std::filesystem::path path;
    if (!o_.data.empty() == !o_.material.empty()) {
      throw ArgumentError("fit-material needs exactly one of --data or --material");
    }
    path = o_.data.empty() ? config().material(o_.material) : std::filesystem::path(o_.data);
    const auto curve = read_stress_strain(path);
    const auto fit = fit_yeoh(curve, o_.terms);
    const std::string note = "Yeoh constants in MPa (assumed unit)";
    auto sci = [](double x) { return fmt::format("{:.9e}", x); };
    if (o_.residuals) {
      CsvTable table{{"lambda", "stress_mpa", "model_mpa", "residual_mpa"}, {}};
      for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& s = curve.samples()[i];
        table.add_row({fixed(s.stretch, 4), sci(s.stress_mpa),
                       sci(s.stress_mpa + fit.residuals[i]), sci(fit.residuals[i])});
      }
      emit(table, "fit-material", note);
      return;
    }
    CsvTable table{{"c10_mpa", "c20_mpa", "c30_mpa", "terms", "samples", "residual_norm_mpa"}, {}};
    table.add_row({sci(fit.coeffs.c10), sci(fit.coeffs.c20), sci(fit.coeffs.c30),
                   std::to_string(fit.terms), std::to_string(curve.size()),
                   sci(fit.residual_norm)});
    emit(table, "fit-material", note);
  }

  void compare() {
    const std::filesystem::path path =
        o_.data.empty() ? std::filesystem::path(KRESLING_DATA_DIR) / "table2.csv"
                       : std::filesystem::path(o_.data);
    emit(comparison_table(read_comparison(path)), "compare",
         "e_r_deg recomputed as rotation/aspect ratio");
  }

  int check() {
    int failures = 0;
    for (const auto& r : run_selfcheck()) {
      out_ << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
      if (!r.passed) ++failures;
    }
    out_ << fmt::format("{} check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? first : spec.find(':', first + 1);
  if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos) {
    throw ArgumentError(fmt::format("grid '{}' must have the form start:stop:count", spec));
  }
  const double start = parse_number(spec.substr(0, first), "grid start");
  const double stop = parse_number(spec.substr(first + 1, second - first - 1), "grid stop");
  const double count_value = parse_number(spec.substr(second + 1), "grid count");
  if (!(count_value >= 1.0) || count_value != std::floor(count_value)) {
    throw ArgumentError(fmt::format("grid count must be a positive integer (got '{}')",
                                    spec.substr(second + 1)));
  }
  const auto count = static_cast<std::size_t>(count_value);
  if (count == 1 && start != stop) {
    throw ArgumentError(fmt::format("grid '{}': a single point needs start = stop", spec));
  }
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = count == 1 ? start
                           : start + (stop - start) * static_cast<double>(i) /
                                         static_cast<double>(count - 1);
  }
  return values;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Kresling twisting-actuator modeling toolkit", "kresling"};
  app.require_subcommand(1);

  auto common = [&o](CLI::App* sub, bool needs_config) {
    auto* config = sub->add_option("--config", o.config, "actuator config file (JSON)");
    if (needs_config) config->required();
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_flag("--no-meta", o.no_meta, "omit the leading '#' metadata line");
  };

  auto* analyze = app.add_subcommand("analyze", "single-module kinematics summary per actuator");
  common(analyze, true);
  analyze->add_option("--actuator", o.actuator, "actuator name (default: all)");

  auto* sweep = app.add_subcommand("sweep", "rotation limits over a (delta0, b/a) grid");
  common(sweep, false);
  sweep->add_option("--grid", o.grids, "start:stop:count; delta0 (deg) then b/a")->required();
  sweep->add_option("--quantity", o.quantity, "theta_u | theta_f | theta_max | theta_ts");
  sweep->add_option("--k", o.k, "skeleton thickness ratio for theta_ts");

  auto* curve = app.add_subcommand("curve", "equilibrium pressure-angle curve");
  common(curve, true);
  curve->add_option("--actuator", o.actuator, "actuator name");
  curve->add_option("--grid", o.grids, "pressure grid start:stop:count (kPa)");
  curve->add_option("--pressure", o.pressure, "comma-separated pressures (kPa)");

  auto* torque = app.add_subcommand("torque", "torque and rigidity over operating length");
  common(torque, true);
  torque->add_option("--actuator", o.actuator, "actuator name");
  torque->add_option("--grid", o.grids, "length grid start:stop:count (mm)")->required();
  torque->add_option("--pressure", o.pressure, "chamber pressure, kPa (default -5)");

  auto* chain = app.add_subcommand("chain", "edge poses of a module stack");
  common(chain, true);
  chain->add_option("--actuator", o.actuator, "actuator name");
  chain->add_option("--thetas", o.thetas, "module rotation magnitudes, deg (one or per module)");
  chain->add_option("--pressure", o.pressure, "shared pressure, kPa");
  chain->add_option("--model", o.model, "height model: exact | linear");

  auto* fit = app.add_subcommand("fit-material", "Yeoh fit of a uniaxial stress-strain curve");
  common(fit, false);
  fit->add_option("--data", o.data, "curve file with header lambda,stress_mpa");
  fit->add_option("--material", o.material, "material name from --config");
  fit->add_option("--terms", o.terms, "2 or 3");
  fit->add_flag("--residuals", o.residuals, "write per-sample residuals instead of constants");

  auto* compare = app.add_subcommand("compare", "rotation-ratio comparison table");
  common(compare, false);
  compare->add_option("--data", o.data, "comparison table (default: bundled)");

  auto* check = app.add_subcommand("check", "run the internal invariant suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << '\n';
    return 2;
  }

  try {
    Command command(o, out, err);
    if (analyze->parsed()) command.analyze();
    if (sweep->parsed()) command.sweep();
    if (curve->parsed()) command.curve();
    if (torque->parsed()) command.torque();
    if (chain->parsed()) command.chain();
    if (fit->parsed()) command.fit_material();
    if (compare->parsed()) command.compare();
    if (check->parsed()) return command.check();
  } catch (const Error& e) {
    err << "error[" << e.kind() << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace kresling
