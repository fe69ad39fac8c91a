// twolane: two-lane optimal-velocity ring simulator and stability analysis.
//
//   twolane simulate      --config uncoupled.ini --out out/uncoupled
//   twolane stability-map --config neutral_curves.ini --out out/neutral_curves
//   twolane soliton       --config uncoupled.ini --out out/kink
//   twolane validate      --config uncoupled.ini --out out/check
//   twolane plot          --csv out/uncoupled/lane1_profile_t950.csv --out lane1.svg

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "twolane/commands.hpp"
#include "twolane/config.hpp"
#include "twolane/output.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::string> mode;
  std::optional<std::string> scheme;
  std::optional<double> dt;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory (defaults to [output] dir)");
  cmd->add_option("--mode", o.mode, "Adjacent-leader resolution")
      ->check(CLI::IsMember({"nearest", "paired"}));
  cmd->add_option("--scheme", o.scheme, "Integration scheme")->check(CLI::IsMember({"euler", "rk4"}));
  cmd->add_option("--dt", o.dt, "Time step (s)")->check(CLI::PositiveNumber);
}

twolane::RunManifest load(const Overrides& o) {
  auto m = twolane::load_config(o.config);
  if (o.mode) m.sim.mode = twolane::parse_neighbor_mode(*o.mode);
  if (o.scheme) m.sim.scheme = twolane::parse_scheme(*o.scheme);
  if (o.dt) m.sim.dt = *o.dt;
  twolane::validate(m.sim);
  if (!o.out.empty()) m.output_dir = o.out;
  return m;
}

void list_files(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-lane car-following model with lateral coupling"};
  app.require_subcommand(1);

  Overrides sim_o, map_o, sol_o, val_o;
  auto* simulate = app.add_subcommand("simulate", "Run the two-lane ring simulation");
  add_common(simulate, sim_o);
  auto* map = app.add_subcommand("stability-map", "Neutral stability and coexisting curves");
  add_common(map, map_o);
  auto* soliton = app.add_subcommand("soliton", "Analytic kink-antikink headway profile");
  add_common(soliton, sol_o);
  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  add_common(validate, val_o);

  std::string plot_csv, plot_out;
  auto* plot = app.add_subcommand("plot", "Render a profile CSV as SVG");
  plot->add_option("--csv", plot_csv, "Profile CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "SVG output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const auto m = load(sim_o);
      const auto r = twolane::cmd_simulate(m, m.output_dir);
      list_files(r.files);
      std::cout << r.summary;
      return r.abort_diagnostic ? 3 : 0;
    }
    if (*map) {
      const auto m = load(map_o);
      list_files(twolane::cmd_stability_map(m, m.output_dir).files);
      return 0;
    }
    if (*soliton) {
      const auto m = load(sol_o);
      list_files(twolane::cmd_soliton(m, m.output_dir).files);
      return 0;
    }
    if (*validate) {
      const auto m = load(val_o);
      const auto report = twolane::cmd_validate(m);
      const auto text = report.to_text();
      std::filesystem::create_directories(m.output_dir);
      const auto path = std::filesystem::path(m.output_dir) / "validate_report.txt";
      twolane::write_file_atomic(path, text);
      std::cout << text << "wrote " << path.string() << "\n";
      return report.all_passed() ? 0 : 1;
    }
    if (*plot) {
      twolane::render_profile_plot(plot_csv, plot_out);
      std::cout << "wrote " << plot_out << "\n";
      return 0;
    }
  } catch (const twolane::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
