// etcons: command-line front end for scenario checking, simulation and sweeps.
//
//   etcons check   <config>
//   etcons run     <config> [--mode M] [--seed S] [--out DIR] [--t-final T] [--step H] [--long-csv]
//   etcons sweep   <config> --c0 v1,v2,... [--out DIR]
//   etcons compare <config> [--out DIR]
//   etcons optimum <config>
//
// <config> is a scenario file or the name of a bundled scenario (four_agent).
// Exit codes: 0 ok, 1 check failure, 2 config error, 3 runtime abort.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "etcons/etcons.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void print_report(const etcons::Scenario& sc) {
  using etcons::format_double;
  const auto& cfg = sc.config;
  const auto& rep = sc.report;
  std::cout << "scenario " << cfg.name << " (" << cfg.size() << " agents, mode " << to_string(cfg.mode) << ")\n";
  std::cout << "  graph: strongly connected=" << (rep.spectrum.strongly_connected ? "yes" : "no")
            << ", weight-balanced=" << (rep.spectrum.weight_balanced ? "yes" : "no")
            << ", lambda2=" << format_double(rep.spectrum.lambda2) << ", lambdaN=" << format_double(rep.spectrum.lambdaN)
            << '\n';
  std::cout << "  costs: h_lo=" << format_double(rep.h_lo) << ", h_hi=" << format_double(rep.h_hi) << " on ["
            << format_double(cfg.costs.working_interval().lo) << ", " << format_double(cfg.costs.working_interval().hi)
            << "]\n";
  for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
    const auto& c = cfg.agents[i].controller;
    std::cout << "  agent " << i + 1 << ": K2=" << format_double(c.K2) << ", U=" << format_double(c.U)
              << ", lambda_P=" << format_double(c.lambda_P) << ", minimal="
              << (rep.agents[i].controllable && rep.agents[i].observable ? "yes" : "no") << '\n';
  }
  if (rep.bounds)
    std::cout << "  generator: alpha=" << format_double(cfg.generator.alpha) << " (bound "
              << format_double(rep.bounds->alpha_min) << "), beta=" << format_double(cfg.generator.beta) << " (bound "
              << format_double(rep.bounds->beta_min) << "), eta=" << format_double(cfg.generator.eta) << '\n';
  for (const auto& c : rep.conditions.conditions)
    std::cout << "  " << (c.holds ? "ok  " : "FAIL") << ' ' << c.name << ": " << c.detail << '\n';
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(',', start);
    const auto item = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!item.empty()) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size()) throw etcons::ConfigError("--c0: '" + item + "' is not a number");
      out.push_back(v);
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-triggered optimal output consensus simulator"};
  app.require_subcommand(1);

  std::string config;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_final;
  std::optional<double> step;
  std::string out_dir;
  bool long_csv = false;
  std::string c0_values;

  auto* check = app.add_subcommand("check", "Load and validate a scenario, print its assumption report");
  check->add_option("config", config, "Scenario file or bundled scenario name")->required();

  auto* run = app.add_subcommand("run", "Simulate a scenario and write trace.csv, events.csv and summary.txt");
  run->add_option("config", config, "Scenario file or bundled scenario name")->required();
  run->add_option("--mode", mode, "full | control_only | generator_only | continuous");
  run->add_option("--seed", seed, "Seed for random initial conditions");
  run->add_option("--out", out_dir, "Output directory (default out/<scenario>)");
  run->add_option("--t-final", t_final, "Simulation horizon");
  run->add_option("--step", step, "Integration step");
  run->add_flag("--long-csv", long_csv, "Also write a long-format trace for plotting");

  auto* sweep = app.add_subcommand("sweep", "Run once per c0 = c~0 value and write sweep.csv");
  sweep->add_option("config", config, "Scenario file or bundled scenario name")->required();
  sweep->add_option("--c0", c0_values, "Comma-separated ascending values")->required();
  sweep->add_option("--out", out_dir, "Output directory (default out/<scenario>-sweep)");

  auto* compare = app.add_subcommand("compare", "Run the scenario in all four modes and write modes.csv");
  compare->add_option("config", config, "Scenario file or bundled scenario name")->required();
  compare->add_option("--out", out_dir, "Output directory (default out/<scenario>-modes)");

  auto* optimum = app.add_subcommand("optimum", "Print the minimiser of the global cost");
  optimum->add_option("config", config, "Scenario file or bundled scenario name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    auto sc = etcons::load_config(config);

    if (*check) {
      print_report(sc);
      return kExitOk;
    }

    if (*optimum) {
      const double y = etcons::oracle_optimum(sc.config.costs);
      std::printf("%.17g\n", y);
      return kExitOk;
    }

    if (*run) {
      etcons::RunOverrides o;
      if (!mode.empty()) o.mode = etcons::run_mode_from_string(mode);
      o.seed = seed;
      o.t_final = t_final;
      o.step = step;
      etcons::apply_overrides(sc, o);
      for (const auto& w : sc.report.warnings) std::cerr << "warning: " << w << '\n';
      const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path("out") / sc.config.name : std::filesystem::path(out_dir);
      const auto res = etcons::run_scenario(sc, dir, {long_csv});
      std::cout << "y* = " << etcons::format_double(res.summary.y_star) << '\n'
                << "tail radius (last " << etcons::format_double(res.summary.tail_window)
                << ") = " << etcons::format_double(res.summary.tail_radius) << '\n';
      for (std::size_t i = 0; i < res.summary.agents.size(); ++i) {
        const auto& a = res.summary.agents[i];
        std::cout << "agent " << i + 1 << ": control events " << a.control_events << ", comm events " << a.comm_events
                  << '\n';
      }
      for (const auto& c : res.checks)
        std::cout << (c.passed ? "PASS " : "FAIL ") << to_string(c.check.type) << " measured "
                  << etcons::format_double(c.measured) << '\n';
      std::cout << "wrote " << dir.string() << '\n';
      return res.all_passed() ? kExitOk : kExitCheckFailed;
    }

    if (*sweep) {
      const auto values = parse_values(c0_values);
      if (values.empty()) {
        std::cerr << "usage error: --c0 needs at least one value\n";
        return kExitConfig;
      }
      for (const auto& w : sc.report.warnings) std::cerr << "warning: " << w << '\n';
      const std::filesystem::path dir =
          out_dir.empty() ? std::filesystem::path("out") / (sc.config.name + "-sweep") : std::filesystem::path(out_dir);
      const auto rows = etcons::run_sweep(sc, values, dir);
      etcons::write_sweep_csv(std::cout, rows);
      return kExitOk;
    }

    if (*compare) {
      const std::filesystem::path dir =
          out_dir.empty() ? std::filesystem::path("out") / (sc.config.name + "-modes") : std::filesystem::path(out_dir);
      const auto rows = etcons::run_modes(sc, dir);
      etcons::write_mode_csv(std::cout, rows);
      return kExitOk;
    }
  } catch (const etcons::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const etcons::SimulationAbort& e) {
    std::cerr << "simulation aborted: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
