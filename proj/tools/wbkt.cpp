// Command-line experiment runner.
//
// Exit codes: 0 success, 1 solver error, 2 configuration error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wbkt/errors.hpp"
#include "wbkt/harness.hpp"

namespace {

std::string key_help() {
  std::ostringstream os;
  os << "\nConfig files hold `key = value` lines; `#` starts a comment.  Keys:\n";
  for (const auto& d : wbkt::config_key_docs()) {
    char line[256];
    std::snprintf(line, sizeof line, "  %-26s %s\n", d.key, d.meaning);
    os << line;
  }
  os << "\nThe shock-tube stationary solution defaults to rho0=1.21, p0=1, phi=(1,0); these are\n"
        "an interpretation, not published values, and can be overridden.\n";
  return os.str();
}

wbkt::ExperimentConfig load_config(const std::string& path, const std::string& output_dir,
                                   const std::string& snapshot_times) {
  wbkt::Config cfg = wbkt::Config::load(path);
  if (!output_dir.empty()) cfg.set("output_dir", output_dir);
  if (!snapshot_times.empty()) cfg.set("snapshot_times", snapshot_times);
  return wbkt::make_experiment_config(cfg);
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size() || n < 1) throw std::invalid_argument(item);
      levels.push_back(n);
    } catch (const std::exception&) {
      throw wbkt::ConfigError("--levels: bad grid size '" + item + "'");
    }
  }
  return levels;
}

int cmd_run(const std::string& path, const std::string& output_dir, const std::string& snapshot_times) {
  const wbkt::ExperimentConfig cfg = load_config(path, output_dir, snapshot_times);
  const wbkt::RunReport r = wbkt::run_experiment(cfg);
  std::printf("experiment %s: %dx%d, %d steps, dt in [%.6g, %.6g], %.3f s\n", r.experiment.c_str(), cfg.nx, cfg.ny,
              r.steps, r.min_dt, r.max_dt, r.wall_seconds);
  std::printf("max |dq| at t = %.6g: %.6e\n", r.snapshots.back().t, r.final_deviation.max_abs_interior());
  for (const auto& f : r.files) std::printf("wrote %s\n", f.c_str());
  return 0;
}

int cmd_convergence(const std::string& path, const std::string& levels, int reference, const std::string& csv,
                    const std::string& output_dir) {
  const wbkt::ExperimentConfig cfg = load_config(path, "", "");
  const auto rows = wbkt::convergence_study(cfg, parse_levels(levels), reference);
  std::fputs(wbkt::format_convergence_table(rows).c_str(), stdout);
  std::string out = csv;
  if (out.empty()) {
    const std::string dir = output_dir.empty() ? cfg.output_dir : output_dir;
    if (!dir.empty()) {
      std::filesystem::create_directories(dir);
      out = (std::filesystem::path(dir) / (cfg.experiment + "_convergence.csv")).string();
    }
  }
  if (!out.empty()) {
    wbkt::write_convergence_csv(rows, out);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int cmd_list() {
  for (const auto& e : wbkt::builtin_experiments()) std::printf("%-16s %s\n", e.name.c_str(), e.description.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Well-balanced central schemes for 2D balance laws"};
  app.footer(key_help());
  app.require_subcommand(1);

  std::string run_config, output_dir, snapshot_times;
  auto* run = app.add_subcommand("run", "run one experiment from a config file");
  run->add_option("config", run_config, "config file")->required();
  run->add_option("--output-dir", output_dir, "directory for snapshot CSV files");
  run->add_option("--snapshot-times", snapshot_times, "comma-separated output times");

  std::string conv_config, levels = "40,80,160,320", csv, conv_dir;
  int reference = 0;
  auto* conv = app.add_subcommand("convergence", "L1 errors and rates over a grid sequence");
  conv->add_option("config", conv_config, "config file")->required();
  conv->add_option("--levels", levels, "comma-separated N for N x N grids; the largest is the reference")
      ->capture_default_str();
  conv->add_option("--reference", reference, "reference N if it is not among the levels");
  conv->add_option("--csv", csv, "CSV output path");
  conv->add_option("--output-dir", conv_dir, "directory for the CSV when --csv is absent");

  app.add_subcommand("list", "print the built-in experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_config, output_dir, snapshot_times);
    if (conv->parsed()) return cmd_convergence(conv_config, levels, reference, csv, conv_dir);
    return cmd_list();
  } catch (const wbkt::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const wbkt::GridMismatch& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const wbkt::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
