#pragma once

#include <map>
#include <string>
#include <vector>

#include "wbkt/fullkt.hpp"
#include "wbkt/semikt.hpp"

namespace wbkt {

/// Flat `key = value` configuration with `#` comments.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

struct ConfigKeyDoc {
  const char* key;
  const char* meaning;
};

// Every recognised key with a one-line description, in display order.
const std::vector<ConfigKeyDoc>& config_key_docs();

enum class SchemeKind { fully_discrete, semi_discrete };

struct ExperimentConfig {
  std::string experiment = "isothermal";
  SchemeKind scheme = SchemeKind::fully_discrete;
  std::string model = "euler";  // euler | burgers | advection
  int nx = 50;
  int ny = 50;
  Bounds bounds{};
  double t_end = 0.25;
  double cfl = 0.45;
  SchemeConfig scheme_cfg{};
  double eta = 1e-2;
  BoundarySpec bc{};
  std::string initial = "isothermal";
  std::string stationary = "isothermal";
  std::string potential = "linear";  // linear | moving | none
  double rho0 = 1.21;
  double p0 = 1.0;
  double phi_x = 1.0;
  double phi_y = 1.0;
  double g = 1.0;
  double gamma = 1.4;
  MovingAxis moving_axis = MovingAxis::xy;
  Integrator integrator = Integrator::ssp_rk2;
  DtRule dt_rule = DtRule::wave_speed;
  double adv_a = 1.0;
  double adv_b = 1.0;
  std::string output_dir;
  std::vector<double> snapshot_times;
  int max_steps = 0;
};

// Experiment presets, then the keys in `cfg` on top.  Throws ConfigError.
ExperimentConfig make_experiment_config(const Config& cfg);

struct BuiltinExperiment {
  std::string name;
  std::string description;
};
const std::vector<BuiltinExperiment>& builtin_experiments();

// cfl min(dx / max(a+, -a-), dy / max(b+, -b-)).
double compute_dt(const SpeedField& speeds, const Grid2D& grid, double cfl);

// Block means of a finer field onto an nx x ny grid with the same bounds.
// Throws GridMismatch unless both ratios are integers.
StateField restrict_block_mean(const StateField& fine, int nx, int ny);

// sum |u - u_ref| dx dy over interior cells of `field`'s grid.
double l1_error(const StateField& field, const StateField& reference, int component);

// rate_i = log2(e_{i-1} / e_i).  Throws NonPositiveError on an entry <= 0.
std::vector<double> convergence_rates(const std::vector<double>& errors);

StateField pressure_field(const StateField& full, double gamma);

struct Snapshot {
  double t = 0.0;
  StateField state;  // full conserved state q
};

struct RunReport {
  std::string experiment;
  std::vector<Snapshot> snapshots;
  std::vector<std::string> files;
  StateField final_deviation;
  StateField stationary_cells;
  double wall_seconds = 0.0;
  int steps = 0;
  double max_dt = 0.0;
  double min_dt = 0.0;
};

RunReport run_experiment(const ExperimentConfig& cfg);

/// CSV layout: `# nx ny x_min x_max y_min y_max t` with values, a column
/// header, then one row per interior cell, k outer, j inner, 17 significant digits.
void write_snapshot(const StateField& full, double t, double gamma, const std::string& path);

struct SnapshotData {
  int nx = 0;
  int ny = 0;
  Bounds bounds{};
  double t = 0.0;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

SnapshotData read_snapshot(const std::string& path);

struct ConvergenceRow {
  int n = 0;
  double err_rho = 0.0, rate_rho = 0.0;
  double err_p = 0.0, rate_p = 0.0;
  double err_E = 0.0, rate_E = 0.0;
};

// Runs every level and the reference (largest level unless reference_n > 0).
std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& base, const std::vector<int>& levels,
                                              int reference_n = 0);

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows);
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& path);

}  // namespace wbkt
