#include "wbkt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "wbkt/errors.hpp"

namespace wbkt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
  }
}

std::string format_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------- Config

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    if (cfg.has(key)) throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const long v = std::stol(it->second, &used);
    if (used != it->second.size() || v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw std::invalid_argument(it->second);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + it->second + "'");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return out;
  for (const auto& item : split(it->second, ',')) out.push_back(parse_double(key, item));
  return out;
}

const std::vector<ConfigKeyDoc>& config_key_docs() {
  static const std::vector<ConfigKeyDoc> docs = {
      {"experiment", "preset: isothermal, perturbation_x, perturbation_y, moving_x, moving_y, moving_xy, "
                     "shock_tube, burgers, advection"},
      {"scheme", "fully_discrete | semi_discrete"},
      {"model", "euler | burgers | advection"},
      {"nx", "interior cells in x"},
      {"ny", "interior cells in y"},
      {"x_min", "domain bounds"},
      {"x_max", "domain bounds"},
      {"y_min", "domain bounds"},
      {"y_max", "domain bounds"},
      {"t_end", "final time"},
      {"cfl", "CFL number in (0, 1)"},
      {"theta", "MC-theta limiter parameter in [1, 2]"},
      {"eps", "fully-discrete local speed floor"},
      {"semi_speed_floor", "semi-discrete fallback width when a+ == a- and the states differ (0: error)"},
      {"projection_reconstruction", "linear reconstruction on unsmooth subdomains in the projection (bool)"},
      {"eta", "pressure pulse amplitude for the perturbation experiments"},
      {"bc", "outflow | reflecting | periodic on every side"},
      {"bc_west", "override for one side"},
      {"bc_east", "override for one side"},
      {"bc_south", "override for one side"},
      {"bc_north", "override for one side"},
      {"initial", "initial data: isothermal, perturbed_isothermal_x, perturbed_isothermal_y, moving, shock_tube, hump, sine"},
      {"stationary", "stationary solution q~: isothermal, moving, none (scalar models only)"},
      {"potential", "gravity: linear (phi_x, phi_y), moving (balances the moving equilibrium), none"},
      {"rho0", "isothermal and moving density scale"},
      {"p0", "isothermal and moving pressure scale"},
      {"phi_x", "linear potential gradient, x"},
      {"phi_y", "linear potential gradient, y"},
      {"g", "moving equilibrium gravity constant"},
      {"gamma", "ratio of specific heats"},
      {"moving_axis", "x | y | xy for the moving equilibrium"},
      {"integrator", "semi-discrete time integrator: forward_euler | ssp_rk2"},
      {"dt_rule", "semi-discrete dt rule: wave_speed | max_principle (cfl <= 1/8)"},
      {"adv_a", "advection velocity, x"},
      {"adv_b", "advection velocity, y"},
      {"output_dir", "directory for snapshot CSV files (empty: no files)"},
      {"snapshot_times", "comma-separated output times (default: t_end)"},
      {"max_steps", "abort after this many steps (0: unlimited)"},
  };
  return docs;
}

const std::vector<BuiltinExperiment>& builtin_experiments() {
  static const std::vector<BuiltinExperiment> list = {
      {"isothermal", "isothermal equilibrium rho0=1.21 p0=1 phi=(1,1) as both data and q~, 50x50, t=0.25"},
      {"perturbation_x", "pressure pulse eta e^{-100(x-0.5)^2} on the x-isothermal state, 50x50, t=0.25, cfl 0.485"},
      {"perturbation_y", "pressure pulse along y, 50x50, t=0.25, cfl 0.485"},
      {"moving_x", "moving equilibrium along x as both data and q~, 60x10, t=0.25"},
      {"moving_y", "moving equilibrium along y, 10x60, t=0.25"},
      {"moving_xy", "moving equilibrium along the diagonal, 50x50, t=0.25"},
      {"shock_tube", "Sod data under gravity phi=(1,0), isothermal q~, reflecting walls, 400x10, t=0.2"},
      {"burgers", "2D Burgers, smooth periodic data, semi-discrete forward Euler at cfl 1/8"},
      {"advection", "linear advection of a periodic Gaussian hump"},
  };
  return list;
}

// ---------------------------------------------------------------- presets

namespace {

Config preset(const std::string& name) {
  Config p;
  auto set = [&](const char* k, const char* v) { p.set(k, v); };
  if (name == "isothermal") {
    set("initial", "isothermal");
    set("stationary", "isothermal");
  } else if (name == "perturbation_x" || name == "perturbation_y") {
    const bool x = name == "perturbation_x";
    set("initial", x ? "perturbed_isothermal_x" : "perturbed_isothermal_y");
    set("stationary", "isothermal");
    set("rho0", "1");
    set("p0", "1");
    set("phi_x", x ? "1" : "0");
    set("phi_y", x ? "0" : "1");
    set("cfl", "0.485");
  } else if (name == "moving_x" || name == "moving_y" || name == "moving_xy") {
    set("initial", "moving");
    set("stationary", "moving");
    set("potential", "moving");
    set("rho0", "1");
    set("p0", "1");
    set("g", "1");
    if (name == "moving_x") {
      set("moving_axis", "x");
      set("nx", "60");
      set("ny", "10");
    } else if (name == "moving_y") {
      set("moving_axis", "y");
      set("nx", "10");
      set("ny", "60");
    } else {
      set("moving_axis", "xy");
    }
  } else if (name == "shock_tube") {
    set("initial", "shock_tube");
    set("stationary", "isothermal");
    set("rho0", "1.21");
    set("p0", "1");
    set("phi_x", "1");
    set("phi_y", "0");
    set("bc", "reflecting");
    set("nx", "400");
    set("ny", "10");
    set("t_end", "0.2");
  } else if (name == "burgers") {
    set("model", "burgers");
    set("scheme", "semi_discrete");
    set("integrator", "forward_euler");
    set("dt_rule", "max_principle");
    set("cfl", "0.125");
    set("initial", "sine");
    set("stationary", "none");
    set("potential", "none");
    set("bc", "periodic");
    set("nx", "64");
    set("ny", "64");
    set("t_end", "0.1");
  } else if (name == "advection") {
    set("model", "advection");
    set("initial", "hump");
    set("stationary", "none");
    set("potential", "none");
    set("bc", "periodic");
    set("nx", "64");
    set("ny", "64");
    set("t_end", "1");
  } else {
    throw ConfigError("unknown experiment '" + name + "'");
  }
  return p;
}

const std::set<std::string>& initial_names() {
  static const std::set<std::string> s = {"isothermal", "perturbed_isothermal_x", "perturbed_isothermal_y", "moving",
                                          "shock_tube", "hump",        "sine"};
  return s;
}

}  // namespace

ExperimentConfig make_experiment_config(const Config& user) {
  std::set<std::string> known;
  for (const auto& d : config_key_docs()) known.insert(d.key);
  for (const auto& [key, value] : user.values())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

  ExperimentConfig c;
  c.experiment = user.get_string("experiment", c.experiment);
  Config cfg = preset(c.experiment);
  for (const auto& [key, value] : user.values()) cfg.set(key, value);

  const std::string scheme = cfg.get_string("scheme", "fully_discrete");
  if (scheme == "fully_discrete")
    c.scheme = SchemeKind::fully_discrete;
  else if (scheme == "semi_discrete")
    c.scheme = SchemeKind::semi_discrete;
  else
    throw ConfigError("unknown scheme '" + scheme + "'");

  c.model = cfg.get_string("model", c.model);
  if (c.model != "euler" && c.model != "burgers" && c.model != "advection")
    throw ConfigError("unknown model '" + c.model + "'");

  c.nx = cfg.get_int("nx", c.nx);
  c.ny = cfg.get_int("ny", c.ny);
  if (c.nx < 1 || c.ny < 1) throw ConfigError("nx and ny must be >= 1");
  c.bounds.x_min = cfg.get_double("x_min", c.bounds.x_min);
  c.bounds.x_max = cfg.get_double("x_max", c.bounds.x_max);
  c.bounds.y_min = cfg.get_double("y_min", c.bounds.y_min);
  c.bounds.y_max = cfg.get_double("y_max", c.bounds.y_max);
  if (!(c.bounds.x_max > c.bounds.x_min) || !(c.bounds.y_max > c.bounds.y_min))
    throw ConfigError("degenerate domain bounds");

  c.t_end = cfg.get_double("t_end", c.t_end);
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) throw ConfigError("t_end must be finite and >= 0");
  c.cfl = cfg.get_double("cfl", c.cfl);
  if (!(c.cfl > 0.0 && c.cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");

  c.scheme_cfg.theta = cfg.get_double("theta", c.scheme_cfg.theta);
  if (!(c.scheme_cfg.theta >= 1.0 && c.scheme_cfg.theta <= 2.0)) throw ConfigError("theta must lie in [1, 2]");
  c.scheme_cfg.eps = cfg.get_double("eps", c.scheme_cfg.eps);
  if (!(c.scheme_cfg.eps > 0.0)) throw ConfigError("eps must be > 0");
  c.scheme_cfg.semi_speed_floor = cfg.get_double("semi_speed_floor", c.scheme_cfg.semi_speed_floor);
  if (!(c.scheme_cfg.semi_speed_floor >= 0.0)) throw ConfigError("semi_speed_floor must be >= 0");
  c.scheme_cfg.projection_reconstruction =
      cfg.get_bool("projection_reconstruction", c.scheme_cfg.projection_reconstruction);
  c.eta = cfg.get_double("eta", c.eta);

  if (cfg.has("bc")) c.bc = BoundarySpec::all(parse_bc_kind(cfg.get_string("bc", "")));
  const std::pair<const char*, Side> sides[] = {
      {"bc_west", Side::west}, {"bc_east", Side::east}, {"bc_south", Side::south}, {"bc_north", Side::north}};
  for (const auto& [key, side] : sides)
    if (cfg.has(key)) c.bc.set(side, parse_bc_kind(cfg.get_string(key, "")));
  for (int axis = 0; axis < 2; ++axis) {
    const bool lo = c.bc.kind[2 * axis] == BcKind::periodic;
    const bool hi = c.bc.kind[2 * axis + 1] == BcKind::periodic;
    if (lo != hi) throw ConfigError("periodic boundaries must be paired");
  }

  c.initial = cfg.get_string("initial", c.initial);
  if (!initial_names().count(c.initial)) throw ConfigError("unknown initial data '" + c.initial + "'");
  c.stationary = cfg.get_string("stationary", c.stationary);
  if (c.stationary != "isothermal" && c.stationary != "moving" && c.stationary != "none")
    throw ConfigError("unknown stationary solution '" + c.stationary + "'");
  c.potential = cfg.get_string("potential", c.stationary == "moving" ? "moving" : "linear");
  if (c.potential != "linear" && c.potential != "moving" && c.potential != "none")
    throw ConfigError("unknown potential '" + c.potential + "'");

  c.rho0 = cfg.get_double("rho0", c.rho0);
  c.p0 = cfg.get_double("p0", c.p0);
  c.phi_x = cfg.get_double("phi_x", c.phi_x);
  c.phi_y = cfg.get_double("phi_y", c.phi_y);
  c.g = cfg.get_double("g", c.g);
  c.gamma = cfg.get_double("gamma", c.gamma);
  if (!(c.rho0 > 0.0) || !(c.p0 > 0.0)) throw ConfigError("rho0 and p0 must be > 0");
  if (!(c.gamma > 1.0)) throw ConfigError("gamma must be > 1");
  c.moving_axis = parse_moving_axis(cfg.get_string("moving_axis", "xy"));
  c.integrator = parse_integrator(cfg.get_string("integrator", to_string(c.integrator)));
  const std::string rule = cfg.get_string("dt_rule", "wave_speed");
  if (rule == "wave_speed")
    c.dt_rule = DtRule::wave_speed;
  else if (rule == "max_principle")
    c.dt_rule = DtRule::max_principle;
  else
    throw ConfigError("unknown dt_rule '" + rule + "'");
  if (c.dt_rule == DtRule::max_principle && c.scheme != SchemeKind::semi_discrete)
    throw ConfigError("dt_rule = max_principle applies to the semi-discrete scheme only");
  if (c.dt_rule == DtRule::max_principle && c.cfl > 0.125)
    throw ConfigError("dt_rule = max_principle needs cfl <= 1/8");
  c.adv_a = cfg.get_double("adv_a", c.adv_a);
  c.adv_b = cfg.get_double("adv_b", c.adv_b);

  const bool euler = c.model == "euler";
  const bool scalar_initial = c.initial == "hump" || c.initial == "sine";
  if (euler == scalar_initial) throw ConfigError("initial data '" + c.initial + "' does not fit model " + c.model);
  if (euler && c.stationary == "none") throw ConfigError("the Euler model needs a stationary solution");
  if (!euler && c.stationary != "none") throw ConfigError("scalar models run with stationary = none");

  c.output_dir = cfg.get_string("output_dir", "");
  c.snapshot_times = cfg.get_doubles("snapshot_times");
  for (double t : c.snapshot_times)
    if (!(t >= 0.0 && t <= c.t_end)) throw ConfigError("snapshot time " + format_g(t, 6) + " outside [0, t_end]");
  std::sort(c.snapshot_times.begin(), c.snapshot_times.end());
  c.snapshot_times.erase(std::unique(c.snapshot_times.begin(), c.snapshot_times.end()), c.snapshot_times.end());
  c.max_steps = cfg.get_int("max_steps", 0);
  if (c.max_steps < 0) throw ConfigError("max_steps must be >= 0");
  return c;
}

// ---------------------------------------------------------------- metrics

double compute_dt(const SpeedField& speeds, const Grid2D& grid, double cfl) {
  const double sx = speeds.max_x();
  const double sy = speeds.max_y();
  double dt = std::numeric_limits<double>::infinity();
  if (sx > 0.0) dt = std::fmin(dt, grid.dx() / sx);
  if (sy > 0.0) dt = std::fmin(dt, grid.dy() / sy);
  return cfl * dt;
}

StateField restrict_block_mean(const StateField& fine, int nx, int ny) {
  const Grid2D& fg = fine.grid();
  if (nx < 1 || ny < 1 || fg.nx() % nx != 0 || fg.ny() % ny != 0)
    throw GridMismatch("cannot restrict " + std::to_string(fg.nx()) + "x" + std::to_string(fg.ny()) + " to " +
                       std::to_string(nx) + "x" + std::to_string(ny));
  const int rx = fg.nx() / nx;
  const int ry = fg.ny() / ny;
  const Grid2D coarse = make_grid(nx, ny, fg.bounds(), fg.ghost());
  StateField out(coarse, fine.n_comp());
  const double inv = 1.0 / (static_cast<double>(rx) * ry);
  for (int k = 0; k < ny; ++k)
    for (int j = 0; j < nx; ++j)
      for (int c = 0; c < fine.n_comp(); ++c) {
        double sum = 0.0;
        for (int kk = 0; kk < ry; ++kk)
          for (int jj = 0; jj < rx; ++jj) sum += fine(j * rx + jj, k * ry + kk, c);
        out(j, k, c) = sum * inv;
      }
  return out;
}

double l1_error(const StateField& field, const StateField& reference, int component) {
  const Grid2D& g = field.grid();
  const StateField* ref = &reference;
  StateField restricted;
  if (reference.grid().nx() != g.nx() || reference.grid().ny() != g.ny()) {
    restricted = restrict_block_mean(reference, g.nx(), g.ny());
    ref = &restricted;
  }
  if (component < 0 || component >= field.n_comp() || component >= ref->n_comp())
    throw GridMismatch("component " + std::to_string(component) + " out of range");
  double sum = 0.0;
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) sum += std::fabs(field(j, k, component) - (*ref)(j, k, component));
  return sum * g.dx() * g.dy();
}

std::vector<double> convergence_rates(const std::vector<double>& errors) {
  for (double e : errors)
    if (!(e > 0.0)) throw NonPositiveError("convergence rate needs positive errors, got " + format_g(e, 6));
  std::vector<double> rates;
  for (std::size_t i = 1; i < errors.size(); ++i) rates.push_back(std::log2(errors[i - 1] / errors[i]));
  return rates;
}

StateField pressure_field(const StateField& full, double gamma) {
  const Grid2D& g = full.grid();
  StateField p(g, 1);
  for (int k = g.k_lo(); k < g.k_hi(); ++k)
    for (int j = g.j_lo(); j < g.j_hi(); ++j) {
      const double rho = full(j, k, 0);
      const double m1 = full(j, k, 1);
      const double m2 = full(j, k, 2);
      const double kinetic = rho != 0.0 ? 0.5 * (m1 * m1 + m2 * m2) / rho : 0.0;
      p(j, k, 0) = (gamma - 1.0) * (full(j, k, 3) - kinetic);
    }
  return p;
}

// ---------------------------------------------------------------- snapshots

void write_snapshot(const StateField& full, double t, double gamma, const std::string& path) {
  const Grid2D& g = full.grid();
  const bool euler = full.n_comp() == 4;
  if (!euler && full.n_comp() != 1)
    throw ConfigError("snapshots support 1 or 4 components, got " + std::to_string(full.n_comp()));
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  std::fprintf(f, "# %d %d %.17g %.17g %.17g %.17g %.17g\n", g.nx(), g.ny(), g.x_min(), g.x_max(), g.y_min(),
               g.y_max(), t);
  std::fputs(euler ? "x,y,rho,u1,u2,E,p\n" : "x,y,u\n", f);
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) {
      if (euler) {
        const double rho = full(j, k, 0);
        const double u1 = full(j, k, 1) / rho;
        const double u2 = full(j, k, 2) / rho;
        const double E = full(j, k, 3);
        const double p = (gamma - 1.0) * (E - 0.5 * rho * (u1 * u1 + u2 * u2));
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", g.xc(j), g.yc(k), rho, u1, u2, E, p);
      } else {
        std::fprintf(f, "%.17g,%.17g,%.17g\n", g.xc(j), g.yc(k), full(j, k, 0));
      }
    }
  const bool bad = std::ferror(f) != 0;
  if (std::fclose(f) != 0 || bad) throw Error("write to '" + path + "' failed");
}

SnapshotData read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open snapshot '" + path + "'");
  SnapshotData d;
  std::string line;
  if (!std::getline(in, line) || line.empty() || line[0] != '#') throw Error("'" + path + "': missing header");
  {
    std::istringstream h(line.substr(1));
    if (!(h >> d.nx >> d.ny)) throw Error("'" + path + "': malformed header");
    std::string tok[5];
    for (auto& s : tok)
      if (!(h >> s)) throw Error("'" + path + "': malformed header");
    d.bounds = {std::strtod(tok[0].c_str(), nullptr), std::strtod(tok[1].c_str(), nullptr),
                std::strtod(tok[2].c_str(), nullptr), std::strtod(tok[3].c_str(), nullptr)};
    d.t = std::strtod(tok[4].c_str(), nullptr);
  }
  if (!std::getline(in, line)) throw Error("'" + path + "': missing column header");
  d.columns = split(line, ',');
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& item : split(line, ',')) row.push_back(std::strtod(item.c_str(), nullptr));
    if (row.size() != d.columns.size()) throw Error("'" + path + "': ragged row");
    d.rows.push_back(std::move(row));
  }
  return d;
}

// ---------------------------------------------------------------- runner

namespace {

std::string snapshot_path(const ExperimentConfig& cfg, double t) {
  std::ostringstream name;
  name << cfg.experiment << "_" << cfg.nx << "x" << cfg.ny << "_t" << format_g(t, 6) << ".csv";
  return (std::filesystem::path(cfg.output_dir) / name.str()).string();
}

Vec<4> euler_state(const PrimitiveState& w, double gamma) { return euler_to_conserved(w, gamma); }

std::function<Vec<4>(double, double)> euler_stationary(const ExperimentConfig& c) {
  if (c.stationary == "moving")
    return [c](double x, double y) {
      return euler_state(moving_equilibrium(x, y, c.rho0, c.p0, c.g, c.gamma, c.moving_axis), c.gamma);
    };
  return [c](double x, double y) {
    return euler_state(isothermal_equilibrium(x, y, c.rho0, c.p0, c.phi_x, c.phi_y), c.gamma);
  };
}

std::function<Vec<4>(double, double)> euler_initial(const ExperimentConfig& c) {
  if (c.initial == "isothermal")
    return [c](double x, double y) {
      return euler_state(isothermal_equilibrium(x, y, c.rho0, c.p0, c.phi_x, c.phi_y), c.gamma);
    };
  if (c.initial == "perturbed_isothermal_x" || c.initial == "perturbed_isothermal_y") {
    const Axis axis = c.initial == "perturbed_isothermal_x" ? Axis::x : Axis::y;
    return [c, axis](double x, double y) { return euler_state(perturbed_isothermal(x, y, c.eta, axis), c.gamma); };
  }
  if (c.initial == "moving")
    return [c](double x, double y) {
      return euler_state(moving_equilibrium(x, y, c.rho0, c.p0, c.g, c.gamma, c.moving_axis), c.gamma);
    };
  // shock_tube
  const double mid = 0.5 * (c.bounds.x_min + c.bounds.x_max);
  return [c, mid](double x, double) {
    const PrimitiveState w = x <= mid ? PrimitiveState{1.0, 0.0, 0.0, 1.0} : PrimitiveState{0.125, 0.0, 0.0, 0.1};
    return euler_state(w, c.gamma);
  };
}

GradPhi euler_potential(const ExperimentConfig& c) {
  if (c.potential == "moving") {
    const double gamma = c.gamma;
    const MovingAxis axis = c.moving_axis;
    return [gamma, axis](double x, double y) { return moving_potential_gradient(x, y, gamma, axis); };
  }
  if (c.potential == "none") return [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
  const double px = c.phi_x;
  const double py = c.phi_y;
  return [px, py](double, double) { return std::array<double, 2>{px, py}; };
}

std::function<Vec<1>(double, double)> scalar_initial(const ExperimentConfig& c) {
  const Bounds b = c.bounds;
  if (c.initial == "hump")
    return [b](double x, double y) {
      const double sx = (x - 0.5 * (b.x_min + b.x_max)) / (b.x_max - b.x_min);
      const double sy = (y - 0.5 * (b.y_min + b.y_max)) / (b.y_max - b.y_min);
      return Vec<1>{std::exp(-50.0 * (sx * sx + sy * sy))};
    };
  return [b](double x, double y) {
    const double two_pi = 2.0 * std::acos(-1.0);
    return Vec<1>{0.5 + 0.5 * std::sin(two_pi * (x - b.x_min) / (b.x_max - b.x_min)) *
                            std::sin(two_pi * (y - b.y_min) / (b.y_max - b.y_min))};
  };
}

template <class Model>
StateField full_state(const StateField& dev, const Background<Model>& bg) {
  StateField full(dev.grid(), dev.n_comp());
  const Grid2D& g = dev.grid();
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j)
      for (int c = 0; c < dev.n_comp(); ++c) full(j, k, c) = dev(j, k, c) + bg.cells(j, k, c);
  return full;
}

template <class Model>
RunReport run_model(const ExperimentConfig& cfg, const Model& model, const Background<Model>& bg,
                    const std::function<Vec<Model::N>(double, double)>& initial, double gamma) {
  const auto start = std::chrono::steady_clock::now();
  const Grid2D& grid = bg.cells.grid();
  RunReport report;
  report.experiment = cfg.experiment;
  report.stationary_cells = bg.cells;
  report.min_dt = 0.0;

  StateField dev(grid, static_cast<int>(Model::N));
  for (int k = 0; k < grid.ny(); ++k)
    for (int j = 0; j < grid.nx(); ++j) {
      const Vec<Model::N> q = initial(grid.xc(j), grid.yc(k));
      dev.set(j, k, q - bg.cell(j, k));
    }

  std::vector<double> targets = cfg.snapshot_times;
  if (targets.empty()) targets.push_back(cfg.t_end);
  if (!cfg.output_dir.empty()) std::filesystem::create_directories(cfg.output_dir);

  auto record = [&](double t) {
    StateField full = full_state(dev, bg);
    if (!cfg.output_dir.empty()) {
      const std::string path = snapshot_path(cfg, t);
      write_snapshot(full, t, gamma, path);
      report.files.push_back(path);
    }
    report.snapshots.push_back({t, std::move(full)});
  };

  auto note_dt = [&](double dt) {
    report.max_dt = std::fmax(report.max_dt, dt);
    report.min_dt = report.steps == 0 ? dt : std::fmin(report.min_dt, dt);
    ++report.steps;
  };

  double t = 0.0;
  for (double target : targets) {
    if (cfg.scheme == SchemeKind::fully_discrete) {
      while (t < target) {
        if (cfg.max_steps > 0 && report.steps >= cfg.max_steps)
          throw SolverError("max_steps = " + std::to_string(cfg.max_steps) + " reached at t = " + format_g(t, 10));
        fill_ghosts(dev, cfg.bc, model);
        try {
          const SpeedField speeds = fully_discrete_speeds(dev, bg, model, cfg.scheme_cfg);
          double dt = compute_dt(speeds, grid, cfg.cfl);
          if (!std::isfinite(dt)) throw SolverError("no finite time step");
          const bool last = t + dt >= target;
          if (last) dt = target - t;
          dev = step_fully_discrete(dev, bg, model, cfg.scheme_cfg, dt);
          t = last ? target : t + dt;
          note_dt(dt);
        } catch (const SolverError& e) {
          throw SolverError(std::string(e.what()) + " (step " + std::to_string(report.steps + 1) + ", t = " +
                            format_g(t, 10) + ")");
        }
        if (!dev.interior_finite())
          throw SolverError("non-finite state after step " + std::to_string(report.steps) + ", t = " +
                            format_g(t, 10));
      }
    } else if (target > t) {
      fill_ghosts(dev, cfg.bc, model);
      IntegrateOptions opts;
      opts.method = cfg.integrator;
      opts.dt_rule = cfg.dt_rule;
      opts.cfl = cfg.cfl;
      opts.bc = cfg.bc;
      opts.max_steps = cfg.max_steps > 0 ? cfg.max_steps - report.steps : 0;
      if (cfg.max_steps > 0 && opts.max_steps <= 0)
        throw SolverError("max_steps = " + std::to_string(cfg.max_steps) + " reached at t = " + format_g(t, 10));
      Trajectory tr;
      try {
        tr = integrate(dev, bg, model, cfg.scheme_cfg, target - t, opts);
      } catch (const SolverError& e) {
        throw SolverError(std::string(e.what()) + " (after step " + std::to_string(report.steps) + ", t = " +
                          format_g(t, 10) + ")");
      }
      dev = tr.final_state;
      for (double dt : tr.dts) note_dt(dt);
      t = target;
    }
    record(target);
  }
  report.final_deviation = dev;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg) {
  const Grid2D grid = make_grid(cfg.nx, cfg.ny, cfg.bounds, 3);
  if (cfg.model == "euler") {
    EulerModel model;
    model.gamma = cfg.gamma;
    model.grad_phi = euler_potential(cfg);
    const auto bg = make_background<EulerModel>(grid, euler_stationary(cfg));
    return run_model(cfg, model, bg, euler_initial(cfg), cfg.gamma);
  }
  const ScalarModel model = cfg.model == "burgers" ? ScalarModel::burgers() : ScalarModel::advection(cfg.adv_a, cfg.adv_b);
  const auto bg = zero_background<ScalarModel>(grid);
  return run_model(cfg, model, bg, scalar_initial(cfg), cfg.gamma);
}

// ---------------------------------------------------------------- convergence

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& base, const std::vector<int>& levels,
                                              int reference_n) {
  if (levels.empty()) throw ConfigError("convergence study needs at least one level");
  if (base.model != "euler") throw ConfigError("convergence study reports rho, p and E; use the Euler model");
  std::vector<int> ls = levels;
  std::sort(ls.begin(), ls.end());
  const int ref_n = reference_n > 0 ? reference_n : ls.back();
  if (reference_n <= 0) ls.pop_back();
  if (ls.empty()) throw ConfigError("convergence study needs a level below the reference");
  for (int n : ls)
    if (n >= ref_n || ref_n % n != 0)
      throw GridMismatch("level " + std::to_string(n) + " does not divide the reference " + std::to_string(ref_n));

  auto final_full = [&](int n) {
    ExperimentConfig c = base;
    c.nx = c.ny = n;
    c.output_dir.clear();
    c.snapshot_times.clear();
    return run_experiment(c).snapshots.back().state;
  };

  const StateField ref = final_full(ref_n);
  const StateField ref_p = pressure_field(ref, base.gamma);
  std::vector<ConvergenceRow> rows;
  std::vector<double> e_rho, e_p, e_E;
  for (int n : ls) {
    const StateField s = final_full(n);
    ConvergenceRow row;
    row.n = n;
    row.err_rho = l1_error(s, ref, 0);
    row.err_E = l1_error(s, ref, 3);
    row.err_p = l1_error(pressure_field(s, base.gamma), ref_p, 0);
    rows.push_back(row);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rate_rho = rows[i].rate_p = rows[i].rate_E = nan;
    if (i == 0) continue;
    rows[i].rate_rho = convergence_rates({rows[i - 1].err_rho, rows[i].err_rho})[0];
    rows[i].rate_p = convergence_rates({rows[i - 1].err_p, rows[i].err_p})[0];
    rows[i].rate_E = convergence_rates({rows[i - 1].err_E, rows[i].err_E})[0];
  }
  return rows;
}

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  auto rate = [](double r) { return std::isnan(r) ? std::string("-") : format_g(r, 3); };
  char buf[160];
  std::snprintf(buf, sizeof buf, "%8s  %12s %6s  %12s %6s  %12s %6s\n", "N", "L1(rho)", "rate", "L1(p)", "rate",
                "L1(E)", "rate");
  out << buf;
  for (const auto& r : rows) {
    const std::string n = std::to_string(r.n) + "^2";
    std::snprintf(buf, sizeof buf, "%8s  %12.3e %6s  %12.3e %6s  %12.3e %6s\n", n.c_str(), r.err_rho,
                  rate(r.rate_rho).c_str(), r.err_p, rate(r.rate_p).c_str(), r.err_E, rate(r.rate_E).c_str());
    out << buf;
  }
  return out.str();
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  auto num = [](double v) { return std::isnan(v) ? std::string() : format_g(v, 17); };
  out << "N,err_rho,rate_rho,err_p,rate_p,err_E,rate_E\n";
  for (const auto& r : rows)
    out << r.n << ',' << num(r.err_rho) << ',' << num(r.rate_rho) << ',' << num(r.err_p) << ',' << num(r.rate_p)
        << ',' << num(r.err_E) << ',' << num(r.rate_E) << '\n';
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace wbkt
