#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "presets.hpp"
#include "ptq/analytic.hpp"
#include "ptq/config.hpp"
#include "ptq/dynamics.hpp"
#include "ptq/explore.hpp"
#include "ptq/io.hpp"
#include "ptq/model.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using ptq::KeyValueConfig;
using ptq::SweepResult;

struct RunConfig {
  std::string command;
  std::string name;
  KeyValueConfig cfg;
  fs::path out_dir;
};

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

double number_or(const KeyValueConfig& cfg, const std::string& key, double fallback) {
  return cfg.contains(key) ? cfg.get_double(key) : fallback;
}

std::size_t count_or(const KeyValueConfig& cfg, const std::string& key, std::size_t fallback) {
  if (!cfg.contains(key)) return fallback;
  const double v = cfg.get_double(key);
  if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw std::invalid_argument("key '" + key + "' must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

ptq::Propagator propagator_of(const KeyValueConfig& cfg) {
  return ptq::parse_propagator(cfg.find_string("propagator").value_or("auto"));
}

ptq::OptimizeOptions grid_options(const KeyValueConfig& cfg, const std::string& prefix = "") {
  ptq::OptimizeOptions o;
  o.omega_min = number_or(cfg, prefix + "omega_min", o.omega_min);
  o.omega_max = number_or(cfg, prefix + "omega_max", o.omega_max);
  o.t_min = number_or(cfg, prefix + "t_min", o.t_min);
  o.t_max = number_or(cfg, prefix + "t_max", o.t_max);
  o.omega_points = count_or(cfg, prefix + "omega_points", o.omega_points);
  o.t_points = count_or(cfg, prefix + "t_points", o.t_points);
  o.resolution = number_or(cfg, prefix + "resolution", o.resolution);
  o.tolerance = number_or(cfg, prefix + "tolerance", o.tolerance);
  if (cfg.contains(prefix + "target")) o.target = cfg.get_double(prefix + "target");
  o.propagator = propagator_of(cfg);
  o.validate();
  return o;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

class Artifacts {
 public:
  explicit Artifacts(const RunConfig& rc)
      : rc_(rc),
        stem_(ptq::artifact_stem(rc.name, rc.command + "\n" + rc.cfg.to_string())),
        start_(std::chrono::steady_clock::now()) {}

  fs::path path(const std::string& suffix) const { return rc_.out_dir / (stem_ + suffix); }

  void write(const std::string& suffix, const std::string& content) const {
    ptq::write_text_file(path(suffix), content);
    std::cout << path(suffix).string() << "\n";
  }

  // Wall-clock fields live only here so data files stay reproducible.
  void write_meta(json extra) const {
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json meta = {{"command", rc_.command}, {"name", rc_.name},     {"config", rc_.cfg.to_string()},
                 {"stem", stem_},          {"generated_at", timestamp()}, {"elapsed_seconds", elapsed},
                 {"workers", ptq::worker_count()}};
    meta["result"] = std::move(extra);
    write(".meta.json", meta.dump(2) + "\n");
  }

 private:
  const RunConfig& rc_;
  std::string stem_;
  std::chrono::steady_clock::time_point start_;
};

bool emit_sweep(const SweepResult& res, const Artifacts& art) {
  art.write(".csv", res.to_csv());
  art.write_meta(res.meta);
  for (const auto& c : res.columns) {
    if (c == "unreachable" && res.any_flag(c)) return true;
  }
  return false;
}

bool cmd_spectrum(const RunConfig& rc) {
  const Artifacts art(rc);
  const auto spec = ptq::spec_from_config(rc.cfg);
  const auto omegas = linspace(number_or(rc.cfg, "omega_min", 0.0), number_or(rc.cfg, "omega_max", 12.0),
                               count_or(rc.cfg, "omega_points", 241));
  return emit_sweep(ptq::spectrum_scan(spec, omegas), art);
}

bool cmd_evolve(const RunConfig& rc) {
  const Artifacts art(rc);
  const auto spec = ptq::spec_from_config(rc.cfg);
  const auto times = linspace(number_or(rc.cfg, "t_min", 0.0), rc.cfg.get_double("t_max"),
                              count_or(rc.cfg, "samples", 1001));
  const auto qubit = static_cast<std::size_t>(number_or(rc.cfg, "bloch_qubit", 0.0));
  return emit_sweep(ptq::trajectory_table(spec, times, propagator_of(rc.cfg), qubit), art);
}

json report_json(const ptq::OptimumReport& r) {
  json trace = json::array();
  for (const auto& p : r.trace) trace.push_back({p.omega, p.t, p.value});
  return {{"omega_star", r.omega_star},
          {"t_star", r.t_star},
          {"entanglement", r.entanglement},
          {"fidelity", r.fidelity},
          {"success_rate", r.success_rate},
          {"normalized_fidelity", r.normalized_fidelity},
          {"grid_max", r.grid_max},
          {"below_half", r.below_half},
          {"target_reached", r.target_reached},
          {"trace", trace}};
}

bool cmd_optimize(const RunConfig& rc) {
  const Artifacts art(rc);
  const auto spec = ptq::spec_from_config(rc.cfg);
  const auto opt = grid_options(rc.cfg);
  const auto report = ptq::find_optimum(spec, opt);
  json out = report_json(report);
  out["measure"] = ptq::measure_name(ptq::measure_for(spec.size()));
  art.write(".json", out.dump(2) + "\n");
  art.write_meta({{"measure", out["measure"]}});
  return !report.target_reached || report.below_half;
}

SweepResult analytic_sweep(const ptq::SystemSpec& spec, const KeyValueConfig& cfg) {
  const auto& q = spec.qubits.front();
  for (const auto& other : spec.qubits) {
    if (other.gamma != q.gamma || other.kappa != q.gamma || other.omega != q.omega || other.delta != 0.0) {
      throw std::invalid_argument("analytic sweep needs identical balanced qubits without detuning");
    }
  }
  if (spec.size() != 2 && spec.size() != 3) throw std::invalid_argument("analytic sweep needs 2 or 3 qubits");
  const auto times = linspace(number_or(cfg, "t_min", 0.1), cfg.get_double("t_max"), count_or(cfg, "samples", 1000));
  const ptq::Evolver ev(ptq::build_hamiltonian(spec), propagator_of(cfg));
  const auto traj = ev.trajectory(ptq::StateVector(ptq::ground_state(spec.size())), times);
  const auto m = ptq::measure_for(spec.size());

  SweepResult res;
  res.name = "analytic";
  res.columns = {"t", "numeric", "analytic", "abs_error"};
  res.meta = {{"measure", ptq::measure_name(m)}};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const ptq::AnalyticParams p{q.gamma, q.omega, spec.coupling_j, times[i]};
    const double a = spec.size() == 2 ? ptq::analytic_concurrence_two(p) : ptq::analytic_tangle_three(p);
    const double n = ptq::evaluate_measure(m, traj.states[i].amplitudes);
    res.add_row({times[i], n, a, std::abs(a - n)});
  }
  return res;
}

std::vector<ptq::SystemSpec> asymmetric_sets(const KeyValueConfig& cfg) {
  std::vector<ptq::SystemSpec> sets;
  const auto n = count_or(cfg, "sets", 1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::string prefix = "set" + std::to_string(k) + ".";
    KeyValueConfig sub;
    sub.set("n_qubits", cfg.get_string("n_qubits"));
    sub.set("j", cfg.get_string("j"));
    for (const auto& [key, value] : cfg.entries()) {
      if (key.rfind(prefix, 0) == 0) sub.set(key.substr(prefix.size()), value);
    }
    sets.push_back(ptq::spec_from_config(sub));
  }
  return sets;
}

bool cmd_sweep(const RunConfig& rc) {
  const Artifacts art(rc);
  const auto& cfg = rc.cfg;
  const std::string kind = cfg.get_string("kind");

  if (kind == "acceleration") {
    ptq::AccelerationOptions o;
    o.n_qubits = count_or(cfg, "n_qubits", 2);
    o.gamma = number_or(cfg, "gamma", o.gamma);
    o.active = grid_options(cfg, "active_");
    o.passive = grid_options(cfg, "passive_");
    o.window_factor = number_or(cfg, "window_factor", o.window_factor);
    o.hermitian_step = number_or(cfg, "hermitian_step", o.hermitian_step);
    return emit_sweep(ptq::acceleration_rate(cfg.get_doubles("j_values"), o), art);
  }
  if (kind == "asymmetric") {
    return emit_sweep(ptq::asymmetric_check(asymmetric_sets(cfg), cfg.get_double("t_max"),
                                                number_or(cfg, "step", 0.005)),
                      art);
  }

  const auto spec = ptq::spec_from_config(cfg);
  if (kind == "tradeoff") {
    return emit_sweep(ptq::tradeoff_curve(spec, cfg.get_doubles("targets"), grid_options(cfg)), art);
  }
  if (kind == "gainloss") {
    return emit_sweep(ptq::gain_loss_scan(spec, cfg.get_doubles("ratios"), grid_options(cfg)), art);
  }
  if (kind == "strong") {
    return emit_sweep(ptq::strong_coupling_scan(spec, cfg.get_doubles("j_values"), grid_options(cfg)), art);
  }
  if (kind == "map") return emit_sweep(ptq::entanglement_map(spec, grid_options(cfg)), art);
  if (kind == "envelope") return emit_sweep(ptq::entanglement_envelope(spec, grid_options(cfg)), art);
  if (kind == "analytic") return emit_sweep(analytic_sweep(spec, cfg), art);
  if (kind == "broken") {
    ptq::BrokenPhaseOptions o;
    o.t_final_factor = number_or(cfg, "t_final_factor", o.t_final_factor);
    o.samples = count_or(cfg, "samples", o.samples);
    return emit_sweep(ptq::broken_phase_scan(spec, cfg.get_doubles("omegas"), o), art);
  }
  if (kind == "detuning") {
    double omega = 0.0, t = 0.0;
    if (cfg.contains("point_omega") && cfg.contains("point_t")) {
      omega = cfg.get_double("point_omega");
      t = cfg.get_double("point_t");
    } else {
      const auto best = ptq::find_optimum(spec, grid_options(cfg));
      omega = best.omega_star;
      t = best.t_star;
    }
    return emit_sweep(ptq::detuning_scan(spec, omega, t, cfg.get_doubles("deltas")), art);
  }
  throw std::invalid_argument("unknown sweep kind '" + kind + "'");
}

bool dispatch(const RunConfig& rc) {
  if (rc.command == "spectrum") return cmd_spectrum(rc);
  if (rc.command == "evolve") return cmd_evolve(rc);
  if (rc.command == "optimize") return cmd_optimize(rc);
  if (rc.command == "sweep") return cmd_sweep(rc);
  throw std::invalid_argument("unknown subcommand '" + rc.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric qubit entanglement toolkit"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string spec_path, preset, propagator;
  std::string out_dir = "out";
  std::optional<std::size_t> samples;
  bool dry_run = false, list = false;
  app.add_option("--spec", spec_path, "key = value configuration file");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--propagator", propagator, "auto | spectral | expm | oracle");
  app.add_option("--preset", preset, "named run recipe");
  app.add_option("--samples", samples, "trajectory sample count");
  app.add_flag("--dry-run", dry_run, "print the resolved configuration and exit");
  app.add_flag("--list-presets", list, "print preset names and exit");
  for (const char* c : {"spectrum", "evolve", "optimize", "sweep"}) app.add_subcommand(c);

  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& n : ptq::cli::preset_names()) std::cout << n << "\n";
    return 0;
  }

  const std::string sub = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
  try {
    std::vector<RunConfig> runs;
    if (!preset.empty()) {
      for (const auto& r : ptq::cli::preset_runs(preset)) {
        if (!sub.empty() && r.command != sub) continue;
        runs.push_back({r.command, r.name, KeyValueConfig::parse_string(r.config), out_dir});
      }
      if (runs.empty()) throw std::invalid_argument("preset '" + preset + "' has no " + sub + " run");
    } else {
      if (sub.empty()) throw std::invalid_argument("a subcommand or --preset is required");
      if (spec_path.empty()) throw std::invalid_argument("--spec is required without --preset");
      runs.push_back({sub, fs::path(spec_path).stem().string(), KeyValueConfig::load(spec_path), out_dir});
    }

    for (auto& rc : runs) {
      if (!propagator.empty()) {
        ptq::parse_propagator(propagator);
        rc.cfg.set("propagator", propagator);
      }
      if (samples) rc.cfg.set("samples", std::to_string(*samples));
    }

    if (dry_run) {
      for (const auto& rc : runs) {
        std::cout << "[" << rc.command << " " << rc.name << "] -> "
                  << (rc.out_dir / ptq::artifact_stem(rc.name, rc.command + "\n" + rc.cfg.to_string())).string()
                  << "\n"
                  << rc.cfg.to_string() << "\n";
      }
      return 0;
    }

    bool flagged = false;
    for (const auto& rc : runs) flagged = dispatch(rc) || flagged;
    if (flagged) {
      std::cerr << "warning: target not reached in at least one run\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
