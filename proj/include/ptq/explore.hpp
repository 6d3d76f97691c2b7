#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ptq/dynamics.hpp"
#include "ptq/model.hpp"

namespace ptq {

enum class Measure { Concurrence, Tau3 };

Measure measure_for(std::size_t n_qubits);
const char* measure_name(Measure m);
double evaluate_measure(Measure m, const Vector& psi);

/// Target state used for fidelities: (|gg> + |ge> + |eg> - |ee>)/2 for N = 2,
/// GHZ (|g..g> + |e..e>)/sqrt2 otherwise.
Vector default_ideal_state(std::size_t n_qubits);

/// Copy of `templ` with every qubit's drive set to `omega`.
SystemSpec with_omega(const SystemSpec& templ, double omega);

/// Number of workers for parallel sweeps: $PTQ_WORKERS if set, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on worker_count() threads. Results must be
/// written to per-index slots; exceptions are rethrown (lowest index first).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct OptimizeOptions {
  double omega_min = 4.0;
  double omega_max = 9.0;
  double t_min = 0.0;
  double t_max = 4.0;
  std::size_t omega_points = 200;
  std::size_t t_points = 400;
  double resolution = 1e-3;
  /// Candidates reach max - tolerance ...
  double tolerance = 1e-3;
  /// ... unless an absolute target is given, in which case they reach `target`.
  std::optional<double> target;
  Propagator propagator = Propagator::Auto;

  void validate() const;
};

struct OptimumPeak {
  double omega = 0.0;
  double t = 0.0;
  double value = 0.0;
};

struct OptimumReport {
  double omega_star = 0.0;
  double t_star = 0.0;
  double entanglement = 0.0;
  double fidelity = 0.0;
  double success_rate = 0.0;
  double normalized_fidelity = 0.0;
  double grid_max = 0.0;       // best refined peak on the coarse grid
  bool below_half = false;     // no point exceeded 0.5; best-found reported
  bool target_reached = true;  // false if `target` was set and never reached
  std::vector<OptimumPeak> trace;  // highest peak per omega column
};

/// Coarse omega x t grid, local peaks in t refined to `resolution`, the
/// earliest peak reaching the threshold selected (ties: smaller omega), then
/// the peak ridge refined in omega to `resolution`. Start state |g..g>.
OptimumReport find_optimum(const SystemSpec& templ, const OptimizeOptions& opt,
                           std::optional<Vector> ideal = std::nullopt);

/// Tabular sweep output. Every row has one value per column.
struct SweepResult {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json meta = nlohmann::json::object();

  void add_row(std::vector<double> row);
  std::size_t column(const std::string& name) const;
  double at(std::size_t row, const std::string& col) const;
  bool any_flag(const std::string& col) const;

  std::string to_csv() const;
};

/// For each target the minimal-time (omega, t) whose measure first reaches
/// target - tolerance. Columns: target, omega, t, entanglement, fidelity,
/// success_rate, normalized_fidelity, unreachable.
SweepResult tradeoff_curve(const SystemSpec& templ, const std::vector<double>& targets,
                           const OptimizeOptions& opt, std::optional<Vector> ideal = std::nullopt);

struct AccelerationOptions {
  std::size_t n_qubits = 2;
  double gamma = 12.0;
  OptimizeOptions active;
  OptimizeOptions passive;
  /// Hermitian search window is window_factor * pi / (2J).
  double window_factor = 10.0;
  double hermitian_step = 0.01;
};

struct HermitianReference {
  double t_h = 0.0;
  double value = 0.0;
  double window_max = 0.0;
  double window = 0.0;
};

/// gamma = kappa = 0 at fixed omega from |g..g>: earliest refined peak with
/// measure >= (window max) - tolerance inside [0, window].
HermitianReference hermitian_reference(std::size_t n_qubits, double omega, double j, double window,
                                       double step = 0.01, double tolerance = 1e-3);

/// Columns: j, omega_active, t_active, omega_passive, t_passive, t_hermitian,
/// ratio_active, ratio_passive.
SweepResult acceleration_rate(const std::vector<double>& j_values, const AccelerationOptions& opt);

/// Per kappa/gamma ratio, re-optimise and record the optimum. Columns: ratio,
/// omega, t, entanglement, fidelity, success_rate, normalized_fidelity.
SweepResult gain_loss_scan(const SystemSpec& templ, const std::vector<double>& ratios,
                           const OptimizeOptions& opt, std::optional<Vector> ideal = std::nullopt);

/// Entanglement at a fixed (omega, t) as a function of a uniform detuning.
/// Columns: delta, entanglement, degradation.
SweepResult detuning_scan(const SystemSpec& templ, double omega, double t,
                          const std::vector<double>& deltas);

/// Max measure over [0, t_max] for each system. Columns: set, eta_spread, max_entanglement, t_at_max.
SweepResult asymmetric_check(const std::vector<SystemSpec>& systems, double t_max, double step = 0.005);

/// 4 omega_n^2 - gamma_n^2 spread (max - min) across qubits.
double eta_mismatch(const SystemSpec& spec);

struct BrokenPhaseOptions {
  double t_final_factor = 50.0;  // t_final = factor / gamma
  std::size_t samples = 2000;
};

/// Renormalised long-time evolution in the PT-broken phase. Columns: omega,
/// steady_value, drift (max - min over the final 20% of the window).
SweepResult broken_phase_scan(const SystemSpec& templ, const std::vector<double>& omegas,
                              const BrokenPhaseOptions& opt = {});

/// Re-optimise for each coupling. Columns: j, omega, t, entanglement.
SweepResult strong_coupling_scan(const SystemSpec& templ, const std::vector<double>& j_values,
                                 const OptimizeOptions& opt);

/// Eigenvalues versus drive. Columns: omega, then re_k, im_k for each
/// eigenvalue sorted by real part, then imaginary part.
SweepResult spectrum_scan(const SystemSpec& templ, const std::vector<double>& omegas);

/// Measure on the full omega x t grid of `opt`. Columns: omega, t, entanglement.
SweepResult entanglement_map(const SystemSpec& templ, const OptimizeOptions& opt);

/// Per omega, the largest measure over the time grid of `opt`, including the
/// PT-broken region. Columns: omega, max_entanglement, t_at_max.
SweepResult entanglement_envelope(const SystemSpec& templ, const OptimizeOptions& opt);

/// Trajectory from |g..g>. Columns: time, re_k, im_k per amplitude, norm2,
/// entanglement (2 or 3 qubits only), fidelity, bloch_x, bloch_y, bloch_z
/// (for qubit `bloch_qubit`).
SweepResult trajectory_table(const SystemSpec& spec, const std::vector<double>& times, Propagator kind,
                             std::size_t bloch_qubit, std::optional<Vector> ideal = std::nullopt);

}  // namespace ptq
