#include "ptq/explore.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "ptq/config.hpp"
#include "ptq/entanglement.hpp"

#include <Eigen/Eigenvalues>

namespace ptq {

Measure measure_for(std::size_t n_qubits) {
  if (n_qubits == 2) return Measure::Concurrence;
  if (n_qubits == 3) return Measure::Tau3;
  throw std::invalid_argument("entanglement sweeps support 2 or 3 qubits");
}

const char* measure_name(Measure m) { return m == Measure::Concurrence ? "concurrence" : "tau3"; }

double evaluate_measure(Measure m, const Vector& psi) {
  return m == Measure::Concurrence ? concurrence_pure(psi) : residual_tangle(psi).tau3;
}

Vector default_ideal_state(std::size_t n_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  Vector v = Vector::Zero(dim);
  if (n_qubits == 2) {
    v << 0.5, 0.5, 0.5, -0.5;
    return v;
  }
  v(0) = v(dim - 1) = 1.0 / std::numbers::sqrt2;
  return v;
}

SystemSpec with_omega(const SystemSpec& templ, double omega) {
  SystemSpec s = templ;
  for (auto& q : s.qubits) q.omega = omega;
  return s;
}

unsigned worker_count() {
  if (const char* env = std::getenv("PTQ_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void OptimizeOptions::validate() const {
  if (!(omega_max > omega_min) || omega_min < 0.0) throw std::invalid_argument("empty omega range");
  if (!(t_max > t_min) || t_min < 0.0) throw std::invalid_argument("empty time range");
  if (omega_points < 2 || t_points < 3) throw std::invalid_argument("grid needs at least 2 x 3 points");
  if (!(resolution > 0.0) || tolerance < 0.0) throw std::invalid_argument("bad resolution or tolerance");
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

struct Extremum {
  double x;
  double f;
};

// Golden-section maximisation on [a, b] down to width `tol`.
template <class F>
Extremum golden_max(F&& f, double a, double b, double tol) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

// Earliest x in [lo, hi] with f(x) >= thr, given f(lo) < thr <= f(hi).
template <class F>
double bisect_crossing(F&& f, double lo, double hi, double thr, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= thr ? hi : lo) = mid;
  }
  return hi;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

struct Column {
  std::vector<double> values;
  std::vector<OptimumPeak> peaks;
};

class PointEvaluator {
 public:
  PointEvaluator(const SystemSpec& spec, Propagator kind)
      : evolver_(build_hamiltonian(spec), kind),
        psi0_(ground_state(spec.size())),
        measure_(measure_for(spec.size())) {}

  double operator()(double t) const { return evaluate_measure(measure_, state(t).amplitudes); }
  StateVector state(double t) const { return evolver_.evolve(psi0_, t); }

 private:
  Evolver evolver_;
  StateVector psi0_;
  Measure measure_;
};

Column scan_column(const SystemSpec& spec, const OptimizeOptions& opt, const std::vector<double>& ts) {
  const PointEvaluator eval(spec, opt.propagator);
  Column col;
  col.values.reserve(ts.size());
  for (double t : ts) col.values.push_back(eval(t));
  const double omega = spec.qubits.front().omega;
  for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
    const double v = col.values[k];
    if (v > col.values[k - 1] && v >= col.values[k + 1]) {
      const auto pk = golden_max(eval, ts[k - 1], ts[k + 1], opt.resolution * 0.1);
      col.peaks.push_back({omega, pk.x, std::max(pk.f, v)});
      if (pk.f < v) col.peaks.back().t = ts[k];
    }
  }
  return col;
}

// Follows one peak across [lo, hi] in omega steps of `resolution`, re-maximising
// in t within +-half_width of the previous position; returns the highest point.
OptimumPeak refine_ridge(const SystemSpec& templ, const OptimizeOptions& opt, const OptimumPeak& start, double lo,
                         double hi, double half_width) {
  OptimumPeak best = start;
  for (int dir : {-1, 1}) {
    const double span = dir < 0 ? start.omega - lo : hi - start.omega;
    const auto steps = static_cast<long>(std::floor(span / opt.resolution + 1e-9));
    double t = start.t;
    for (long k = 1; k <= steps; ++k) {
      const double w = start.omega + dir * static_cast<double>(k) * opt.resolution;
      const PointEvaluator eval(with_omega(templ, w), opt.propagator);
      const auto pk = golden_max(eval, std::max(opt.t_min, t - half_width), std::min(opt.t_max, t + half_width),
                                 opt.resolution * 0.1);
      t = pk.x;
      if (pk.f > best.value) best = {w, pk.x, pk.f};
    }
  }
  return best;
}

bool earlier(const OptimumPeak& a, const OptimumPeak& b) {
  return a.t < b.t || (a.t == b.t && a.omega < b.omega);
}

}  // namespace

OptimumReport find_optimum(const SystemSpec& templ, const OptimizeOptions& opt, std::optional<Vector> ideal) {
  opt.validate();
  templ.validate();
  measure_for(templ.size());
  const Vector target_state = ideal ? *ideal : default_ideal_state(templ.size());

  const auto omegas = linspace(opt.omega_min, opt.omega_max, opt.omega_points);
  const auto ts = linspace(opt.t_min, opt.t_max, opt.t_points);
  const double dt = ts[1] - ts[0];
  std::vector<Column> cols(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t i) { cols[i] = scan_column(with_omega(templ, omegas[i]), opt, ts); });

  OptimumReport rep;
  OptimumPeak best_sample{omegas[0], ts[0], -1.0};
  struct Candidate {
    std::size_t col;
    OptimumPeak peak;
  };
  std::vector<Candidate> peaks;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    OptimumPeak top{omegas[i], 0.0, -1.0};
    for (const auto& p : cols[i].peaks) {
      peaks.push_back({i, p});
      if (p.value > top.value) top = p;
    }
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (cols[i].values[k] > best_sample.value) best_sample = {omegas[i], ts[k], cols[i].values[k]};
    }
    if (top.value >= 0.0) rep.trace.push_back(top);
  }

  const auto refine = [&](const Candidate& c) {
    const double lo = omegas[c.col == 0 ? 0 : c.col - 1];
    const double hi = omegas[std::min(c.col + 1, omegas.size() - 1)];
    return refine_ridge(templ, opt, c.peak, lo, hi, dt);
  };

  // The ridge maximum is estimated from the highest coarse peaks.
  constexpr std::size_t kTopPeaks = 8;
  constexpr double kCandidateMargin = 0.05;
  std::vector<Candidate> by_value = peaks;
  std::stable_sort(by_value.begin(), by_value.end(),
                   [](const Candidate& a, const Candidate& b) { return a.peak.value > b.peak.value; });
  OptimumPeak best = best_sample;
  for (std::size_t k = 0; k < std::min(kTopPeaks, by_value.size()); ++k) {
    const auto r = refine(by_value[k]);
    if (r.value > best.value) best = r;
  }
  rep.grid_max = best.value;

  const double threshold = opt.target ? *opt.target : best.value - opt.tolerance;
  std::vector<Candidate> by_time;
  for (const auto& c : peaks) {
    if (c.peak.value >= threshold - kCandidateMargin) by_time.push_back(c);
  }
  std::stable_sort(by_time.begin(), by_time.end(),
                   [](const Candidate& a, const Candidate& b) { return earlier(a.peak, b.peak); });
  std::optional<OptimumPeak> winner;
  const double slack = 10.0 * dt;  // how far ridge refinement may move a peak in t
  for (const auto& c : by_time) {
    if (winner && c.peak.t > winner->t + slack) break;
    const auto r = refine(c);
    if (r.value >= threshold && (!winner || earlier(r, *winner))) winner = r;
  }

  OptimumPeak chosen = best;
  if (winner) {
    chosen = *winner;
  } else {
    rep.target_reached = false;
  }

  rep.omega_star = chosen.omega;
  rep.t_star = chosen.t;
  rep.entanglement = chosen.value;
  rep.below_half = rep.entanglement <= 0.5;
  const PointEvaluator eval(with_omega(templ, rep.omega_star), opt.propagator);
  const StateVector psi = eval.state(rep.t_star);
  rep.fidelity = fidelity(psi, target_state);
  rep.success_rate = success_rate(psi);
  rep.normalized_fidelity = normalized_fidelity(psi, target_state);
  return rep;
}

void SweepResult::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match columns");
  rows.push_back(std::move(row));
}

std::size_t SweepResult::column(const std::string& col) const {
  const auto it = std::find(columns.begin(), columns.end(), col);
  if (it == columns.end()) throw std::out_of_range("no column '" + col + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double SweepResult::at(std::size_t row, const std::string& col) const { return rows.at(row).at(column(col)); }

bool SweepResult::any_flag(const std::string& col) const {
  const std::size_t c = column(col);
  return std::any_of(rows.begin(), rows.end(), [c](const auto& r) { return r[c] != 0.0; });
}

std::string SweepResult::to_csv() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << format_double(r[c]);
    out << '\n';
  }
  return out.str();
}

namespace {

nlohmann::json grid_json(const OptimizeOptions& o) {
  nlohmann::json j = {{"omega_min", o.omega_min}, {"omega_max", o.omega_max}, {"t_min", o.t_min},
                      {"t_max", o.t_max},         {"omega_points", o.omega_points},
                      {"t_points", o.t_points},   {"resolution", o.resolution},
                      {"tolerance", o.tolerance}, {"propagator", propagator_name(o.propagator)}};
  if (o.target) j["target"] = *o.target;
  return j;
}

std::string snapshot(const SystemSpec& s) {
  KeyValueConfig cfg;
  spec_to_config(s, cfg);
  return cfg.to_string();
}

}  // namespace

SweepResult tradeoff_curve(const SystemSpec& templ, const std::vector<double>& targets, const OptimizeOptions& opt,
                           std::optional<Vector> ideal) {
  opt.validate();
  for (double c : targets) {
    if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("tradeoff targets must lie in (0, 1]");
  }
  const Vector target_state = ideal ? *ideal : default_ideal_state(templ.size());
  const auto omegas = linspace(opt.omega_min, opt.omega_max, opt.omega_points);
  const auto ts = linspace(opt.t_min, opt.t_max, opt.t_points);
  std::vector<Column> cols(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t i) { cols[i] = scan_column(with_omega(templ, omegas[i]), opt, ts); });

  SweepResult res;
  res.name = "tradeoff";
  res.columns = {"target", "omega", "t", "entanglement", "fidelity", "success_rate", "normalized_fidelity",
                 "unreachable"};
  res.meta = {{"spec", snapshot(templ)}, {"grid", grid_json(opt)}, {"measure", measure_name(measure_for(templ.size()))}};

  for (double target : targets) {
    const double thr = target - opt.tolerance;
    std::optional<OptimumPeak> best;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto& v = cols[i].values;
      // Earliest sample at or above thr, or earliest refined peak at or above thr.
      std::optional<std::pair<double, double>> bracket;  // (lo, hi) with f(lo) < thr <= f(hi)
      if (v[0] >= thr) bracket = {ts[0], ts[0]};
      std::size_t peak_idx = 0;
      for (std::size_t k = 1; k < ts.size() && !bracket; ++k) {
        while (peak_idx < cols[i].peaks.size() && cols[i].peaks[peak_idx].t < ts[k - 1]) ++peak_idx;
        if (peak_idx < cols[i].peaks.size() && cols[i].peaks[peak_idx].t <= ts[k] &&
            cols[i].peaks[peak_idx].value >= thr && v[k] < thr) {
          bracket = {ts[k - 1], cols[i].peaks[peak_idx].t};
        } else if (v[k] >= thr) {
          bracket = {ts[k - 1], ts[k]};
        }
      }
      if (!bracket) continue;
      double t_cross = bracket->second;
      if (bracket->second > bracket->first) {
        const PointEvaluator eval(with_omega(templ, omegas[i]), opt.propagator);
        t_cross = bisect_crossing(eval, bracket->first, bracket->second, thr, opt.resolution * 0.1);
      }
      if (!best || t_cross < best->t) best = OptimumPeak{omegas[i], t_cross, 0.0};
    }
    if (!best) {
      // Narrow ridges can fall between columns; retry with refinement in omega.
      OptimizeOptions ridge = opt;
      ridge.target = thr;
      const auto o = find_optimum(templ, ridge, target_state);
      if (o.target_reached) best = OptimumPeak{o.omega_star, o.t_star, o.entanglement};
    }
    if (!best) {
      res.add_row({target, std::nan(""), std::nan(""), std::nan(""), std::nan(""), std::nan(""), std::nan(""), 1.0});
      continue;
    }
    const PointEvaluator eval(with_omega(templ, best->omega), opt.propagator);
    const StateVector psi = eval.state(best->t);
    res.add_row({target, best->omega, best->t, evaluate_measure(measure_for(templ.size()), psi.amplitudes),
                 fidelity(psi, target_state), success_rate(psi), normalized_fidelity(psi, target_state), 0.0});
  }
  return res;
}

HermitianReference hermitian_reference(std::size_t n_qubits, double omega, double j, double window, double step,
                                       double tolerance) {
  if (!(j > 0.0)) throw std::invalid_argument("hermitian reference needs J > 0");
  if (!(window > 0.0) || !(step > 0.0)) throw std::invalid_argument("bad hermitian window");
  QubitParams q;
  q.omega = omega;
  const SystemSpec spec = SystemSpec::uniform(n_qubits, q, j);
  const Measure m = measure_for(n_qubits);
  const Evolver ev(build_hamiltonian(spec), Propagator::Spectral);
  const StateVector psi0(ground_state(n_qubits));
  const auto f = [&](double t) { return evaluate_measure(m, ev.evolve(psi0, t).amplitudes); };

  const auto n = static_cast<std::size_t>(std::ceil(window / step)) + 1;
  std::vector<std::pair<double, double>> sample_peaks;  // (t, sampled value)
  double prev2 = f(0.0), prev1 = f(step);
  double sample_max = std::max(prev2, prev1);
  for (std::size_t k = 2; k < n; ++k) {
    const double t = std::min(window, static_cast<double>(k) * step);
    const double cur = f(t);
    if (prev1 > prev2 && prev1 >= cur) sample_peaks.emplace_back(t - step, prev1);
    sample_max = std::max(sample_max, cur);
    prev2 = prev1;
    prev1 = cur;
  }

  // Only peaks that could be within tolerance of the maximum are refined.
  std::vector<Extremum> refined;
  double best = sample_max;
  for (const auto& [t, val] : sample_peaks) {
    if (val < sample_max - 0.05) continue;
    auto pk = golden_max(f, std::max(0.0, t - step), std::min(window, t + step), 1e-5);
    if (pk.f < val) pk = {t, val};
    refined.push_back(pk);
    best = std::max(best, pk.f);
  }

  HermitianReference ref;
  ref.window = window;
  ref.window_max = best;
  if (best < 0.99) {
    throw std::runtime_error("hermitian search window exhausted without reaching maximal entanglement (max " +
                             format_double(best) + ")");
  }
  for (const auto& pk : refined) {
    if (pk.f >= best - tolerance) {
      ref.t_h = pk.x;
      ref.value = pk.f;
      break;
    }
  }
  return ref;
}

SweepResult acceleration_rate(const std::vector<double>& j_values, const AccelerationOptions& opt) {
  SweepResult res;
  res.name = "acceleration";
  res.columns = {"j",           "omega_active", "t_active",     "omega_passive",
                 "t_passive",   "t_hermitian",  "ratio_active", "ratio_passive"};
  res.meta = {{"n_qubits", opt.n_qubits},
              {"gamma", opt.gamma},
              {"active_grid", grid_json(opt.active)},
              {"passive_grid", grid_json(opt.passive)},
              {"window_factor", opt.window_factor},
              {"hermitian_step", opt.hermitian_step},
              {"hermitian_protocol", "gamma=kappa=0, omega = active optimum, start |g..g>, earliest refined peak "
                                     "within 1e-3 of the window maximum"}};
  for (double j : j_values) {
    if (!(j > 0.0)) throw std::invalid_argument("acceleration_rate needs positive J");
    const SystemSpec active = SystemSpec::uniform(opt.n_qubits, {opt.gamma, opt.gamma, 0.0, 0.0}, j);
    const SystemSpec passive = SystemSpec::uniform(opt.n_qubits, {opt.gamma, 0.0, 0.0, 0.0}, j);
    const auto a = find_optimum(active, opt.active);
    const auto p = find_optimum(passive, opt.passive);
    const double window = opt.window_factor * std::numbers::pi / (2.0 * j);
    const auto h = hermitian_reference(opt.n_qubits, a.omega_star, j, window, opt.hermitian_step);
    res.add_row({j, a.omega_star, a.t_star, p.omega_star, p.t_star, h.t_h, h.t_h / a.t_star, h.t_h / p.t_star});
  }
  return res;
}

SweepResult gain_loss_scan(const SystemSpec& templ, const std::vector<double>& ratios, const OptimizeOptions& opt,
                           std::optional<Vector> ideal) {
  SweepResult res;
  res.name = "gainloss";
  res.columns = {"ratio", "omega", "t", "entanglement", "fidelity", "success_rate", "normalized_fidelity"};
  res.meta = {{"spec", snapshot(templ)}, {"grid", grid_json(opt)}};
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("gain/loss ratio must lie in [0, 1]");
    SystemSpec s = templ;
    for (auto& q : s.qubits) q.kappa = r * q.gamma;
    const auto o = find_optimum(s, opt, ideal);
    res.add_row({r, o.omega_star, o.t_star, o.entanglement, o.fidelity, o.success_rate, o.normalized_fidelity});
  }
  return res;
}

SweepResult detuning_scan(const SystemSpec& templ, double omega, double t, const std::vector<double>& deltas) {
  SweepResult res;
  res.name = "detuning";
  res.columns = {"delta", "entanglement", "degradation"};
  res.meta = {{"spec", snapshot(templ)}, {"omega", omega}, {"t", t}};
  const auto at = [&](double delta) {
    SystemSpec s = with_omega(templ, omega);
    for (auto& q : s.qubits) q.delta = delta;
    const PointEvaluator eval(s, Propagator::Auto);
    return eval(t);
  };
  const double base = at(0.0);
  std::vector<double> values(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    if (!std::isfinite(deltas[i])) throw std::invalid_argument("detuning must be finite");
    values[i] = at(deltas[i]);
  });
  for (std::size_t i = 0; i < deltas.size(); ++i) res.add_row({deltas[i], values[i], base - values[i]});
  return res;
}

double eta_mismatch(const SystemSpec& spec) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& q : spec.qubits) {
    const double c = 4.0 * q.omega * q.omega - q.gamma * q.gamma;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return hi - lo;
}

SweepResult asymmetric_check(const std::vector<SystemSpec>& systems, double t_max, double step) {
  if (!(t_max > 0.0) || !(step > 0.0)) throw std::invalid_argument("bad asymmetric_check window");
  SweepResult res;
  res.name = "asymmetric";
  res.columns = {"set", "eta_spread", "max_entanglement", "t_at_max"};
  res.meta = {{"t_max", t_max}, {"step", step}};
  std::vector<Extremum> best(systems.size());
  parallel_for(systems.size(), [&](std::size_t i) {
    if (systems[i].size() != 3) throw std::invalid_argument("asymmetric_check expects three qubits");
    const PointEvaluator eval(systems[i], Propagator::Auto);
    const auto n = static_cast<std::size_t>(std::ceil(t_max / step));
    Extremum top{0.0, eval(0.0)};
    double prev2 = top.f, prev1 = eval(step);
    for (std::size_t k = 2; k <= n; ++k) {
      const double t = std::min(t_max, static_cast<double>(k) * step);
      const double cur = eval(t);
      if (prev1 > prev2 && prev1 >= cur) {
        const double tp = t - step;
        auto pk = golden_max(eval, tp - step, tp + step, 1e-5);
        if (pk.f < prev1) pk = {tp, prev1};
        if (pk.f > top.f) top = pk;
      }
      if (cur > top.f) top = {t, cur};
      prev2 = prev1;
      prev1 = cur;
    }
    best[i] = top;
  });
  for (std::size_t i = 0; i < systems.size(); ++i) {
    res.add_row({static_cast<double>(i), eta_mismatch(systems[i]), best[i].f, best[i].x});
    res.meta["sets"].push_back(snapshot(systems[i]));
  }
  return res;
}

SweepResult broken_phase_scan(const SystemSpec& templ, const std::vector<double>& omegas,
                              const BrokenPhaseOptions& opt) {
  if (opt.samples < 10) throw std::invalid_argument("broken_phase_scan needs at least 10 samples");
  const double gamma = templ.qubits.front().gamma;
  if (!(gamma > 0.0)) throw std::invalid_argument("broken_phase_scan needs gamma > 0");
  for (const auto& q : templ.qubits) {
    if (q.kappa != q.gamma) throw std::invalid_argument("broken_phase_scan expects balanced gain and loss");
  }
  const double t_final = opt.t_final_factor / gamma;
  const double dt = t_final / static_cast<double>(opt.samples);
  const Measure m = measure_for(templ.size());

  SweepResult res;
  res.name = "broken_phase";
  res.columns = {"omega", "steady_value", "drift"};
  res.meta = {{"spec", snapshot(templ)}, {"t_final", t_final}, {"samples", opt.samples}};
  std::vector<std::array<double, 2>> out(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t i) {
    if (!(omegas[i] >= 0.0 && 2.0 * omegas[i] < gamma)) {
      throw std::invalid_argument("broken_phase_scan needs 0 <= omega < gamma/2");
    }
    const Matrix step = expm_propagator(build_hamiltonian(with_omega(templ, omegas[i])), dt);
    Vector psi = ground_state(templ.size());
    const std::size_t tail = opt.samples - opt.samples / 5;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (std::size_t k = 1; k <= opt.samples; ++k) {
      psi = step * psi;
      psi /= psi.norm();
      if (k < tail) continue;
      const double v = evaluate_measure(m, psi);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    out[i] = {sum / static_cast<double>(opt.samples - tail + 1), hi - lo};
  });
  for (std::size_t i = 0; i < omegas.size(); ++i) res.add_row({omegas[i], out[i][0], out[i][1]});
  return res;
}

SweepResult strong_coupling_scan(const SystemSpec& templ, const std::vector<double>& j_values,
                                 const OptimizeOptions& opt) {
  SweepResult res;
  res.name = "strong_coupling";
  res.columns = {"j", "omega", "t", "entanglement"};
  res.meta = {{"spec", snapshot(templ)}, {"grid", grid_json(opt)}};
  for (double j : j_values) {
    SystemSpec s = templ;
    s.coupling_j = j;
    const auto o = find_optimum(s, opt);
    res.add_row({j, o.omega_star, o.t_star, o.entanglement});
  }
  return res;
}

SweepResult spectrum_scan(const SystemSpec& templ, const std::vector<double>& omegas) {
  templ.validate();
  const std::size_t dim = templ.dimension();
  SweepResult res;
  res.name = "spectrum";
  res.columns = {"omega"};
  for (std::size_t k = 0; k < dim; ++k) {
    res.columns.push_back("re_" + std::to_string(k));
    res.columns.push_back("im_" + std::to_string(k));
  }
  res.meta = {{"spec", snapshot(templ)}};
  std::vector<std::vector<double>> rows(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t i) {
    Eigen::ComplexEigenSolver<Matrix> solver(build_hamiltonian(with_omega(templ, omegas[i])), false);
    std::vector<cplx> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
      return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    rows[i].push_back(omegas[i]);
    for (const auto& e : ev) {
      rows[i].push_back(e.real());
      rows[i].push_back(e.imag());
    }
  });
  for (auto& r : rows) res.add_row(std::move(r));
  return res;
}

SweepResult entanglement_map(const SystemSpec& templ, const OptimizeOptions& opt) {
  opt.validate();
  const auto omegas = linspace(opt.omega_min, opt.omega_max, opt.omega_points);
  const auto ts = linspace(opt.t_min, opt.t_max, opt.t_points);
  std::vector<std::vector<double>> cols(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t i) {
    const PointEvaluator eval(with_omega(templ, omegas[i]), opt.propagator);
    for (double t : ts) cols[i].push_back(eval(t));
  });
  SweepResult res;
  res.name = "map";
  res.columns = {"omega", "t", "entanglement"};
  res.meta = {{"spec", snapshot(templ)}, {"grid", grid_json(opt)}};
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    for (std::size_t k = 0; k < ts.size(); ++k) res.add_row({omegas[i], ts[k], cols[i][k]});
  }
  return res;
}

SweepResult entanglement_envelope(const SystemSpec& templ, const OptimizeOptions& opt) {
  opt.validate();
  const auto omegas = linspace(opt.omega_min, opt.omega_max, opt.omega_points);
  const auto ts = linspace(opt.t_min, opt.t_max, opt.t_points);
  std::vector<Column> cols(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t i) { cols[i] = scan_column(with_omega(templ, omegas[i]), opt, ts); });
  SweepResult res;
  res.name = "envelope";
  res.columns = {"omega", "max_entanglement", "t_at_max"};
  res.meta = {{"spec", snapshot(templ)}, {"grid", grid_json(opt)}};
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    OptimumPeak top{omegas[i], ts[0], -1.0};
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (cols[i].values[k] > top.value) top = {omegas[i], ts[k], cols[i].values[k]};
    }
    for (const auto& p : cols[i].peaks) {
      if (p.value > top.value) top = p;
    }
    res.add_row({omegas[i], top.value, top.t});
  }
  return res;
}

SweepResult trajectory_table(const SystemSpec& spec, const std::vector<double>& times, Propagator kind,
                             std::size_t bloch_qubit, std::optional<Vector> ideal) {
  spec.validate();
  const bool entangled = spec.size() == 2 || spec.size() == 3;
  const Vector target = ideal ? *ideal : default_ideal_state(spec.size());
  const Evolver ev(build_hamiltonian(spec), kind);
  const Trajectory traj = ev.trajectory(StateVector(ground_state(spec.size())), times);
  const auto bloch = bloch_trajectory(traj, bloch_qubit);

  SweepResult res;
  res.name = "trajectory";
  res.columns = {"time"};
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  for (Eigen::Index k = 0; k < dim; ++k) {
    res.columns.push_back("re_" + std::to_string(k));
    res.columns.push_back("im_" + std::to_string(k));
  }
  res.columns.push_back("norm2");
  if (entangled) res.columns.push_back("entanglement");
  for (const char* c : {"fidelity", "bloch_x", "bloch_y", "bloch_z"}) res.columns.push_back(c);
  res.meta = {{"spec", snapshot(spec)}, {"propagator", propagator_name(ev.route())}, {"bloch_qubit", bloch_qubit}};
  if (entangled) res.meta["measure"] = measure_name(measure_for(spec.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& s = traj.states[i];
    std::vector<double> row{times[i]};
    for (Eigen::Index k = 0; k < dim; ++k) {
      row.push_back(s.amplitudes(k).real());
      row.push_back(s.amplitudes(k).imag());
    }
    row.push_back(success_rate(s));
    if (entangled) row.push_back(evaluate_measure(measure_for(spec.size()), s.amplitudes));
    row.push_back(fidelity(s, target));
    row.push_back(bloch[i].x);
    row.push_back(bloch[i].y);
    row.push_back(bloch[i].z);
    res.add_row(std::move(row));
  }
  return res;
}

}  // namespace ptq
