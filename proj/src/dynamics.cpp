#include "ptq/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "ptq/config.hpp"

namespace ptq {

namespace {

void guard(const Vector& psi, double t) {
  const double n = psi.norm();
  if (!std::isfinite(n) || n > kOverflowNorm) {
    throw OverflowError("state norm exceeded 1e150 at t = " + format_double(t), t);
  }
}

void check_dims(const Matrix& h, const Vector& psi) {
  if (h.rows() != h.cols()) throw std::invalid_argument("Hamiltonian is not square");
  if (h.rows() != psi.size()) {
    throw std::invalid_argument("dimension mismatch: H is " + std::to_string(h.rows()) +
                                ", state has " + std::to_string(psi.size()));
  }
}

void check_time(double t) {
  if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("evolution time must be finite and >= 0");
}

}  // namespace

std::size_t StateVector::n_qubits() const {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < static_cast<std::size_t>(amplitudes.size())) ++n;
  return n;
}

void StateVector::validate() const {
  const auto d = static_cast<std::size_t>(amplitudes.size());
  if (d == 0 || (d & (d - 1)) != 0) throw std::invalid_argument("state length must be a power of two");
  if (!amplitudes.allFinite()) throw std::invalid_argument("state has non-finite amplitudes");
}

void Trajectory::validate() const {
  if (times.size() != states.size()) throw std::invalid_argument("trajectory size mismatch");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("trajectory times must increase");
  }
}

Propagator parse_propagator(const std::string& name) {
  if (name == "auto") return Propagator::Auto;
  if (name == "spectral") return Propagator::Spectral;
  if (name == "expm") return Propagator::Expm;
  if (name == "oracle") return Propagator::Oracle;
  throw std::invalid_argument("unknown propagator '" + name + "' (auto|spectral|expm|oracle)");
}

const char* propagator_name(Propagator p) {
  switch (p) {
    case Propagator::Auto: return "auto";
    case Propagator::Spectral: return "spectral";
    case Propagator::Expm: return "expm";
    case Propagator::Oracle: return "oracle";
  }
  return "?";
}

Matrix expm_propagator(const Matrix& h, double t) {
  const Matrix a = (-kI * t) * h;
  return a.exp();
}

Vector rk4_propagate(const Matrix& h, const Vector& psi0, double t, double step) {
  check_dims(h, psi0);
  check_time(t);
  if (!(step > 0.0)) throw std::invalid_argument("RK4 step must be positive");
  const Matrix a = -kI * h;
  Vector psi = psi0;
  double now = 0.0;
  const auto steps = static_cast<long>(std::ceil(t / step - 1e-9));
  for (long s = 0; s < steps; ++s) {
    const double dt = std::min(step, t - now);
    const Vector k1 = a * psi;
    const Vector k2 = a * (psi + 0.5 * dt * k1);
    const Vector k3 = a * (psi + 0.5 * dt * k2);
    const Vector k4 = a * (psi + dt * k3);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    now += dt;
    if ((s & 1023) == 0) guard(psi, now);
  }
  guard(psi, t);
  return psi;
}

Evolver::Evolver(Matrix h, Propagator kind) : h_(std::move(h)), route_(kind) {
  if (h_.rows() != h_.cols()) throw std::invalid_argument("Hamiltonian is not square");
  if (!h_.allFinite()) throw std::invalid_argument("Hamiltonian has non-finite entries");
  if (route_ == Propagator::Auto || route_ == Propagator::Spectral) {
    sys_ = spectral_decompose(h_);
    if (route_ == Propagator::Auto) {
      const bool ok = !sys_.defective && sys_.condition < kSpectralConditionLimit;
      route_ = ok ? Propagator::Spectral : Propagator::Expm;
    } else if (sys_.defective) {
      throw std::domain_error("spectral propagator requested at a defective point");
    }
  }
}

Vector Evolver::spectral(const Vector& psi, double t) const {
  Vector out = Vector::Zero(psi.size());
  for (std::size_t j = 0; j < sys_.size(); ++j) {
    const cplx c = sys_.left[j].dot(psi);
    out += (c * std::exp(-kI * sys_.eigenvalues[j] * t)) * sys_.right[j];
  }
  return out;
}

StateVector Evolver::evolve(const StateVector& psi0, double t) const {
  psi0.validate();
  check_dims(h_, psi0.amplitudes);
  check_time(t);
  Vector out;
  switch (route_) {
    case Propagator::Spectral: out = spectral(psi0.amplitudes, t); break;
    case Propagator::Expm: out = expm_propagator(h_, t) * psi0.amplitudes; break;
    case Propagator::Oracle: out = rk4_propagate(h_, psi0.amplitudes, t); break;
    case Propagator::Auto: throw std::logic_error("unresolved propagator");
  }
  guard(out, psi0.time + t);
  return StateVector(std::move(out), psi0.time + t);
}

Trajectory Evolver::trajectory(const StateVector& psi0, const std::vector<double>& times) const {
  Trajectory traj;
  for (double t : times) {
    traj.times.push_back(t);
    traj.states.push_back(evolve(psi0, t));
  }
  traj.validate();
  return traj;
}

StateVector evolve(const Matrix& h, const StateVector& psi0, double t, Propagator kind) {
  check_dims(h, psi0.amplitudes);
  return Evolver(h, kind).evolve(psi0, t);
}

double overlap(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("overlap of a zero vector");
  return std::abs(a.dot(b)) / (na * nb);
}

double fidelity(const StateVector& psi_final, const Vector& psi_ideal) {
  if (psi_final.amplitudes.size() != psi_ideal.size()) throw std::invalid_argument("dimension mismatch");
  if (std::abs(psi_ideal.norm() - 1.0) > 1e-9) throw std::invalid_argument("ideal state must be normalised");
  return std::norm(psi_ideal.dot(psi_final.amplitudes));
}

double success_rate(const StateVector& psi) { return psi.amplitudes.squaredNorm(); }

double normalized_fidelity(const StateVector& psi_final, const Vector& psi_ideal) {
  if (psi_final.amplitudes.size() != psi_ideal.size()) throw std::invalid_argument("dimension mismatch");
  const double n = psi_final.amplitudes.norm();
  if (n == 0.0) throw std::invalid_argument("normalized_fidelity of a zero state");
  return std::abs(psi_ideal.dot(psi_final.amplitudes)) / (n * psi_ideal.norm());
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::optional<Vector>& ideal) {
  traj.validate();
  const auto dim = traj.states.empty() ? 0 : traj.states.front().amplitudes.size();
  out << "time";
  for (Eigen::Index k = 0; k < dim; ++k) out << ",re_" << k << ",im_" << k;
  out << ",norm2";
  if (ideal) out << ",fidelity";
  out << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& s = traj.states[i];
    out << format_double(traj.times[i]);
    for (Eigen::Index k = 0; k < dim; ++k) {
      out << ',' << format_double(s.amplitudes(k).real()) << ',' << format_double(s.amplitudes(k).imag());
    }
    out << ',' << format_double(success_rate(s));
    if (ideal) out << ',' << format_double(fidelity(s, *ideal));
    out << '\n';
  }
}

}  // namespace ptq
