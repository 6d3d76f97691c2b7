#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ptq/spectral.hpp"
#include "ptq/types.hpp"

namespace ptq {

/// Unnormalised state; the norm carries the post-selection weight.
struct StateVector {
  Vector amplitudes;
  double time = 0.0;

  StateVector() = default;
  explicit StateVector(Vector amps, double t = 0.0) : amplitudes(std::move(amps)), time(t) {}

  std::size_t n_qubits() const;
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;

  void validate() const;
};

enum class Propagator {
  Auto,      // spectral unless the decomposition is defective or ill-conditioned
  Spectral,  // biorthogonal eigen-expansion
  Expm,      // Pade scaling-and-squaring
  Oracle,    // fixed-step RK4, h = kOracleStep
};

Propagator parse_propagator(const std::string& name);
const char* propagator_name(Propagator p);

inline constexpr double kOverflowNorm = 1e150;
inline constexpr double kOracleStep = 1e-4;
/// Auto switches to the matrix exponential above this eigenvector condition number.
inline constexpr double kSpectralConditionLimit = 1e6;

/// Reusable propagator for one Hamiltonian. The eigendecomposition is
/// computed once; each call is O(dim^2).
class Evolver {
 public:
  explicit Evolver(Matrix h, Propagator kind = Propagator::Auto);

  StateVector evolve(const StateVector& psi0, double t) const;
  Trajectory trajectory(const StateVector& psi0, const std::vector<double>& times) const;

  /// The route actually used (Auto resolved).
  Propagator route() const { return route_; }
  const BiorthoSystem& decomposition() const { return sys_; }

 private:
  Vector spectral(const Vector& psi, double t) const;

  Matrix h_;
  Propagator route_;
  BiorthoSystem sys_;
};

/// e^{-iHt} psi0. Throws OverflowError once ||psi|| exceeds kOverflowNorm.
StateVector evolve(const Matrix& h, const StateVector& psi0, double t,
                   Propagator kind = Propagator::Auto);

/// Classical RK4 on d psi/dt = -i H psi with a fixed step (last step shortened).
Vector rk4_propagate(const Matrix& h, const Vector& psi0, double t, double step = kOracleStep);

/// e^{-iHt} by scaling and squaring.
Matrix expm_propagator(const Matrix& h, double t);

/// |<psi_ideal|psi_final>|^2 on the raw final state. Not clamped to 1.
double fidelity(const StateVector& psi_final, const Vector& psi_ideal);
/// ||psi||^2.
double success_rate(const StateVector& psi);
/// |<psi_ideal|psi_final>| / ||psi_final||.
double normalized_fidelity(const StateVector& psi_final, const Vector& psi_ideal);

/// Phase-invariant overlap |<a|b>| / (||a|| ||b||).
double overlap(const Vector& a, const Vector& b);

/// CSV: time, re_k, im_k per amplitude, norm2 and, if given, fidelity.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::optional<Vector>& ideal = std::nullopt);

}  // namespace ptq
