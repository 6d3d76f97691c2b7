#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ptq/types.hpp"

namespace ptq {

// Basis convention shared by every module: qubit 1 is the most significant
// tensor factor, per-qubit index 0 is |g> and index 1 is |e>. For two qubits
// the order is (gg, ge, eg, ee).

struct QubitParams {
  double gamma = 0.0;  // decay of |e>, 1/us
  double kappa = 0.0;  // gain on |g>, 1/us
  double omega = 0.0;  // drive amplitude, rad/us
  double delta = 0.0;  // detuning on |g>, rad/us

  void validate() const;
};

struct SystemSpec {
  std::vector<QubitParams> qubits;
  double coupling_j = 0.0;

  static constexpr std::size_t kMaxQubits = 4;

  /// N identical qubits with exchange coupling j.
  static SystemSpec uniform(std::size_t n, const QubitParams& q, double j);

  std::size_t size() const { return qubits.size(); }
  std::size_t dimension() const { return std::size_t{1} << qubits.size(); }
  void validate() const;
};

enum class Mode { Passive, Active };

/// 2x2 block [[i kappa/2 + delta, omega], [omega, -i gamma/2]] in (|g>, |e>).
Eigen::Matrix2cd single_qubit_block(const QubitParams& q);

/// Dense 2^N x 2^N Hamiltonian: sum of single-qubit blocks plus
/// J (s+_n s-_m + s-_n s+_m) once per unordered pair.
Matrix build_hamiltonian(const SystemSpec& spec);

/// Closed-form single-qubit eigenvalues, ordered (E+, E-).
/// Passive requires kappa == 0, active requires kappa == gamma; both require
/// delta == 0.
std::array<cplx, 2> single_qubit_eigenvalues(const QubitParams& q, Mode mode);

/// Computational basis state |b_1 ... b_N> with b = 0 for g, 1 for e.
Vector basis_state(std::size_t n_qubits, std::size_t index);

/// |g...g>.
inline Vector ground_state(std::size_t n_qubits) { return basis_state(n_qubits, 0); }

/// sqrt(4 omega^2 - gamma^2) for the balanced case; NaN outside the PT-symmetric phase.
double pt_frequency(double gamma, double omega);

}  // namespace ptq
