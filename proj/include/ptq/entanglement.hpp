#pragma once

#include <cstddef>
#include <vector>

#include "ptq/dynamics.hpp"
#include "ptq/types.hpp"

namespace ptq {

// Qubit indices in this header are zero-based: qubit 0 is the most
// significant tensor factor. Bloch z is +1 for |g>.

struct BlochPoint {
  double x = 0.0, y = 0.0, z = 0.0;
  double r() const;
};

struct TangleDecomposition {
  cplx d1, d2, d3;
  double tau3 = 0.0;

  /// 4 |d1 - 2 d2 + 4 d3|.
  double recompute() const;
};

/// Pure-state concurrence |<psi*| sy (x) sy |psi>| of a normalised copy of a
/// length-4 state.
double concurrence_pure(const Vector& psi);

/// Residual tangle of a normalised copy of a length-8 state, using the
/// d1, d2, d3 sums over amplitudes a1..a8 = (ggg, gge, ..., eee).
TangleDecomposition residual_tangle(const Vector& psi);

/// Concurrence for N = 2, residual tangle for N = 3.
double entanglement_measure(const Vector& psi);

/// Single-qubit reduced density matrix in (g, e) order.
Eigen::Matrix2cd reduced_density(const Vector& psi, std::size_t keep);

/// Two-qubit reduced density matrix; basis (g_i g_j, g_i e_j, e_i g_j, e_i e_j), i < j.
Eigen::Matrix4cd reduced_density_pair(const Vector& psi, std::size_t i, std::size_t j);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit density matrix.
double wootters_concurrence(const Eigen::Matrix4cd& rho);

/// Wootters concurrence of the reduced state of qubits (i, j).
double pairwise_concurrence(const Vector& psi, std::size_t i, std::size_t j);

/// C^2_{A|BC} - C^2_{AB} - C^2_{AC} for a three-qubit pure state, A = qubit 0.
double ckw_tangle(const Vector& psi);

BlochPoint bloch_vector(const Vector& psi, std::size_t keep);
std::vector<BlochPoint> bloch_trajectory(const Trajectory& traj, std::size_t keep);

}  // namespace ptq
