#pragma once

#include <vector>

#include "ptq/types.hpp"

namespace ptq {

/// Paired right/left eigenvectors of a non-Hermitian matrix.
///
/// `left[j]` is stored as a ket; the dual functional is its conjugate
/// transpose, so `left[j].dot(right[k])` is <Psi'_j|Psi_k>. When
/// `defective` is false the pairs are biorthonormal and resolve the identity.
struct BiorthoSystem {
  std::vector<cplx> eigenvalues;
  std::vector<Vector> right;
  std::vector<Vector> left;
  bool defective = false;
  double gap_min = 0.0;
  /// Largest eigenvalue condition number ||L_j|| ||R_j||; grows without bound near an EP.
  double condition = 1.0;

  std::size_t size() const { return eigenvalues.size(); }

  /// Sum_j |R_j><L_j|.
  Matrix resolution() const;
  /// Gram matrix G(j,k) = <L_j|R_k>.
  Matrix overlaps() const;
};

/// Relative eigenvalue gap below which eigenvalues count as coalescing.
inline constexpr double kEpGapTolerance = 1e-9;
/// Unit-vector pairing |<L|R>|/(|L||R|) below this is an EP signature on its own.
inline constexpr double kEpPairingTolerance = 1e-7;
/// Coalescing eigenvalues with eigenvector condition above this are defective.
inline constexpr double kEpDegenerateCondition = 1e3;

/// Dense eigendecomposition with biorthogonal pairing. Each right vector is
/// unit-normalised with its largest component real positive; left vectors
/// are the rows of R^-1, i.e. eigenvectors of H^dagger for conj(lambda) with
/// <L_j|R_k> = delta_jk, also inside degenerate subspaces. Exact degeneracies
/// of diagonalisable matrices are not flagged; coalescence with
/// non-orthogonal eigenvectors is.
BiorthoSystem spectral_decompose(const Matrix& h);

/// Closed-form tensor-product eigenbasis of two uncoupled balanced qubits,
/// ordered (++, --, +-, -+) with eigenvalues (eta, -eta, 0, 0).
BiorthoSystem analytic_biortho_two(double gamma, double omega);

struct PerturbedMode {
  cplx eigenvalue;
  Vector right;
  Vector left;
};

/// First-order perturbed eigensystem of N = 2 or 3 balanced qubits under weak
/// uniform exchange J. Degenerate manifolds use the fixed symmetric /
/// antisymmetric combinations (1/sqrt2, 1/sqrt6, 1/sqrt3 weights). Modes are
/// returned in the order of the closed-form eigenvalue list: for N = 2
/// (-J, J g^2/(g^2-4W^2), eta + ..., -eta + ...), for N = 3 the -eta/2
/// manifold, the +eta/2 manifold, then +3eta/2 and -3eta/2.
std::vector<PerturbedMode> perturbed_eigensystem(double gamma, double omega, double j,
                                                 int n_qubits);

/// The closed-form first-order eigenvalues alone, same order as above.
std::vector<double> perturbed_eigenvalues(double gamma, double omega, double j, int n_qubits);

}  // namespace ptq
