#include "ptq/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "ptq/model.hpp"

namespace ptq {

Matrix BiorthoSystem::resolution() const {
  const auto dim = right.empty() ? Eigen::Index{0} : right.front().size();
  Matrix id = Matrix::Zero(dim, dim);
  for (std::size_t j = 0; j < size(); ++j) id += right[j] * left[j].adjoint();
  return id;
}

Matrix BiorthoSystem::overlaps() const {
  const auto n = static_cast<Eigen::Index>(size());
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      g(j, k) = left[static_cast<std::size_t>(j)].dot(right[static_cast<std::size_t>(k)]);
    }
  }
  return g;
}

namespace {

void fix_phase(Vector& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const cplx c = v(imax);
  if (std::abs(c) > 0.0) v *= std::conj(c) / std::abs(c);
}

double min_gap(const std::vector<cplx>& ev) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t k = i + 1; k < ev.size(); ++k) gap = std::min(gap, std::abs(ev[i] - ev[k]));
  }
  return ev.size() < 2 ? 0.0 : gap;
}

}  // namespace

BiorthoSystem spectral_decompose(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("spectral_decompose: matrix is not square");
  if (h.rows() == 0 || h.rows() > 16) {
    throw std::invalid_argument("spectral_decompose: dimension must be in [1, 16]");
  }
  if (!h.allFinite()) throw std::invalid_argument("spectral_decompose: non-finite entries");
  const auto n = h.rows();

  Eigen::ComplexEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectral_decompose: eigensolver did not converge");

  Matrix r = solver.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector col = r.col(j).normalized();
    fix_phase(col);
    r.col(j) = col;
  }
  // Rows of R^-1 are the left eigenvectors (eigenvectors of H^dagger for
  // conj(lambda)) already scaled so that <L_j|R_k> = delta_jk. Unlike a
  // separate solve of H^dagger this stays valid inside degenerate subspaces.
  const Eigen::PartialPivLU<Matrix> lu(r);
  const Matrix dual = lu.inverse().adjoint();

  BiorthoSystem sys;
  sys.condition = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    sys.eigenvalues.push_back(solver.eigenvalues()(j));
    sys.right.push_back(r.col(j));
    sys.left.push_back(dual.col(j));
    const double c = dual.col(j).norm();
    sys.condition = std::isfinite(c) ? std::max(sys.condition, c) : std::numeric_limits<double>::infinity();
  }
  sys.gap_min = min_gap(sys.eigenvalues);
  const bool coalescing = sys.gap_min < kEpGapTolerance * std::max(1.0, h.norm());
  sys.defective = !std::isfinite(sys.condition) || 1.0 / sys.condition < kEpPairingTolerance ||
                  (coalescing && sys.condition > kEpDegenerateCondition);
  return sys;
}

namespace {

struct SingleQubitBasis {
  double eta;
  std::array<Eigen::Vector2cd, 2> right;  // index 0 -> '+', 1 -> '-'
  std::array<Eigen::Vector2cd, 2> left;
};

// Biorthonormal eigenpairs of [[i g/2, W], [W, -i g/2]] and its adjoint.
SingleQubitBasis single_basis(double gamma, double omega) {
  const double eta = pt_frequency(gamma, omega);
  SingleQubitBasis b{eta, {}, {}};
  const double pref = 1.0 / (2.0 * std::sqrt(2.0) * omega);
  for (int s = 0; s < 2; ++s) {
    const double sign = s == 0 ? 1.0 : -1.0;
    Eigen::Vector2cd r(kI * gamma + sign * eta, 2.0 * omega);
    Eigen::Vector2cd l(-kI * gamma + sign * eta, 2.0 * omega);
    r *= pref;
    l *= pref;
    const cplx norm = std::sqrt(l.dot(r));
    b.right[static_cast<std::size_t>(s)] = r / norm;
    b.left[static_cast<std::size_t>(s)] = l / std::conj(norm);
  }
  return b;
}

void require_pt_phase(double gamma, double omega) {
  if (!(gamma >= 0.0) || !(omega > 0.0) || !std::isfinite(gamma) || !std::isfinite(omega)) {
    throw std::invalid_argument("need gamma >= 0 and omega > 0");
  }
  const double d = 4.0 * omega * omega - gamma * gamma;
  if (std::abs(d) <= 1e-12 * gamma * gamma) {
    throw std::domain_error("exceptional point: omega == gamma/2");
  }
  if (d < 0.0) throw std::domain_error("PT-broken phase: omega < gamma/2");
}

Vector tensor(const std::vector<Eigen::Vector2cd>& factors) {
  Vector out = Vector::Ones(1);
  for (const auto& f : factors) {
    Vector next(out.size() * 2);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      next(2 * i) = out(i) * f(0);
      next(2 * i + 1) = out(i) * f(1);
    }
    out = std::move(next);
  }
  return out;
}

struct ProductState {
  std::vector<int> signs;  // +1 / -1 per qubit
  double energy;
  Vector right;
  Vector left;
};

ProductState product_state(const SingleQubitBasis& b, const std::vector<int>& signs) {
  std::vector<Eigen::Vector2cd> r, l;
  int total = 0;
  for (int s : signs) {
    const std::size_t idx = s > 0 ? 0 : 1;
    r.push_back(b.right[idx]);
    l.push_back(b.left[idx]);
    total += s;
  }
  return {signs, 0.5 * b.eta * total, tensor(r), tensor(l)};
}

}  // namespace

BiorthoSystem analytic_biortho_two(double gamma, double omega) {
  require_pt_phase(gamma, omega);
  const double eta = pt_frequency(gamma, omega);
  const cplx ig = kI * gamma;
  const double w = omega;

  // Unnormalised product eigenvectors and their duals, (++, --, +-, -+).
  std::array<Vector, 4> r, l;
  for (auto& v : r) v.resize(4);
  for (auto& v : l) v.resize(4);
  const double p2 = 1.0 / (8.0 * w * w);
  r[0] << (ig + eta) * (ig + eta), 2.0 * w * (ig + eta), 2.0 * w * (ig + eta), 4.0 * w * w;
  r[1] << (ig - eta) * (ig - eta), 2.0 * w * (ig - eta), 2.0 * w * (ig - eta), 4.0 * w * w;
  l[0] << (-ig + eta) * (-ig + eta), 2.0 * w * (-ig + eta), 2.0 * w * (-ig + eta), 4.0 * w * w;
  l[1] << (-ig - eta) * (-ig - eta), 2.0 * w * (-ig - eta), 2.0 * w * (-ig - eta), 4.0 * w * w;
  for (int i = 0; i < 2; ++i) {
    r[static_cast<std::size_t>(i)] *= p2;
    l[static_cast<std::size_t>(i)] *= p2;
  }
  const double p1 = 1.0 / (4.0 * w);
  r[2] << -2.0 * w, ig + eta, ig - eta, 2.0 * w;
  r[3] << -2.0 * w, ig - eta, ig + eta, 2.0 * w;
  l[2] << -2.0 * w, -ig + eta, -ig - eta, 2.0 * w;
  l[3] << -2.0 * w, -ig - eta, -ig + eta, 2.0 * w;
  for (int i = 2; i < 4; ++i) {
    r[static_cast<std::size_t>(i)] *= p1;
    l[static_cast<std::size_t>(i)] *= p1;
  }

  BiorthoSystem sys;
  sys.eigenvalues = {eta, -eta, 0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    const cplx norm = std::sqrt(l[i].dot(r[i]));
    sys.right.push_back(r[i] / norm);
    sys.left.push_back(l[i] / std::conj(norm));
    sys.condition = std::max(sys.condition, sys.right.back().norm() * sys.left.back().norm());
  }
  sys.gap_min = 0.0;  // E(+-) == E(-+); the explicit basis stays biorthonormal
  sys.defective = false;
  return sys;
}

std::vector<double> perturbed_eigenvalues(double gamma, double omega, double j, int n_qubits) {
  require_pt_phase(gamma, omega);
  if (n_qubits != 2 && n_qubits != 3) {
    throw std::invalid_argument("perturbed_eigensystem supports 2 or 3 qubits");
  }
  const double eta = pt_frequency(gamma, omega);
  if (!(j >= 0.0) || j >= 0.1 * eta) {
    throw std::domain_error("coupling too strong for first-order perturbation (need J < 0.1 eta)");
  }
  const double g2 = gamma * gamma;
  const double w2 = omega * omega;
  const double den = g2 - 4.0 * w2;  // negative in the PT-symmetric phase
  if (n_qubits == 2) {
    const double shift = -2.0 * j * w2 / den;
    return {-j, j * g2 / den, eta + shift, -eta + shift};
  }
  const double lam3 = 2.0 * j * (g2 - w2) / den;
  const double shift = -6.0 * j * w2 / den;
  return {-eta / 2 - j, -eta / 2 - j, -eta / 2 + lam3,
          eta / 2 - j,  eta / 2 - j,  eta / 2 + lam3,
          1.5 * eta + shift, -1.5 * eta + shift};
}

std::vector<PerturbedMode> perturbed_eigensystem(double gamma, double omega, double j,
                                                 int n_qubits) {
  const auto values = perturbed_eigenvalues(gamma, omega, j, n_qubits);
  const SingleQubitBasis basis = single_basis(gamma, omega);

  SystemSpec coupling_only = SystemSpec::uniform(static_cast<std::size_t>(n_qubits), {}, j);
  const Matrix h_int = build_hamiltonian(coupling_only);

  // Degenerate manifolds and the fixed combinations used inside them.
  std::vector<std::vector<std::vector<int>>> manifolds;
  std::vector<Matrix> weights;  // column i = coefficients of combination i
  if (n_qubits == 2) {
    manifolds = {{{1, -1}, {-1, 1}}, {{1, 1}}, {{-1, -1}}};
    Matrix w2(2, 2);
    w2 << -1.0, 1.0,
           1.0, 1.0;
    w2 /= std::sqrt(2.0);
    weights = {w2, Matrix::Ones(1, 1), Matrix::Ones(1, 1)};
  } else {
    manifolds = {{{1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}},
                 {{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}},
                 {{1, 1, 1}},
                 {{-1, -1, -1}}};
    Matrix w3(3, 3);
    const double s2 = 1.0 / std::sqrt(2.0), s6 = 1.0 / std::sqrt(6.0), s3 = 1.0 / std::sqrt(3.0);
    w3 << -s2, -s6, s3,
          0.0, 2.0 * s6, s3,
          s2, -s6, s3;
    weights = {w3, w3, Matrix::Ones(1, 1), Matrix::Ones(1, 1)};
  }

  std::vector<std::vector<ProductState>> states;
  for (const auto& m : manifolds) {
    std::vector<ProductState> row;
    for (const auto& signs : m) row.push_back(product_state(basis, signs));
    states.push_back(std::move(row));
  }

  std::vector<PerturbedMode> modes;
  std::size_t value_index = 0;
  for (std::size_t m = 0; m < states.size(); ++m) {
    const auto& group = states[m];
    const double e0 = group.front().energy;
    for (Eigen::Index c = 0; c < weights[m].cols(); ++c) {
      Vector r0 = Vector::Zero(h_int.rows());
      Vector l0 = Vector::Zero(h_int.rows());
      for (std::size_t k = 0; k < group.size(); ++k) {
        const cplx wgt = weights[m](static_cast<Eigen::Index>(k), c);
        r0 += wgt * group[k].right;
        l0 += wgt * group[k].left;
      }
      Vector r = r0, l = l0;
      for (std::size_t other = 0; other < states.size(); ++other) {
        if (other == m) continue;
        for (const auto& s : states[other]) {
          const double de = e0 - s.energy;
          r += (s.left.dot(h_int * r0) / de) * s.right;
          l += (s.right.dot(h_int * l0) / de) * s.left;
        }
      }
      modes.push_back({values[value_index++], std::move(r), std::move(l)});
    }
  }
  return modes;
}

}  // namespace ptq
