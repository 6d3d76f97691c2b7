#include "ptq/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

namespace ptq {

namespace {

Vector normalized(const Vector& psi) {
  const double n = psi.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("state has zero or non-finite norm");
  return psi / n;
}

std::size_t qubit_count(const Vector& psi) {
  const auto d = static_cast<std::size_t>(psi.size());
  if (d < 2 || (d & (d - 1)) != 0) throw std::invalid_argument("state length must be a power of two");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  return n;
}

}  // namespace

double BlochPoint::r() const { return std::sqrt(x * x + y * y + z * z); }

double TangleDecomposition::recompute() const { return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3); }

double concurrence_pure(const Vector& psi) {
  if (psi.size() != 4) throw std::invalid_argument("concurrence_pure needs a two-qubit state");
  const Vector v = normalized(psi);
  // |<psi*| sy(x)sy |psi>| = 2 |a d - b c| with (a, b, c, d) = (gg, ge, eg, ee).
  return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
}

TangleDecomposition residual_tangle(const Vector& psi) {
  if (psi.size() != 8) throw std::invalid_argument("residual_tangle needs a three-qubit state");
  const Vector v = normalized(psi);
  const auto a = [&v](int k) { return v(k - 1); };
  TangleDecomposition t;
  t.d1 = a(1) * a(1) * a(8) * a(8) + a(2) * a(2) * a(7) * a(7) + a(3) * a(3) * a(6) * a(6) +
         a(4) * a(4) * a(5) * a(5);
  t.d2 = a(1) * a(8) * a(4) * a(5) + a(1) * a(8) * a(3) * a(6) + a(1) * a(8) * a(2) * a(7) +
         a(3) * a(4) * a(5) * a(6) + a(4) * a(5) * a(2) * a(7) + a(2) * a(7) * a(3) * a(6);
  t.d3 = a(1) * a(7) * a(4) * a(6) + a(2) * a(8) * a(3) * a(5);
  t.tau3 = t.recompute();
  return t;
}

double entanglement_measure(const Vector& psi) {
  switch (psi.size()) {
    case 4: return concurrence_pure(psi);
    case 8: return residual_tangle(psi).tau3;
    default: throw std::invalid_argument("entanglement measure defined for 2 or 3 qubits only");
  }
}

Eigen::Matrix2cd reduced_density(const Vector& psi, std::size_t keep) {
  const std::size_t n = qubit_count(psi);
  if (keep >= n) throw std::out_of_range("qubit index out of range");
  const Vector v = normalized(psi);
  const std::size_t shift = n - 1 - keep;
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    if ((idx >> shift) & 1U) continue;
    const auto partner = static_cast<Eigen::Index>(idx | (std::size_t{1} << shift));
    rho(0, 0) += std::norm(v(k));
    rho(1, 1) += std::norm(v(partner));
    rho(0, 1) += v(k) * std::conj(v(partner));
  }
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

Eigen::Matrix4cd reduced_density_pair(const Vector& psi, std::size_t i, std::size_t j) {
  const std::size_t n = qubit_count(psi);
  if (i >= n || j >= n || i >= j) throw std::invalid_argument("invalid qubit pair");
  const Vector v = normalized(psi);
  const std::size_t si = n - 1 - i, sj = n - 1 - j;
  const auto local = [&](std::size_t idx) { return (((idx >> si) & 1U) << 1) | ((idx >> sj) & 1U); };
  const auto rest = [&](std::size_t idx) { return idx & ~((std::size_t{1} << si) | (std::size_t{1} << sj)); };
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (Eigen::Index r = 0; r < v.size(); ++r) {
    for (Eigen::Index c = 0; c < v.size(); ++c) {
      const auto ru = static_cast<std::size_t>(r), cu = static_cast<std::size_t>(c);
      if (rest(ru) != rest(cu)) continue;
      rho(static_cast<Eigen::Index>(local(ru)), static_cast<Eigen::Index>(local(cu))) += v(r) * std::conj(v(c));
    }
  }
  return rho;
}

double wootters_concurrence(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd tilde = yy * rho.conjugate() * yy;
  const Eigen::Matrix4cd r = rho * tilde;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(r, false);
  std::array<double, 4> l{};
  for (int k = 0; k < 4; ++k) l[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, solver.eigenvalues()(k).real()));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double pairwise_concurrence(const Vector& psi, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return wootters_concurrence(reduced_density_pair(psi, i, j));
}

double ckw_tangle(const Vector& psi) {
  if (psi.size() != 8) throw std::invalid_argument("ckw_tangle needs a three-qubit state");
  const double c_a_bc = 4.0 * std::abs(reduced_density(psi, 0).determinant());
  const double c_ab = pairwise_concurrence(psi, 0, 1);
  const double c_ac = pairwise_concurrence(psi, 0, 2);
  return c_a_bc - c_ab * c_ab - c_ac * c_ac;
}

BlochPoint bloch_vector(const Vector& psi, std::size_t keep) {
  const Eigen::Matrix2cd rho = reduced_density(psi, keep);
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

std::vector<BlochPoint> bloch_trajectory(const Trajectory& traj, std::size_t keep) {
  traj.validate();
  std::vector<BlochPoint> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) out.push_back(bloch_vector(s.amplitudes, keep));
  return out;
}

}  // namespace ptq
