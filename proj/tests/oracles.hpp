#pragma once

// Independent reference implementations used only by the tests. None of
// these call into the library's numerical routines.

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "ptq/model.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

/// `op` on qubit k of n (qubit 0 leftmost), identity elsewhere.
inline Matrix embed(const Matrix& op, std::size_t k, std::size_t n) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t q = 0; q < n; ++q) out = kron(out, q == k ? op : Matrix(Matrix::Identity(2, 2)));
  return out;
}

/// Hamiltonian assembled from Kronecker products of 2x2 operators.
inline Matrix hamiltonian(const ptq::SystemSpec& spec) {
  const std::size_t n = spec.size();
  const cplx i(0.0, 1.0);
  Matrix raise = Matrix::Zero(2, 2);  // |e><g|
  raise(1, 0) = 1.0;
  const Matrix lower = raise.adjoint();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix h = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& q = spec.qubits[k];
    Matrix b(2, 2);
    b << i * q.kappa / 2.0 + q.delta, q.omega, q.omega, -i * q.gamma / 2.0;
    h += embed(b, k, n);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = a + 1; c < n; ++c) {
      h += spec.coupling_j * (embed(raise, a, n) * embed(lower, c, n) + embed(lower, a, n) * embed(raise, c, n));
    }
  }
  return h;
}

/// e^{-iHt} by Taylor series with scaling and squaring.
inline Matrix taylor_expm(const Matrix& h, double t) {
  Matrix a = cplx(0.0, -t) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.25) ++s;
  a /= std::ldexp(1.0, s);
  Matrix term = Matrix::Identity(h.rows(), h.cols());
  Matrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

/// sqrt(2 (1 - tr rho_A^2)) from an explicit 2x2 partial trace.
inline double concurrence_purity(const Vector& psi) {
  const Vector v = psi / psi.norm();
  Eigen::Matrix2cd m;
  m << v(0), v(1), v(2), v(3);
  const Eigen::Matrix2cd rho = m * m.adjoint();
  const double purity = (rho * rho).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

/// Three-tangle as a contraction with six Levi-Civita symbols.
inline double tangle_contraction(const Vector& psi) {
  const Vector v = psi / psi.norm();
  const auto a = [&v](int x, int y, int z) { return v(4 * x + 2 * y + z); };
  const auto eps = [](int p, int q) { return p == q ? 0.0 : (p == 0 ? 1.0 : -1.0); };
  cplx sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j = 0; j < 2; ++j)
        for (int j2 = 0; j2 < 2; ++j2)
          for (int k = 0; k < 2; ++k)
            for (int k2 = 0; k2 < 2; ++k2)
              for (int m = 0; m < 2; ++m)
                for (int m2 = 0; m2 < 2; ++m2)
                  for (int n = 0; n < 2; ++n)
                    for (int n2 = 0; n2 < 2; ++n2)
                      for (int p = 0; p < 2; ++p)
                        for (int p2 = 0; p2 < 2; ++p2) {
                          const double e = eps(i, i2) * eps(j, j2) * eps(k, k2) * eps(m, m2) * eps(n, n2) * eps(p, p2);
                          if (e == 0.0) continue;
                          sum += e * a(i, j, k) * a(i2, j2, m) * a(n, p, k2) * a(n2, p2, m2);
                        }
  return 2.0 * std::abs(sum);
}

/// (<sx>, <sy>, <sz>) of qubit k with sz = +1 on |g>.
inline std::array<double, 3> bloch(const Vector& psi, std::size_t k) {
  const Vector v = psi / psi.norm();
  const std::size_t n = static_cast<std::size_t>(std::log2(static_cast<double>(v.size())) + 0.5);
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  return {v.dot(embed(sx, k, n) * v).real(), v.dot(embed(sy, k, n) * v).real(), v.dot(embed(sz, k, n) * v).real()};
}

inline Vector random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Vector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v(k) = cplx(g(rng), g(rng));
  return v / v.norm();
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

}  // namespace oracle
