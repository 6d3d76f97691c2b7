#include "ptq/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ptq {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("non-finite parameter: ") + name);
  }
}

void require_non_negative(double v, const char* name) {
  require_finite(v, name);
  if (v < 0.0) {
    throw std::invalid_argument(std::string("negative parameter: ") + name);
  }
}

}  // namespace

void QubitParams::validate() const {
  require_non_negative(gamma, "gamma");
  require_non_negative(kappa, "kappa");
  require_non_negative(omega, "omega");
  require_finite(delta, "delta");
}

SystemSpec SystemSpec::uniform(std::size_t n, const QubitParams& q, double j) {
  SystemSpec s;
  s.qubits.assign(n, q);
  s.coupling_j = j;
  return s;
}

void SystemSpec::validate() const {
  if (qubits.empty()) {
    throw std::invalid_argument("system needs at least one qubit");
  }
  if (qubits.size() > kMaxQubits) {
    throw std::invalid_argument("at most " + std::to_string(kMaxQubits) +
                                " qubits supported, got " + std::to_string(qubits.size()));
  }
  for (const auto& q : qubits) q.validate();
  require_non_negative(coupling_j, "j");
}

Eigen::Matrix2cd single_qubit_block(const QubitParams& q) {
  Eigen::Matrix2cd h;
  h << kI * (q.kappa / 2.0) + q.delta, q.omega,
       q.omega, -kI * (q.gamma / 2.0);
  return h;
}

Matrix build_hamiltonian(const SystemSpec& spec) {
  spec.validate();
  const std::size_t n = spec.size();
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  Matrix h = Matrix::Zero(dim, dim);

  for (std::size_t q = 0; q < n; ++q) {
    const Eigen::Matrix2cd block = single_qubit_block(spec.qubits[q]);
    const std::size_t shift = n - 1 - q;  // qubit 0 is the most significant bit
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto c = static_cast<std::size_t>(col);
      const std::size_t bit = (c >> shift) & 1U;
      for (std::size_t out = 0; out < 2; ++out) {
        const cplx v = block(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(bit));
        if (v == cplx{}) continue;
        const std::size_t row = (c & ~(std::size_t{1} << shift)) | (out << shift);
        h(static_cast<Eigen::Index>(row), col) += v;
      }
    }
  }

  if (spec.coupling_j != 0.0) {
    // s+_a s-_b + s-_a s+_b moves a single excitation between a and b.
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const std::size_t sa = n - 1 - a;
        const std::size_t sb = n - 1 - b;
        for (Eigen::Index col = 0; col < dim; ++col) {
          const auto c = static_cast<std::size_t>(col);
          const std::size_t ba = (c >> sa) & 1U;
          const std::size_t bb = (c >> sb) & 1U;
          if (ba == bb) continue;
          const std::size_t row = c ^ ((std::size_t{1} << sa) | (std::size_t{1} << sb));
          h(static_cast<Eigen::Index>(row), col) += spec.coupling_j;
        }
      }
    }
  }
  return h;
}

std::array<cplx, 2> single_qubit_eigenvalues(const QubitParams& q, Mode mode) {
  q.validate();
  if (q.delta != 0.0) {
    throw std::invalid_argument("closed-form eigenvalues require zero detuning");
  }
  if (mode == Mode::Passive) {
    if (q.kappa != 0.0) throw std::invalid_argument("passive mode requires kappa == 0");
    const cplx root = std::sqrt(cplx(-q.gamma * q.gamma + 16.0 * q.omega * q.omega, 0.0));
    return {(-kI * q.gamma + root) / 4.0, (-kI * q.gamma - root) / 4.0};
  }
  if (q.kappa != q.gamma) throw std::invalid_argument("active mode requires kappa == gamma");
  const cplx root = std::sqrt(cplx(-q.gamma * q.gamma + 4.0 * q.omega * q.omega, 0.0));
  return {0.5 * root, -0.5 * root};
}

Vector basis_state(std::size_t n_qubits, std::size_t index) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  if (static_cast<Eigen::Index>(index) >= dim) {
    throw std::out_of_range("basis index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

double pt_frequency(double gamma, double omega) {
  const double d = 4.0 * omega * omega - gamma * gamma;
  return d > 0.0 ? std::sqrt(d) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace ptq
