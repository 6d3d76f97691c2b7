#pragma once

#include <array>

#include "ptq/types.hpp"

namespace ptq {

// First-order perturbative closed forms for N balanced qubits (kappa = gamma,
// delta = 0) starting from |g...g> under weak uniform exchange J.

struct AnalyticParams {
  double gamma = 0.0;
  double omega = 0.0;
  double j = 0.0;
  double t = 0.0;

  double eta() const;
  /// Throws std::domain_error outside the PT-symmetric phase or for J >= 0.1 eta.
  void validate() const;
};

/// How the gg-ge cross term of the two-qubit b amplitude is read.
/// `Literal` keeps (J gamma - i gamma^2) as printed; `Corrected` uses
/// (J gamma - i eta^2), which is what the perturbative expansion produces.
enum class BTerm { Literal, Corrected };

struct TwoQubitAnalytic {
  cplx a, b, c;              // psi = a|gg> + b(|ge> + |eg>) + c|ee>
  double concurrence = 0.0;  // 2|ac - b^2| / (|a|^2 + 2|b|^2 + |c|^2)
  cplx closed_a;             // the closed-form A
  double closed_b = 0.0;     // the closed-form B
  double closed_form = 0.0;  // 2|A|/B
  double cross_check_gap = 0.0;
};

TwoQubitAnalytic analytic_two(const AnalyticParams& p, BTerm bterm = BTerm::Corrected);

/// Concurrence from the amplitude route of analytic_two (corrected b term).
double analytic_concurrence_two(const AnalyticParams& p);

/// Which reading of the sibling exponents (alpha - 4J gamma^2) and (alpha - 4J rr)
/// in the three-qubit a amplitude. Names give (second term, third term).
enum class ExponentVariant {
  Literal,    // (gamma^2, rr) as printed
  BothRr,     // (rr, rr)
  BothGamma,  // (gamma^2, gamma^2)
  Swapped,    // (rr, gamma^2)
};

struct ThreeQubitAnalytic {
  cplx a, b, c, d;           // psi = a|ggg> + b(W) + c(flipped W) + d|eee>
  std::array<cplx, 8> amplitudes;
  double tau3 = 0.0;         // 4|d1 - 2 d2 + 4 d3| of the normalised amplitudes
  cplx closed_a;
  double closed_b = 0.0;
  double closed_form = 0.0;  // |A / (4 eta^12 B^2)|
  double cross_check_gap = 0.0;
};

/// `sine_fix` replaces the printed sin(q - eta) and sin(2t + q) of B by
/// sin(q - t eta) and sin(2 t eta + q).
ThreeQubitAnalytic analytic_three(const AnalyticParams& p,
                                  ExponentVariant variant = ExponentVariant::Literal,
                                  bool sine_fix = false);

/// Residual tangle from the amplitude route of analytic_three (literal exponents).
double analytic_tangle_three(const AnalyticParams& p);

}  // namespace ptq
