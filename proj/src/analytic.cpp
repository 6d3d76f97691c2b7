#include "ptq/analytic.hpp"

#include <cmath>

#include "ptq/entanglement.hpp"

namespace ptq {

namespace {

cplx cexp_i(double phase) { return std::exp(kI * phase); }

}  // namespace

double AnalyticParams::eta() const { return std::sqrt(4.0 * omega * omega - gamma * gamma); }

void AnalyticParams::validate() const {
  if (!std::isfinite(gamma) || !std::isfinite(omega) || !std::isfinite(j) || !std::isfinite(t)) {
    throw std::invalid_argument("analytic parameters must be finite");
  }
  if (gamma < 0.0 || j < 0.0 || t < 0.0) throw std::invalid_argument("gamma, j and t must be >= 0");
  if (!(2.0 * omega > gamma)) throw std::domain_error("PT-broken or exceptional point: need omega > gamma/2");
  if (j >= 0.1 * eta()) throw std::domain_error("perturbative validity requires J < 0.1 eta");
}

TwoQubitAnalytic analytic_two(const AnalyticParams& prm, BTerm bterm) {
  prm.validate();
  const double g = prm.gamma, w = prm.omega, J = prm.j, t = prm.t;
  const double e = prm.eta();
  const double e2 = e * e, e3 = e2 * e, e4 = e2 * e2, e6 = e4 * e2, e8 = e4 * e4;
  const double g2 = g * g, w2 = w * w, w4 = w2 * w2;

  const cplx s = g2 - 2.0 * w2 + kI * g * e;
  const cplx z = -g2 + 2.0 * w2 + kI * g * e;
  const cplx p = e * (kI * g * g2 - 4.0 * kI * g * w2 + J * w2);
  const double q = 48.0 * g2 * w4 - J * J * w4 - 64.0 * w4 * w2 + g2 * g2 * g2 - 12.0 * g2 * g2 * w2;
  const double l = 8.0 * J * e * w4 - 6.0 * J * g2 * e * w2 + J * g2 * g2 * e;

  const cplx e0 = cexp_i(J * g2 * t / e2);
  const cplx em = cexp_i(-t * (e + 2.0 * J * w2 / e2));
  const cplx ep = cexp_i(t * (e - 2.0 * J * w2 / e2));

  TwoQubitAnalytic r;
  r.a = w2 / e8 *
        (2.0 * e2 * e0 * (e2 + kI * J * g) * (e2 + kI * J * g) -
         w2 * em * (J * s + 2.0 * e3) * (J * s + 2.0 * e3) / (2.0 * s) +
         w2 * ep * (J * z + 2.0 * e3) * (J * z + 2.0 * e3) / (2.0 * z));

  const cplx cross = bterm == BTerm::Literal ? J * g - kI * g2 : J * g - kI * e2;
  r.b = w / (4.0 * e8) *
        (4.0 * g * e4 * e0 * cross -
         2.0 * w2 * (2.0 * e3 + J * s) / s * em * (p + e4 - kI * g * J * w2) +
         2.0 * w2 / z * (2.0 * e3 + J * z) * ep * (p - e4 + kI * g * J * w2));

  r.c = -w2 / (2.0 * e8) *
        (4.0 * e2 * e0 * (e4 + g2 * J * J) + 2.0 * em * (q + l) + 2.0 * ep * (q - l));

  const double norm2 = std::norm(r.a) + 2.0 * std::norm(r.b) + std::norm(r.c);
  r.concurrence = 2.0 * std::abs(r.a * r.c - r.b * r.b) / norm2;

  // Closed-form A.
  const double jw4 = J * J * w4;
  const cplx a_t1 = -2.0 * cexp_i(2.0 * t * (-J * e2 + e3 + 6.0 * J * w2) / e2) * std::pow(e, 12);
  const cplx a_t2 = 2.0 * cexp_i(2.0 * t * e) * (e6 - jw4) * (e6 - jw4 + kI * J * e4 * g);
  const cplx a_t3 = cexp_i(4.0 * t * e) * J * e2 *
                    (-2.0 * std::pow(e, 7) * w2 + 4.0 * J * e4 * w4 + J * J * e * w4 * (e2 - 2.0 * w2) +
                     kI * J * J * e2 * w4 * g + std::pow(e, 9) - kI * e8 * g);
  const cplx a_t4 = J * (2.0 * std::pow(e, 9) * w2 + 4.0 * J * e6 * w4 + 2.0 * J * J * e3 * w4 * w2 -
                         J * J * e4 * w4 * (e - kI * g) - std::pow(e, 11) - kI * std::pow(e, 10) * g);
  r.closed_a = w2 / 2.0 * cexp_i(-2.0 * t * (e3 + 2.0 * J * w2) / e2) * (a_t1 + a_t2 + a_t3 + a_t4);

  // Closed-form B.
  const double ph_minus = t * (J * e2 - e3 - 6.0 * J * w2) / e2;
  const double ph_plus = t * (J * e2 + e3 - 6.0 * J * w2) / e2;
  const double b_const = std::pow(e, 12) * (3.0 * g2 + e2) * w2 + 4.0 * std::pow(e, 10) * (J * J + 3.0 * e2) * w4 +
                         6.0 * J * J * e6 * (g2 - 3.0 * e2) * w4 * w2 + 24.0 * J * J * e6 * w4 * w4 +
                         std::pow(J, 4) * std::pow(w, 10) * (g2 + e2) + 4.0 * std::pow(J, 4) * std::pow(w, 12);
  const double b_osc =
      (e4 + g2 * w2 - 5.0 * e2 * w2 + 4.0 * w4) * (e6 - jw4) * (e6 - jw4) * std::cos(2.0 * t * e) +
      2.0 * e6 * w2 * std::cos(ph_minus) * (e2 - 4.0 * w2 - g2) * (e3 + J * w2) * (e3 + J * w2) +
      2.0 * e6 * w2 * std::cos(ph_plus) * (e2 - 4.0 * w2 - g2) * (e3 - J * w2) * (e3 - J * w2) +
      4.0 * g * std::pow(e, 7) * w2 * std::sin(ph_plus) * (e6 - jw4) -
      4.0 * g * std::pow(e, 7) * w2 * (e6 - jw4) * std::sin(ph_minus) +
      g * e * (e2 - 4.0 * w2) * (std::pow(e, 12) - std::pow(J, 4) * w4 * w4) * std::sin(2.0 * t * e);
  r.closed_b = (b_const + b_osc) / e2;
  r.closed_form = 2.0 * std::abs(r.closed_a) / r.closed_b;
  r.cross_check_gap = std::abs(r.closed_form - r.concurrence);
  return r;
}

double analytic_concurrence_two(const AnalyticParams& p) { return analytic_two(p, BTerm::Corrected).concurrence; }

ThreeQubitAnalytic analytic_three(const AnalyticParams& prm, ExponentVariant variant, bool sine_fix) {
  prm.validate();
  const double g = prm.gamma, w = prm.omega, J = prm.j, t = prm.t;
  const double e = prm.eta();
  const double e2 = e * e, e3 = e2 * e;
  const double g2 = g * g, g4 = g2 * g2, w2 = w * w, w4 = w2 * w2;

  const double beta = g2 - w2;
  const double alpha = 4.0 * J * beta + e3;
  const double pp = J * (e2 + 2.0 * beta);
  const double rr = g2 - 2.0 * w2;

  const bool second_rr = variant == ExponentVariant::BothRr || variant == ExponentVariant::Swapped;
  const bool third_rr = variant == ExponentVariant::Literal || variant == ExponentVariant::BothRr;
  const double x2 = 4.0 * J * (second_rr ? rr : g2);
  const double x3 = 4.0 * J * (third_rr ? rr : g2);

  const cplx ep = e + kI * g;  // eta + i gamma
  const cplx em = e - kI * g;  // eta - i gamma

  ThreeQubitAnalytic r;
  r.a = 1.0 / (8.0 * e3) *
        (12.0 * cexp_i(t * alpha / (2.0 * e2)) * w2 * (em + cexp_i(-t * e) * ep) +
         cexp_i(3.0 * t * (alpha - x2) / (2.0 * e2)) * em * em * em +
         cexp_i(-3.0 * t * (alpha - x3) / (2.0 * e2)) * ep * ep * ep);

  r.b = cexp_i(4.0 * t * J * beta / e2) * w / (2.0 * e3) *
        (cexp_i(t * (-2.0 * J * beta / e2 + e / 2.0)) * (-e2 - 2.0 * beta - kI * g * e) +
         cexp_i(-t * alpha / (2.0 * e2)) * (e2 + 2.0 * beta - kI * g * e) +
         cexp_i(t * (4.0 * e3 - 4.0 * pp - alpha) / (2.0 * e2)) * (rr + kI * g * e) +
         cexp_i(-t * (2.0 * e3 + 4.0 * pp + alpha) / (2.0 * e2)) * (-rr + kI * g * e));

  const cplx f1 = cexp_i(3.0 * t * e);
  const cplx f2 = cexp_i(t * (2.0 * pp + e3) / e2);
  const cplx f3 = cexp_i(2.0 * t * (pp + e3) / e2);
  r.c = -w2 * cexp_i(-3.0 * t * (alpha - 4.0 * J * rr) / (2.0 * e2)) / (2.0 * e3) *
        (kI * g * (-1.0 + f1 + 3.0 * f2 - 3.0 * f3) + e * (-1.0 - f1 + f2 + f3));

  r.d = w2 * w * cexp_i(t * alpha / (2.0 * e2)) / e3 *
        (3.0 - 3.0 * cexp_i(-t * e) - cexp_i(-t * (2.0 * pp - e3) / e2) + cexp_i(-2.0 * t * (pp + e3) / e2));

  r.amplitudes = {r.a, r.b, r.b, r.c, r.b, r.c, r.c, r.d};
  Vector v(8);
  for (int k = 0; k < 8; ++k) v(k) = r.amplitudes[static_cast<std::size_t>(k)];
  r.tau3 = residual_tangle(v).tau3;

  // Closed form |A / (4 eta^12 B^2)| with the auxiliary x, y, v, h.
  const cplx x = cexp_i(-t * (2.0 * pp - e3) / e2) - cexp_i(-2.0 * t * (e3 + pp) / e2) + 3.0 * cexp_i(-e * t) - 3.0;
  const cplx y = ep * ep * ep / 8.0 * cexp_i(-3.0 * t * (alpha - 4.0 * J * rr) / (2.0 * e2)) +
                 em * em * em / 8.0 * cexp_i(3.0 * t * (alpha - 4.0 * g2 * J) / (2.0 * e2)) +
                 1.5 * w2 * em * cexp_i(alpha * t / (2.0 * e2)) +
                 1.5 * w2 * ep * cexp_i(t * (alpha - 2.0 * e3) / (2.0 * e2));
  const cplx vv = -(2.0 * beta + kI * g * e + e2) * cexp_i(-t * (4.0 * beta * J - e3) / (2.0 * e2)) +
                  (2.0 * beta - kI * g * e + e2) * cexp_i(-alpha * t / (2.0 * e2)) -
                  (rr - kI * g * e) * cexp_i(-t * (alpha + 2.0 * e3 + 4.0 * pp) / (2.0 * e2)) +
                  (rr + kI * g * e) * cexp_i(-t * (alpha - 4.0 * e3 + 4.0 * pp) / (2.0 * e2));
  const cplx h = 3.0 * kI * g * f3 - 3.0 * kI * g * f2 - kI * g * f1 + kI * g - e * f3 - e * f2 + e * f1 + e;
  const double q = 2.0 * J * t * (g2 + 2.0 * w2) / e2;
  const double p = 2.0 * J * t * (w2 + 2.0 * g2) / e2;

  const double w6 = w4 * w2;
  r.closed_a = 8.0 * x * vv * vv * vv * w6 * cexp_i(t * (alpha + 24.0 * beta * J) / (2.0 * e2)) +
               8.0 * h * h * h * y * w6 * cexp_i(-9.0 * t * (alpha - 4.0 * J * rr) / (2.0 * e2)) -
               3.0 * h * h * vv * vv * w6 * cexp_i(t * (-3.0 * alpha + 8.0 * beta * J + 12.0 * J * rr) / e2) +
               16.0 * x * x * y * y * w6 * cexp_i(alpha * t / e2) -
               24.0 * x * y * vv * h * w6 * cexp_i(t * (-alpha + 4.0 * beta * J + 6.0 * J * rr) / e2);

  const double te = t * e;
  const double s_q_eta = sine_fix ? std::sin(q - te) : std::sin(q - e);
  const double s_2t_q = sine_fix ? std::sin(2.0 * te + q) : std::sin(2.0 * t + q);
  const double inner =
      72.0 * (e2 - g2) * w4 * std::cos(1.5 * te - 2.0 * J * t * beta / e2) +
      6.0 * (g4 - 6.0 * g2 * e2 + e2 * e2) * w2 * std::cos(2.5 * te - p) +
      6.0 * w2 * std::cos(2.0 * te + q) * (5.0 * g4 + e2 * e2 - 4.0 * e2 * w2 - 10.0 * g2 * e2 + 12.0 * g2 * w2) +
      6.0 * w2 * (e2 * e2 - g4) * std::cos(0.5 * te + p) -
      6.0 * w2 * (6.0 * g4 + 4.0 * g2 * e2 - e2 * e2 + 12.0 * g2 * w2 + 4.0 * e2 * w2) * std::cos(te - q) +
      24.0 * w2 * (g4 * w2 - e2 * g2 + 3.0 * w2 * g2 - e2 * w2) * std::cos(2.0 * te - q) +
      48.0 * g * e * w2 * (g2 + 5.0 * w2) * std::sin(te) -
      24.0 * w2 * std::cos(te + q) * (g4 + g2 * e2 + 3.0 * g2 * w2 + e2 * w2) +
      48.0 * g * e * w2 * (g2 + 2.0 * w2) * s_q_eta +
      g * e * (3.0 * g4 - 10.0 * g2 * e2 + 3.0 * e2 * e2 + 48.0 * g2 * w2 - 48.0 * w4) * std::sin(3.0 * te) +
      24.0 * g * e * w2 * (e2 - g2) * std::sin(2.5 * te - p) +
      144.0 * g * e * w4 * std::sin(1.5 * te - 2.0 * J * t * beta / e2) +
      12.0 * g * e * w2 * (g2 + e2) * std::sin(0.5 * te + p) +
      12.0 * g * e * w2 * std::sin(te - q) * (g2 + 12.0 * w2 + e2) +
      144.0 * g * e * w4 * std::sin(te + q) +
      24.0 * g * e * w2 * (-3.0 * g2 + e2 - 4.0 * w2) * s_2t_q;
  const double outer =
      std::pow(g2 + e2, 3) + 96.0 * g2 * (g2 + e2) * w2 + 48.0 * g2 * (13.0 * g2 + 5.0 * e2) * w4 + 1024.0 * w6 -
      48.0 * w2 * (g4 - e2 * w2 + 16.0 * w4 - g2 * (e2 - 13.0 * w2)) * std::cos(te) +
      (-g4 * g2 + 15.0 * g4 * e2 - 15.0 * g2 * e2 * e2 + e3 * e3 - 48.0 * g2 * beta * w2 +
       48.0 * (3.0 * g2 + e2) * w4 - 256.0 * w6) * std::cos(3.0 * te) +
      2.0 * inner;
  r.closed_b = outer / (32.0 * e3 * e3);
  r.closed_form = std::abs(r.closed_a / (4.0 * std::pow(e, 12) * r.closed_b * r.closed_b));
  r.cross_check_gap = std::abs(r.closed_form - r.tau3);
  return r;
}

double analytic_tangle_three(const AnalyticParams& p) { return analytic_three(p, ExponentVariant::Literal).tau3; }

}  // namespace ptq
