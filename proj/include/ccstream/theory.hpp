#pragma once

#include <cmath>
#include <stdexcept>

#include "ccstream/oracle.hpp"

namespace ccstream {

// Graph-side theoretical values for the sampled counters, as functions of
// the exact stats and the sampling probability. "exact" means the closed
// forms as stated; "approx" means their small-p simplifications with the
// dropped terms reported alongside so callers can see when the
// simplification is poor.

/// var(Δg) = (1/3)(Δ(p² − p⁴/3) + 8Φ(2p³/5 − p⁴/3)).
inline double var_delta_g(const ExactStats& s, double p) {
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  return (double(s.delta) * (p2 - p4 / 3.0) +
          8.0 * double(s.phi) * (0.4 * p3 - p4 / 3.0)) / 3.0;
}

/// Small-p form: Δp²/3 + (16/15)Φp³.
inline double var_delta_g_approx(const ExactStats& s, double p) {
  return double(s.delta) * p * p / 3.0 + (16.0 / 15.0) * double(s.phi) * p * p * p;
}

/// var(Λg) = (Λ + (2/3)Ψ)(p − p²).
inline double var_lambda_g(const ExactStats& s, double p) {
  return (double(s.lambda) + (2.0 / 3.0) * double(s.psi)) * (p - p * p);
}

/// Small-p form: (2/3)Ψp. Drops the whole Λ(p − p²) term.
inline double var_lambda_g_approx(const ExactStats& s, double p) {
  return (2.0 / 3.0) * double(s.psi) * p;
}

/// Magnitude of what var_lambda_g_approx drops: Λ(p − p²) plus the p²
/// part of the Ψ term.
inline double var_lambda_g_dropped(const ExactStats& s, double p) {
  return double(s.lambda) * (p - p * p) + (2.0 / 3.0) * double(s.psi) * p * p;
}

/// cov(Δg, Λg) = (2Δ + (5/12)Ω′)(p² − p³), as stated.
inline double cov_delta_lambda(const ExactStats& s, double p) {
  const double p2 = p * p;
  return (2.0 * double(s.delta) + (5.0 / 12.0) * double(s.omega_prime)) * (p2 - p2 * p);
}

/// Small-p form: (5/12)Ω′p². Drops the whole 2Δ(p² − p³) term.
inline double cov_delta_lambda_approx(const ExactStats& s, double p) {
  return (5.0 / 12.0) * double(s.omega_prime) * p * p;
}

inline double cov_delta_lambda_dropped(const ExactStats& s, double p) {
  const double p2 = p * p;
  return 2.0 * double(s.delta) * (p2 - p2 * p) + (5.0 / 12.0) * double(s.omega_prime) * p2 * p;
}

/// Squared relative error of Ĉ from graph-side quantities:
/// 3/(Δp²) + 48Φp³/(5Δ²p⁴) + 2Ψp/(3Λ²p²) − 5Ω′p²/(2ΔΛp³).
inline double rse_theory_bracket(const ExactStats& s, double p) {
  const double delta = double(s.delta), lambda = double(s.lambda);
  return 3.0 / (delta * p * p) + 48.0 * double(s.phi) / (5.0 * delta * delta * p) +
         2.0 * double(s.psi) / (3.0 * lambda * lambda * p) -
         5.0 * double(s.omega_prime) / (2.0 * delta * lambda * p);
}

/// Graph-side RSE: square root of the bracket above. A negative bracket
/// falls back to sqrt(3/(Δp²)), reported through `fell_back`.
inline double rse_theory(const ExactStats& s, double p, bool* fell_back = nullptr) {
  if (s.delta == 0 || s.lambda == 0)
    throw UndefinedValue("graph-side RSE needs delta > 0 and lambda > 0");
  if (!(p > 0.0) || p >= 1.0)
    throw std::invalid_argument("rse_theory needs p in (0,1)");
  if (fell_back) *fell_back = false;
  const double bracket = rse_theory_bracket(s, p);
  if (bracket < 0.0) {
    if (fell_back) *fell_back = true;
    return std::sqrt(3.0 / (double(s.delta) * p * p));
  }
  return std::sqrt(bracket);
}

/// Graph-side relative bias: (1/p)(2Ψ/(3Λ²) − 5Ω′/(4ΔΛ)).
inline double rb_theory(const ExactStats& s, double p) {
  if (s.delta == 0 || s.lambda == 0)
    throw UndefinedValue("graph-side RB needs delta > 0 and lambda > 0");
  if (!(p > 0.0) || p >= 1.0)
    throw std::invalid_argument("rb_theory needs p in (0,1)");
  const double lambda = double(s.lambda);
  return (2.0 * double(s.psi) / (3.0 * lambda * lambda) -
          5.0 * double(s.omega_prime) / (4.0 * double(s.delta) * lambda)) / p;
}

struct TheoryReport {
  double p = 0.0;
  double var_delta_g = 0.0;
  double var_lambda_g = 0.0;
  double cov_delta_lambda = 0.0;
  double var_delta_g_approx = 0.0;
  double var_lambda_g_approx = 0.0;
  double cov_delta_lambda_approx = 0.0;
  double var_lambda_g_dropped = 0.0;
  double cov_delta_lambda_dropped = 0.0;
  double rse_theory = 0.0;
  double rb_theory = 0.0;
  bool rse_fallback = false;
};

inline TheoryReport theory_report(const ExactStats& s, double p) {
  TheoryReport r;
  r.p = p;
  r.var_delta_g = var_delta_g(s, p);
  r.var_lambda_g = var_lambda_g(s, p);
  r.cov_delta_lambda = cov_delta_lambda(s, p);
  r.var_delta_g_approx = var_delta_g_approx(s, p);
  r.var_lambda_g_approx = var_lambda_g_approx(s, p);
  r.cov_delta_lambda_approx = cov_delta_lambda_approx(s, p);
  r.var_lambda_g_dropped = var_lambda_g_dropped(s, p);
  r.cov_delta_lambda_dropped = cov_delta_lambda_dropped(s, p);
  r.rse_theory = rse_theory(s, p, &r.rse_fallback);
  r.rb_theory = rb_theory(s, p);
  return r;
}

}  // namespace ccstream
