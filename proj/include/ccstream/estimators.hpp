#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "ccstream/nes.hpp"

namespace ccstream {

/// Raised when a sample is too small to support the requested estimate
/// (lambda_g = 0 or delta_g = 0, depending on the estimator).
struct UndefinedEstimate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when the bias correction denominator 1 + rb_hat is not positive.
struct CorrectionOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Value-level estimator arithmetic. The NesState overloads below are thin
// wrappers; tests exercise the identities on raw values.
namespace est {

inline double delta_hat(std::uint64_t delta_g, double p) {
  return 3.0 * double(delta_g) / (p * p);
}

inline double lambda_hat(std::uint64_t lambda_g, double p) {
  return double(lambda_g) / p;
}

inline double c_hat(std::uint64_t delta_g, std::uint64_t lambda_g, double p) {
  if (lambda_g == 0)
    throw UndefinedEstimate("clustering estimate undefined: no wedges identified (sample too small)");
  return 3.0 * double(delta_g) / (p * double(lambda_g));
}

inline double rse_simple(std::uint64_t delta_g) {
  if (delta_g == 0)
    throw UndefinedEstimate("RSE undefined: no closed wedges identified");
  return 1.0 / std::sqrt(double(delta_g));
}

/// Sample-side squared relative error: 1/Δg + 2Φg/Δg² + 2Ψg/Λg² − 2Ω'g/(ΔgΛg).
inline double rse_full_bracket(std::uint64_t delta_g, std::uint64_t lambda_g,
                               std::uint64_t phi_g, std::uint64_t psi_g,
                               std::uint64_t omega_prime_g) {
  const double dg = double(delta_g);
  const double lg = double(lambda_g);
  return 1.0 / dg + 2.0 * double(phi_g) / (dg * dg) + 2.0 * double(psi_g) / (lg * lg) -
         2.0 * double(omega_prime_g) / (dg * lg);
}

/// Square root of the bracket above. A negative bracket (possible at
/// moderate p when the omega' term dominates) falls back to rse_simple and
/// reports it through `fell_back` instead of failing.
inline double rse_full(std::uint64_t delta_g, std::uint64_t lambda_g, std::uint64_t phi_g,
                       std::uint64_t psi_g, std::uint64_t omega_prime_g,
                       bool* fell_back = nullptr) {
  if (delta_g == 0)
    throw UndefinedEstimate("RSE undefined: no closed wedges identified");
  if (lambda_g == 0)
    throw UndefinedEstimate("RSE undefined: no wedges identified");
  if (fell_back) *fell_back = false;
  const double bracket = rse_full_bracket(delta_g, lambda_g, phi_g, psi_g, omega_prime_g);
  if (bracket < 0.0) {
    if (fell_back) *fell_back = true;
    return rse_simple(delta_g);
  }
  return std::sqrt(bracket);
}

/// Estimated relative bias: 2Ψg/Λg² − Ω'g/(ΔgΛg).
inline double rb_hat(std::uint64_t delta_g, std::uint64_t lambda_g, std::uint64_t psi_g,
                     std::uint64_t omega_prime_g) {
  if (delta_g == 0 || lambda_g == 0)
    throw UndefinedEstimate("RB undefined: zero denominator counters");
  const double lg = double(lambda_g);
  return 2.0 * double(psi_g) / (lg * lg) -
         double(omega_prime_g) / (double(delta_g) * lg);
}

inline double c_hat_plus(double c_hat_value, double rb_hat_value) {
  if (1.0 + rb_hat_value <= 0.0)
    throw CorrectionOverflow("bias correction overflow: 1 + rb_hat <= 0");
  return c_hat_value / (1.0 + rb_hat_value);
}

}  // namespace est

inline double estimate_delta(const NesState& s) { return est::delta_hat(s.delta_g, s.p()); }
inline double estimate_lambda(const NesState& s) { return est::lambda_hat(s.lambda_g, s.p()); }
inline double estimate_c(const NesState& s) { return est::c_hat(s.delta_g, s.lambda_g, s.p()); }
inline double estimate_rse_simple(const NesState& s) { return est::rse_simple(s.delta_g); }

inline double estimate_rse_full(const NesState& s, bool* fell_back = nullptr) {
  if (!s.track_aux())
    throw UndefinedEstimate("full RSE needs aux counters (run with track_aux)");
  return est::rse_full(s.delta_g, s.lambda_g, s.phi_g, s.psi_g, s.omega_prime_g, fell_back);
}

inline double estimate_rb(const NesState& s) {
  if (!s.track_aux())
    throw UndefinedEstimate("RB estimate needs aux counters (run with track_aux)");
  return est::rb_hat(s.delta_g, s.lambda_g, s.psi_g, s.omega_prime_g);
}

inline double bias_corrected_c(const NesState& s) {
  return est::c_hat_plus(estimate_c(s), estimate_rb(s));
}

/// Everything the sample tells us, in one record. Building the report
/// requires lambda_g > 0 (otherwise UndefinedEstimate: sample too small).
/// Quantities that need delta_g > 0 or aux counters are NaN when
/// unavailable (serialized as null). Recoverable conditions are flags
/// rather than throws: a negative Eq.-8 bracket (rse_fallback) and
/// 1 + rb_hat <= 0 (correction_overflow, with c_hat_plus holding the raw
/// c_hat).
struct EstimateReport {
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_edges = 0;
  std::uint64_t sampled_edges = 0;
  std::uint64_t delta_g = 0;
  std::uint64_t lambda_g = 0;
  std::uint64_t phi_g = 0;
  std::uint64_t psi_g = 0;
  std::uint64_t omega_prime_g = 0;
  double delta_hat = 0.0;
  double lambda_hat = 0.0;
  double c_hat = 0.0;
  double c_hat_plus = 0.0;
  double rse_full = 0.0;
  double rse_simple = 0.0;
  double rb_hat = 0.0;
  bool rse_fallback = false;
  bool correction_overflow = false;
};

inline EstimateReport make_estimate_report(const NesState& s) {
  EstimateReport r;
  r.p = s.p();
  r.seed = s.seed();
  r.stream_edges = s.edges_processed();
  r.sampled_edges = s.sampled_edges();
  r.delta_g = s.delta_g;
  r.lambda_g = s.lambda_g;
  r.phi_g = s.phi_g;
  r.psi_g = s.psi_g;
  r.omega_prime_g = s.omega_prime_g;
  r.delta_hat = estimate_delta(s);
  r.lambda_hat = estimate_lambda(s);
  r.c_hat = estimate_c(s);  // throws when lambda_g == 0

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const bool have_rse = s.delta_g > 0;
  r.rse_simple = have_rse ? estimate_rse_simple(s) : nan;
  r.rse_full = (have_rse && s.track_aux()) ? estimate_rse_full(s, &r.rse_fallback) : nan;
  r.rb_hat = (have_rse && s.track_aux()) ? estimate_rb(s) : nan;
  if (std::isnan(r.rb_hat)) {
    r.c_hat_plus = nan;
  } else {
    try {
      r.c_hat_plus = est::c_hat_plus(r.c_hat, r.rb_hat);
    } catch (const CorrectionOverflow&) {
      r.correction_overflow = true;
      r.c_hat_plus = r.c_hat;
    }
  }
  return r;
}

}  // namespace ccstream
