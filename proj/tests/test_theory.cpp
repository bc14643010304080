#include <catch2/catch_amalgamated.hpp>

#include "ccstream/estimators.hpp"
#include "ccstream/rng.hpp"
#include "ccstream/serialize.hpp"
#include "ccstream/theory.hpp"

using namespace ccstream;
using Catch::Approx;

namespace {

ExactStats stats_of(std::uint64_t delta, std::uint64_t lambda, std::uint64_t phi,
                    std::uint64_t psi, std::uint64_t omega_prime) {
  ExactStats s;
  s.delta = delta;
  s.lambda = lambda;
  s.phi = phi;
  s.psi = psi;
  s.omega_prime = omega_prime;
  if (lambda > 0) s.clustering = double(delta) / double(lambda);
  return s;
}

/// Random stats tuple with the magnitudes of the medium rows of the paper's
/// network table.
ExactStats random_stats(Rng& rng) {
  return stats_of(1 + rng.below(std::uint64_t(1e8)), 1 + rng.below(std::uint64_t(1e9)),
                  rng.below(std::uint64_t(1e9)), rng.below(std::uint64_t(1e12)),
                  rng.below(std::uint64_t(1e10)));
}

}  // namespace

TEST_CASE("lemma variance values at the algebraic corners") {
  const auto s = stats_of(900, 5000, 0, 0, 0);

  // var(delta_g) with phi=0 at p=1 is 2*delta/9
  CHECK(var_delta_g(s, 1.0) == Approx(2.0 * 900 / 9.0));
  CHECK(var_delta_g(s, 0.0) == 0.0);

  // everything sampled: lambda_g and the covariance are deterministic
  CHECK(var_lambda_g(s, 1.0) == 0.0);
  CHECK(cov_delta_lambda(s, 1.0) == 0.0);

  // psi=0 leaves the pure binomial-style wedge term
  const double p = 0.3;
  CHECK(var_lambda_g(s, p) == Approx(5000 * (p - p * p)));

  // triangle-free: delta=0 and omega'=0 kill the covariance at every p
  const auto tf = stats_of(0, 5000, 0, 700, 0);
  CHECK(cov_delta_lambda(tf, 0.2) == 0.0);
  CHECK(cov_delta_lambda(tf, 0.7) == 0.0);
}

TEST_CASE("approximations sit within their dropped terms") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_stats(rng);
    const double p = 0.001 + 0.2 * rng.unit();

    // Eq.-4 style: difference is exactly p^4 (delta + 8 phi) / 9
    const double diff4 = std::abs(var_delta_g_approx(s, p) - var_delta_g(s, p));
    const double bound4 = std::pow(p, 4) * (double(s.delta) + 8.0 * double(s.phi)) / 9.0;
    CHECK(diff4 <= bound4 * (1 + 1e-9));

    CHECK(std::abs(var_lambda_g_approx(s, p) - var_lambda_g(s, p)) <=
          var_lambda_g_dropped(s, p) * (1 + 1e-9));
    CHECK(std::abs(cov_delta_lambda_approx(s, p) - cov_delta_lambda(s, p)) <=
          cov_delta_lambda_dropped(s, p) * (1 + 1e-9));
  }
}

TEST_CASE("var(delta_g) approximation is tight for small p") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_stats(rng);
    const double p = 0.01 * rng.unit();
    const double exact = var_delta_g(s, p);
    if (exact == 0.0) continue;
    CHECK(std::abs(var_delta_g_approx(s, p) - exact) / exact < 0.05);
  }
}

TEST_CASE("graph-side RSE") {
  const auto s = stats_of(1200, 40000, 0, 0, 0);
  const double p = 0.2;
  CHECK(rse_theory(s, p) == Approx(std::sqrt(3.0 / (1200 * p * p))));
  CHECK_THROWS_AS(rse_theory(stats_of(0, 10, 0, 0, 0), 0.5), UndefinedValue);
  CHECK_THROWS_AS(rse_theory(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rse_theory(s, 1.0), std::invalid_argument);

  // negative bracket falls back to the first term
  bool fell_back = false;
  const auto skewed = stats_of(1000, 1000, 0, 0, 2'000'000);
  const double v = rse_theory(skewed, 0.5, &fell_back);
  CHECK(fell_back);
  CHECK(v == Approx(std::sqrt(3.0 / (1000 * 0.25))));
}

TEST_CASE("substituting the estimator identities turns Eq.7 into Eq.8") {
  // delta = 3 delta_g / p^2, lambda = lambda_g / p, phi = (15/8) phi_g / p^3,
  // psi = 3 psi_g / p, omega' = (12/5) omega'_g / p^2 must map the graph-side
  // bracket onto the sample-side bracket, term for term.
  Rng rng(2025);
  for (int i = 0; i < 1000; ++i) {
    const double p = 0.01 + 0.98 * rng.unit();
    const double delta_g = 1 + double(rng.below(1'000'000));
    const double lambda_g = 1 + double(rng.below(100'000'000));
    const double phi_g = double(rng.below(1'000'000));
    const double psi_g = double(rng.below(10'000'000));
    const double omega_g = double(rng.below(1'000'000));

    ExactStats s;
    s.delta = std::uint64_t(1);  // placeholder; we evaluate the bracket directly
    const double delta = 3.0 * delta_g / (p * p);
    const double lambda = lambda_g / p;
    const double phi = (15.0 / 8.0) * phi_g / (p * p * p);
    const double psi = 3.0 * psi_g / p;
    const double omega_prime = (12.0 / 5.0) * omega_g / (p * p);

    const double graph_side = 3.0 / (delta * p * p) +
                              48.0 * phi / (5.0 * delta * delta * p) +
                              2.0 * psi / (3.0 * lambda * lambda * p) -
                              5.0 * omega_prime / (2.0 * delta * lambda * p);
    const double sample_side =
        est::rse_full_bracket(std::uint64_t(delta_g), std::uint64_t(lambda_g),
                              std::uint64_t(phi_g), std::uint64_t(psi_g),
                              std::uint64_t(omega_g));
    CHECK(graph_side == Approx(sample_side).epsilon(1e-12));
  }
}

TEST_CASE("graph-side RB") {
  CHECK(rb_theory(stats_of(100, 1000, 0, 0, 0), 0.2) == 0.0);

  const auto s = stats_of(144'000, 230'000, 2'000'000, 10'000'000, 9'000'000);
  const double rb1 = rb_theory(s, 0.2);
  const double rb2 = rb_theory(s, 0.1);
  CHECK(rb2 == Approx(2.0 * rb1));  // scales as 1/p

  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_stats(rng);
    const double pa = 0.01 + 0.4 * rng.unit();
    const double pb = 0.01 + 0.4 * rng.unit();
    CHECK(rb_theory(t, pa) * pa == Approx(rb_theory(t, pb) * pb).epsilon(1e-12));
  }
}

TEST_CASE("theory report carries the pieces and serializes") {
  const auto s = stats_of(144'000, 230'000, 2'000'000, 10'000'000, 9'000'000);
  const auto rep = theory_report(s, 0.05);
  CHECK(rep.var_lambda_g == Approx(var_lambda_g(s, 0.05)));
  CHECK(rep.rb_theory == Approx(rb_theory(s, 0.05)));
  CHECK_FALSE(rep.rse_fallback);
  const nlohmann::json j = rep;
  CHECK(j.at("p") == 0.05);
  CHECK(j.at("cov_delta_lambda_dropped").get<double>() > 0.0);
}
