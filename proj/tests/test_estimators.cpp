#include <catch2/catch_amalgamated.hpp>

#include "ccstream/estimators.hpp"
#include "ccstream/nes.hpp"
#include "ccstream/rng.hpp"
#include "ccstream/serialize.hpp"
#include "ccstream/synthetic.hpp"

using namespace ccstream;
using Catch::Approx;

TEST_CASE("point estimates") {
  CHECK(est::delta_hat(1, 1.0) == 3.0);
  CHECK(est::delta_hat(0, 0.5) == 0.0);
  CHECK(est::delta_hat(120, 0.2) == Approx(9000.0));

  CHECK(est::lambda_hat(3, 1.0) == 3.0);
  CHECK(est::lambda_hat(0, 0.3) == 0.0);
  CHECK(est::lambda_hat(500, 0.1) == Approx(5000.0));

  CHECK(est::c_hat(1, 3, 1.0) == Approx(1.0));
  CHECK(est::c_hat(0, 1, 1.0) == 0.0);
  CHECK(est::c_hat(50, 3000, 0.1) == Approx(0.5));
  CHECK_THROWS_AS(est::c_hat(1, 0, 0.5), UndefinedEstimate);
}

TEST_CASE("simple RSE") {
  CHECK(est::rse_simple(25) == Approx(0.2));
  CHECK(est::rse_simple(100) == Approx(0.1));
  CHECK(est::rse_simple(1) == 1.0);
  CHECK_THROWS_AS(est::rse_simple(0), UndefinedEstimate);
}

TEST_CASE("full RSE") {
  // with zero aux counters the bracket collapses to 1/delta_g
  CHECK(est::rse_full(100, 5000, 0, 0, 0) == Approx(est::rse_simple(100)));
  // worked arithmetic: sqrt(0.01 + 0.01 + 2e-5 - 4e-3)
  CHECK(est::rse_full(100, 10000, 50, 1000, 2000) == Approx(std::sqrt(0.01602)));
  CHECK_THROWS_AS(est::rse_full(0, 10, 0, 0, 0), UndefinedEstimate);

  // a dominant omega' term drives the bracket negative -> simple fallback
  bool fell_back = false;
  const double v = est::rse_full(100, 100, 0, 0, 9000, &fell_back);
  CHECK(fell_back);
  CHECK(v == Approx(0.1));
}

TEST_CASE("estimated RB") {
  CHECK(est::rb_hat(10, 10, 0, 0) == 0.0);
  CHECK(est::rb_hat(100, 10000, 1000, 2000) == Approx(2e-5 - 2e-3));  // negative bias
  CHECK_THROWS_AS(est::rb_hat(0, 10, 1, 1), UndefinedEstimate);
  CHECK_THROWS_AS(est::rb_hat(10, 0, 1, 1), UndefinedEstimate);
  // sign of rb_hat equals sign of 2*psi_g*delta_g - omega_prime_g*lambda_g
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t dg = 1 + rng.below(1000), lg = 1 + rng.below(100000);
    const std::uint64_t pg = rng.below(5000), og = rng.below(5000);
    const double rb = est::rb_hat(dg, lg, pg, og);
    const double key = 2.0 * double(pg) * double(dg) - double(og) * double(lg);
    if (key > 0) CHECK(rb > 0);
    if (key < 0) CHECK(rb < 0);
    if (key == 0) CHECK(rb == 0);
  }
}

TEST_CASE("bias-corrected estimate") {
  CHECK(est::c_hat_plus(0.5, 0.0) == 0.5);
  CHECK(est::c_hat_plus(0.5, 0.02) == Approx(0.4901960784));
  CHECK_THROWS_AS(est::c_hat_plus(0.5, -1.0), CorrectionOverflow);
  CHECK_THROWS_AS(est::c_hat_plus(0.5, -1.5), CorrectionOverflow);
}

TEST_CASE("c_hat is invariant under the p-scaling of its inputs") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t dg = 1 + rng.below(500);
    const std::uint64_t lg = 1 + rng.below(50000);
    const double p = 0.05 + 0.9 * rng.unit();
    const double x = 2.0;  // scale p by x, delta_g by x^2, lambda_g by x
    const double base = est::c_hat(dg, lg, p);
    const double scaled = 3.0 * (double(dg) * x * x) / ((p * x) * (double(lg) * x));
    CHECK(scaled == Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("p=1 run reproduces C exactly through the report") {
  const Graph g = erdos_renyi_gnp(25, 0.3, 77);
  const auto stats = exact_stats(g);
  NesConfig cfg;  // p = 1
  const auto s = run_stream(shuffle_stream(g, 3), g.num_nodes(), cfg);
  const auto rep = make_estimate_report(s);
  CHECK(rep.c_hat == stats.clustering);
  CHECK(rep.delta_hat == double(stats.delta));
  CHECK(rep.lambda_hat == double(stats.lambda));
  CHECK_FALSE(rep.correction_overflow);
}

TEST_CASE("estimate report flags and serialization") {
  const Graph k3 = complete_graph(3);
  NesConfig cfg;
  cfg.seed = 9;
  const auto s = run_stream(shuffle_stream(k3, 1), 3, cfg);
  const auto rep = make_estimate_report(s);
  const nlohmann::json j = rep;
  CHECK(j.at("c_hat") == 1.0);
  CHECK(j.at("delta_g") == 1);
  CHECK(j.at("generator") == "mt19937_64");

  // lambda_g = 0: no estimate at all
  NesConfig tiny;
  tiny.p = 1e-15;
  const auto empty = run_stream(shuffle_stream(k3, 1), 3, tiny);
  CHECK_THROWS_WITH(make_estimate_report(empty),
                    Catch::Matchers::ContainsSubstring("sample too small"));

  // delta_g = 0 but lambda_g > 0: c_hat = 0, error quantities null
  NesConfig half;
  half.p = 0.9;
  half.seed = 4;
  const auto p3 = run_stream(file_order_stream(path_graph(3)), 3, half);
  REQUIRE(p3.lambda_g > 0);
  const auto rep3 = make_estimate_report(p3);
  CHECK(rep3.c_hat == 0.0);
  const nlohmann::json j3 = rep3;
  CHECK(j3.at("rse_simple").is_null());
  CHECK(j3.at("rb_hat").is_null());
}
