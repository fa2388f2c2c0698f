#include <doctest.h>

#include <random>

#include "bipexp/error.hpp"
#include "bipexp/oracle.hpp"
#include "bipexp/population.hpp"
#include "bipexp/variance.hpp"
#include "support.hpp"

using namespace bipexp;

TEST_CASE("normal quantile and cdf") {
  CHECK(std::abs(normal_quantile(0.975) - 1.959963984540054) <= 1e-9);
  CHECK(std::abs(normal_quantile(0.75) - 0.6744897501960817) <= 1e-9);
  CHECK(std::abs(normal_quantile(0.5)) <= 1e-15);
  CHECK(std::abs(normal_quantile(1e-6) + 4.753424308822899) <= 1e-8);
  for (double q : {0.001, 0.02, 0.3, 0.6, 0.99, 0.9999}) {
    CHECK(std::abs(normal_cdf(normal_quantile(q)) - q) <= 1e-13);
  }
  CHECK_THROWS_AS(normal_quantile(0.0), Error);
  CHECK_THROWS_AS(normal_quantile(1.0), Error);
}

TEST_CASE("confidence interval and test decision") {
  const VarianceEstimate ve = combine_upper_bound(0.25, 0.0);
  const ConfidenceInterval ci = confidence_interval(0.0, ve, 0.05);
  CHECK(ci.upper == doctest::Approx(0.5 * 1.959963984540054).epsilon(1e-12));
  CHECK(ci.lower == doctest::Approx(-ci.upper));
  CHECK(ci.level == doctest::Approx(0.95));
  CHECK_FALSE(reject_null(ci, ci.upper));
  CHECK_FALSE(reject_null(ci, ci.lower));
  CHECK_FALSE(reject_null(ci, 0.0));
  CHECK(reject_null(ci, std::nextafter(ci.upper, 10.0)));
  CHECK(reject_null(ci, std::nextafter(ci.lower, -10.0)));
  for (double bad : {0.0, 1.0, -0.1, 1.5}) {
    try {
      confidence_interval(0.0, ve, bad);
      FAIL("expected InvalidAlpha");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidAlpha);
    }
  }
}

TEST_CASE("upper bound combination clamps negatives") {
  const VarianceEstimate a = combine_upper_bound(4.0, 1.0);
  CHECK(a.v_ub_hat == doctest::Approx(9.0));
  CHECK(a.clamped_count() == 0);
  const VarianceEstimate b = combine_upper_bound(-0.5, 1.0);
  CHECK(b.v_ub_hat == doctest::Approx(1.0));
  CHECK(b.v1_clamped);
  CHECK(b.clamped_count() == 1);
}

TEST_CASE("constant outcomes give zero variance estimate") {
  const BipartiteGraph g = testsupport::toy_graph();
  const LambdaSet ls = LambdaSet::build(g, 0.5);
  const Assignment a({1, 0, 1, 1}, 0.5);
  const Dataset ds = Dataset::outcomes_only(Eigen::VectorXd::Constant(5, 7.0));
  const VarianceEstimate ve = variance_estimate(g, a, ds, ls, hajek(g, a, ds));
  CHECK(std::abs(ve.v1_hat) <= 1e-24);
  CHECK(std::abs(ve.v0_hat) <= 1e-24);
}

TEST_CASE("toy graph variance estimate by hand") {
  // Treated-exposed units 1, 4, 5 with mean 2.75; units 4 and 5 share k4
  // (overlap 1, union 1); unit 1 shares k4 with both (overlap 1, union 2).
  // Control side: unit 2 alone, residual 0.
  const BipartiteGraph g = testsupport::toy_graph();
  const LambdaSet ls = LambdaSet::build(g, 0.5);
  const Assignment a({1, 0, 1, 1}, 0.5);
  Eigen::VectorXd y(5);
  y << 1, 2, 3, 4, 5;
  const Dataset ds = Dataset::outcomes_only(y);
  const VarianceEstimate ve = variance_estimate(g, a, ds, ls, hajek(g, a, ds));
  const double r1 = 1 - 2.75, r4 = 4 - 2.75, r5 = 5 - 2.75;
  const double diag = r1 * r1 * 3.0 / 0.25 + r4 * r4 * 1.0 / 0.5 + r5 * r5 * 1.0 / 0.5;
  const double off = 2.0 * (r4 * r5 * 1.0 / 0.5 + r1 * r4 * 1.0 / 0.25 + r1 * r5 * 1.0 / 0.25);
  CHECK(ve.v1_hat == doctest::Approx((diag + off) / 25.0).epsilon(1e-13));
  CHECK(ve.v1_hat == doctest::Approx(0.49).epsilon(1e-13));
  CHECK(ve.v0_hat == 0.0);
}

TEST_CASE("variance estimate with true means is exactly unbiased per arm") {
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 20; ++rep) {
    const auto inst = testsupport::random_instance(gen, 8, 15);
    const LambdaSet ls = LambdaSet::build(inst.graph, inst.p);
    const Estimand est = true_estimand(inst.pt);
    const PopulationVariance pv = true_variance(ls, inst.pt);
    PointEstimate truth;
    truth.mu1_hat = est.mu1;
    truth.mu0_hat = est.mu0;
    double e1 = 0.0, e0 = 0.0;
    for_each_assignment(inst.graph.m(), inst.p, [&](const Assignment& a, double prob) {
      const Dataset ds = Dataset::outcomes_only(inst.pt.observe(inst.graph, a));
      const VarianceEstimate ve = variance_estimate(inst.graph, a, ds, ls, truth);
      e1 += prob * ve.v1_hat;
      e0 += prob * ve.v0_hat;
    });
    CHECK(std::abs(e1 - pv.v1) <= 1e-10 * (1.0 + pv.v1));
    CHECK(std::abs(e0 - pv.v0) <= 1e-10 * (1.0 + pv.v0));
  }
}

TEST_CASE("identity graph reduces to per-unit weights") {
  const std::size_t n = 30;
  const BipartiteGraph g = identity_graph(n);
  const double p = 0.3;
  const LambdaSet ls = LambdaSet::build(g, p);
  std::mt19937_64 gen(12);
  std::normal_distribution<double> normal;
  std::vector<std::uint8_t> z(n);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = i % 3 == 0;
    y(static_cast<Eigen::Index>(i)) = normal(gen);
  }
  const Assignment a(z, p);
  const Dataset ds = Dataset::outcomes_only(y);
  const PointEstimate pe = hajek(g, a, ds);
  const VarianceEstimate ve = variance_estimate(g, a, ds, ls, pe);
  double s1 = 0.0, s0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = y(static_cast<Eigen::Index>(i));
    if (z[i]) s1 += (yi - pe.mu1_hat) * (yi - pe.mu1_hat) * (1.0 - p) / (p * p);
    else s0 += (yi - pe.mu0_hat) * (yi - pe.mu0_hat) * p / ((1.0 - p) * (1.0 - p));
  }
  const double n2 = double(n) * double(n);
  CHECK(ve.v1_hat == doctest::Approx(s1 / n2).epsilon(1e-12));
  CHECK(ve.v0_hat == doctest::Approx(s0 / n2).epsilon(1e-12));
}

TEST_CASE("variance estimate is shift invariant") {
  std::mt19937_64 gen(21);
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = testsupport::random_instance(gen, 10, 30);
    const LambdaSet ls = LambdaSet::build(inst.graph, inst.p);
    std::vector<std::uint8_t> z(inst.graph.m());
    for (auto& zk : z) zk = gen() & 1u;
    const Assignment a(z, inst.p);
    const Exposure e = exposures(inst.graph, a);
    if (e.num_treated() == 0 || e.num_control() == 0) continue;
    const Dataset ds = Dataset::centered(inst.pt.observe(inst.graph, a), inst.x);
    const Dataset shifted = ds.with_outcomes(ds.y().array() + 100.0);
    const VarianceEstimate v = variance_estimate(inst.graph, a, ds, ls, hajek(inst.graph, a, ds));
    const VarianceEstimate w = variance_estimate(inst.graph, a, shifted, ls, hajek(inst.graph, a, shifted));
    CHECK(std::abs(v.v1_hat - w.v1_hat) <= 1e-9 * (1.0 + std::abs(v.v1_hat)));
    CHECK(std::abs(v.v0_hat - w.v0_hat) <= 1e-9 * (1.0 + std::abs(v.v0_hat)));

    const AdjustmentCoefficients c = estimate_beta(inst.graph, a, ds, ls);
    const VarianceEstimate va = variance_estimate(inst.graph, a, ds, ls, adjusted_hajek(inst.graph, a, ds, c), c);
    const AdjustmentCoefficients cs = estimate_beta(inst.graph, a, shifted, ls);
    const VarianceEstimate wa =
        variance_estimate(inst.graph, a, shifted, ls, adjusted_hajek(inst.graph, a, shifted, cs), cs);
    CHECK(std::abs(va.v_ub_hat - wa.v_ub_hat) <= 1e-8 * (1.0 + va.v_ub_hat));
  }
}

TEST_CASE("coefficient dimension is checked") {
  const BipartiteGraph g = testsupport::toy_graph();
  const LambdaSet ls = LambdaSet::build(g, 0.5);
  const Assignment a({1, 0, 1, 1}, 0.5);
  const Dataset ds = Dataset::outcomes_only(Eigen::VectorXd::LinSpaced(5, 1, 5));
  const PointEstimate pe = hajek(g, a, ds);
  CHECK_THROWS_AS(variance_estimate(g, a, ds, ls, pe, AdjustmentCoefficients::zero(2)), Error);
}

TEST_CASE("variance estimate tracks the population bound") {
  const std::size_t n = 2000, m = 400, reps = 500;
  const double p = 0.5;
  const BipartiteGraph g = generate_random(n, m, 3, 404);
  const LambdaSet ls = LambdaSet::build(g, p);
  std::mt19937_64 gen(6);
  std::normal_distribution<double> normal;
  PotentialTable pt{Eigen::VectorXd(n), Eigen::VectorXd(n), {}};
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    pt.y1(i) = 2.0 + 3.0 * normal(gen);
    pt.y0(i) = 1.0 + 2.0 * normal(gen);
  }
  const PopulationVariance pv = true_variance(ls, pt);
  double ratio_sum = 0.0;
  std::size_t used = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    Rng rng(55, r);
    const Assignment a = sample_assignment(p, m, rng);
    const Dataset ds = Dataset::outcomes_only(pt.observe(g, a));
    const VarianceEstimate ve = variance_estimate(g, a, ds, ls, hajek(g, a, ds));
    ratio_sum += ve.v_ub_hat / pv.v_ub;
    ++used;
  }
  const double mean_ratio = ratio_sum / double(used);
  CHECK(mean_ratio >= 0.9);
  CHECK(mean_ratio <= 1.1);
}
