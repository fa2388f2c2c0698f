#include <doctest.h>

#include <random>

#include "bipexp/error.hpp"
#include "bipexp/estimator.hpp"
#include "bipexp/oracle.hpp"
#include "bipexp/population.hpp"
#include "support.hpp"

using namespace bipexp;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out(k++) = x;
  return out;
}

const Assignment kFigZ({1, 0, 1, 1}, 0.5);

}  // namespace

TEST_CASE("hajek on toy graph") {
  const BipartiteGraph g = testsupport::toy_graph();
  const PointEstimate pe = hajek(g, kFigZ, Dataset::outcomes_only(vec({1, 2, 3, 4, 5})));
  CHECK(pe.mu1_hat == doctest::Approx(2.75).epsilon(1e-15));
  CHECK(pe.mu0_hat == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(pe.tau_hat == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pe.n_treated_exposed == 3);
  CHECK(pe.n_control_exposed == 1);
}

TEST_CASE("hajek degenerate and constant cases") {
  const BipartiteGraph g = testsupport::toy_graph();
  CHECK(hajek(g, kFigZ, Dataset::outcomes_only(Eigen::VectorXd::Constant(5, 3.7))).tau_hat ==
        doctest::Approx(0.0));
  try {
    hajek(g, Assignment({1, 1, 1, 1}, 0.5), Dataset::outcomes_only(vec({1, 2, 3, 4, 5})));
    FAIL("expected NoControlExposure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoControlExposure);
  }
  try {
    hajek(g, Assignment({0, 0, 0, 0}, 0.5), Dataset::outcomes_only(vec({1, 2, 3, 4, 5})));
    FAIL("expected NoTreatedExposure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoTreatedExposure);
  }
}

TEST_CASE("hajek shift and scale equivariance") {
  std::mt19937_64 gen(4);
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = testsupport::random_instance(gen, 10, 30);
    std::vector<std::uint8_t> z(inst.graph.m());
    for (auto& zk : z) zk = gen() & 1u;
    const Assignment a(z, inst.p);
    const Exposure e = exposures(inst.graph, a);
    if (e.num_treated() == 0 || e.num_control() == 0) continue;
    const Eigen::VectorXd y = inst.pt.observe(inst.graph, a);
    const PointEstimate base = hajek(inst.graph, a, Dataset::outcomes_only(y));
    const PointEstimate shifted = hajek(inst.graph, a, Dataset::outcomes_only(y.array() + 2.5));
    CHECK(std::abs(shifted.mu1_hat - base.mu1_hat - 2.5) <= 1e-12);
    CHECK(std::abs(shifted.mu0_hat - base.mu0_hat - 2.5) <= 1e-12);
    CHECK(std::abs(shifted.tau_hat - base.tau_hat) <= 1e-12);
    const PointEstimate scaled = hajek(inst.graph, a, Dataset::outcomes_only(-3.0 * y));
    CHECK(std::abs(scaled.tau_hat + 3.0 * base.tau_hat) <= 1e-12);
  }
}

TEST_CASE("horvitz-thompson is exactly unbiased on toy graph") {
  const BipartiteGraph g = testsupport::toy_graph();
  PotentialTable pt{vec({2.0, -1.0, 0.5, 4.0, 3.0}), vec({1.0, 0.0, -2.0, 1.5, 0.25}), {}};
  const double tau = true_estimand(pt).tau;
  const double e = exact_expectation(g, 0.5, pt, [&](const Assignment& a, const Eigen::VectorXd& y) {
    return horvitz_thompson(g, a, Dataset::outcomes_only(y)).tau_hat;
  });
  CHECK(std::abs(e - tau) <= 1e-12);
}

TEST_CASE("horvitz-thompson all treated") {
  const BipartiteGraph g = testsupport::toy_graph();
  const Eigen::VectorXd y = vec({1, 2, 3, 4, 5});
  const PointEstimate pe = horvitz_thompson(g, Assignment({1, 1, 1, 1}, 0.5), Dataset::outcomes_only(y));
  const double expected = (1 * 4.0 + 2 * 2.0 + 3 * 4.0 + 4 * 2.0 + 5 * 2.0) / 5.0;
  CHECK(pe.mu1_hat == doctest::Approx(expected));
  CHECK(pe.mu0_hat == 0.0);
  CHECK(horvitz_thompson(g, kFigZ, Dataset::outcomes_only(Eigen::VectorXd::Zero(5))).tau_hat == 0.0);
}

TEST_CASE("adjusted hajek") {
  const BipartiteGraph g = testsupport::toy_graph();
  Eigen::MatrixXd x(5, 1);
  x << 1, -1, 0, 0, 0;
  const Dataset ds = Dataset::centered(vec({1, 2, 3, 4, 5}), x);

  const PointEstimate plain = hajek(g, kFigZ, ds);
  const PointEstimate zero = adjusted_hajek(g, kFigZ, ds, AdjustmentCoefficients::zero(1));
  CHECK(zero.tau_hat == plain.tau_hat);
  CHECK(zero.mu1_hat == plain.mu1_hat);
  CHECK(zero.mu0_hat == plain.mu0_hat);

  // Residuals Y - X = (0, 3, 3, 4, 5): treated units 1, 4, 5 with weights
  // 4, 2, 2 give 18/8; control unit 2 gives 3.
  AdjustmentCoefficients one{vec({1.0}), vec({1.0}), 1, CoefficientSource::kUser};
  const PointEstimate adj = adjusted_hajek(g, kFigZ, ds, one);
  CHECK(adj.mu1_hat == doctest::Approx(2.25));
  CHECK(adj.mu0_hat == doctest::Approx(3.0));
  CHECK(adj.tau_hat == doctest::Approx(-0.75));
}

TEST_CASE("adjusted hajek cancels exact linear outcomes") {
  const BipartiteGraph g = testsupport::toy_graph();
  Eigen::MatrixXd x(5, 2);
  x << 1, 0, -1, 2, 0.5, -1, 0.25, -0.5, -0.75, -0.5;
  const Eigen::VectorXd beta = vec({2.0, -1.0});
  const Dataset ds = Dataset::centered(x * beta, x);
  const PointEstimate pe = adjusted_hajek(g, kFigZ, ds, {beta, beta, 2, CoefficientSource::kUser});
  CHECK(std::abs(pe.mu1_hat) <= 1e-14);
  CHECK(std::abs(pe.tau_hat) <= 1e-14);
}

TEST_CASE("dataset centering") {
  Eigen::MatrixXd raw(3, 1);
  raw << 1, 2, 6;
  const Dataset ds = Dataset::from_raw(vec({0, 0, 0}), raw);
  CHECK(ds.column_means()(0) == doctest::Approx(3.0));
  CHECK(std::abs(ds.x().sum()) <= 1e-12);
  CHECK_THROWS_AS(Dataset::centered(vec({0, 0, 0}), raw), Error);
  const Dataset with_deg = ds.with_degree_covariate(identity_graph(3));
  CHECK(with_deg.d() == 2);
}

TEST_CASE("estimate_beta with zero covariates") {
  const BipartiteGraph g = testsupport::toy_graph();
  const LambdaSet ls = LambdaSet::build(g, 0.5);
  const Dataset ds = Dataset::centered(vec({1, 2, 3, 4, 5}), Eigen::MatrixXd::Zero(5, 1));
  const AdjustmentCoefficients c = estimate_beta(g, kFigZ, ds, ls);
  CHECK(c.beta1.norm() == 0.0);
  CHECK(c.beta0.norm() == 0.0);
  CHECK(c.rank == 0);
  CHECK(c.source == CoefficientSource::kEstimated);
}

TEST_CASE("enumerated IPW right-hand side equals the population vector") {
  const BipartiteGraph g = testsupport::toy_graph();
  const double p = 0.5;
  const LambdaSet ls = LambdaSet::build(g, p);
  Eigen::MatrixXd x(5, 2);
  x << 1, 0.5, -1, 2, 0.5, -1, 0.25, -0.5, -0.75, -1;
  x = x.rowwise() - x.colwise().mean();
  PotentialTable pt{vec({2.0, -1.0, 0.5, 4.0, 3.0}), vec({1.0, 0.0, -2.0, 1.5, 0.25}), {}};
  const Estimand est = true_estimand(pt);
  Eigen::VectorXd mean_rhs = Eigen::VectorXd::Zero(4);
  testsupport::enumerate(g.m(), p, [&](const std::vector<std::uint8_t>& z, double prob) {
    const Assignment a(z, p);
    const Dataset ds = Dataset::centered(pt.observe(g, a), x);
    mean_rhs += prob * beta_rhs(g, a, ds, ls, est.mu1, est.mu0);
  });
  CHECK((mean_rhs - oracle_rhs(ls, pt, x)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("estimate_beta solves the full-rank system") {
  std::mt19937_64 gen(31);
  const auto inst = testsupport::random_instance(gen, 10, 30);
  const LambdaSet ls = LambdaSet::build(inst.graph, inst.p);
  std::vector<std::uint8_t> z(inst.graph.m());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = k % 2;
  const Assignment a(z, inst.p);
  const Dataset ds = Dataset::centered(inst.pt.observe(inst.graph, a), inst.x);
  const Exposure e = exposures(inst.graph, a);
  REQUIRE(e.num_treated() > 0);
  REQUIRE(e.num_control() > 0);
  const AdjustmentCoefficients c = estimate_beta(inst.graph, a, ds, ls);
  const Eigen::MatrixXd omega = covariate_gram(ls, inst.x);
  const PointEstimate pe = hajek(inst.graph, a, ds);
  const Eigen::VectorXd rhs = beta_rhs(inst.graph, a, ds, ls, pe.mu1_hat, pe.mu0_hat);
  Eigen::VectorXd beta(4);
  beta << c.beta1, c.beta0;
  if (c.rank == 4) {
    const Eigen::VectorXd direct = omega.lu().solve(rhs);
    CHECK((beta - direct).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + direct.norm()));
  }
  CHECK((omega * beta - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()));
}

TEST_CASE("oracle_beta: constant outcomes give zero") {
  std::mt19937_64 gen(2);
  const auto inst = testsupport::random_instance(gen, 8, 20);
  const LambdaSet ls = LambdaSet::build(inst.graph, inst.p);
  PotentialTable flat{Eigen::VectorXd::Constant(inst.graph.n(), 3.0), Eigen::VectorXd::Constant(inst.graph.n(), -1.0), {}};
  const AdjustmentCoefficients c = oracle_beta(ls, flat, inst.x);
  CHECK(c.beta1.norm() <= 1e-14);
  CHECK(c.beta0.norm() <= 1e-14);
  CHECK(c.source == CoefficientSource::kOracle);
}

TEST_CASE("oracle_beta on identity graph by hand") {
  // p = 1/2 makes all three matrices the identity, so the gram is
  // s [[1,1],[1,1]] with s = sum x^2 = 20 and both rhs entries equal
  // x'Y1c + x'Y0c = 12 + 4; the minimum-norm solution is 16 / 40 each.
  const BipartiteGraph g = identity_graph(4);
  const LambdaSet ls = LambdaSet::build(g, 0.5);
  Eigen::MatrixXd x(4, 1);
  x << -3, -1, 1, 3;
  PotentialTable pt{vec({1, 2, 2, 5}), vec({0, 0, 1, 1}), {}};
  const AdjustmentCoefficients c = oracle_beta(ls, pt, x);
  CHECK(c.rank == 1);
  CHECK(c.beta1(0) == doctest::Approx(0.4));
  CHECK(c.beta0(0) == doctest::Approx(0.4));
}

TEST_CASE("oracle_beta maximizes the efficiency gain") {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> normal;
  for (int rep = 0; rep < 20; ++rep) {
    const auto inst = testsupport::random_instance(gen, 10, 25);
    const LambdaSet ls = LambdaSet::build(inst.graph, inst.p);
    const AdjustmentCoefficients c = oracle_beta(ls, inst.pt, inst.x);
    const double best = efficiency_gain(ls, inst.pt, inst.x, c.beta1, c.beta0);
    CHECK(best >= 0.0);
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXd d1(2), d0(2);
      d1 << normal(gen), normal(gen);
      d0 << normal(gen), normal(gen);
      const double eps = 0.1;
      const double other = efficiency_gain(ls, inst.pt, inst.x, c.beta1 + eps * d1, c.beta0 + eps * d0);
      CHECK(best >= other - 1e-9);
    }
  }
}

TEST_CASE("estimate_beta is consistent for the oracle coefficients") {
  const std::size_t n = 2000, m = 400, reps = 500;
  const BipartiteGraph g = generate_random(n, m, 3, 77);
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd x(n, 2);
  PotentialTable pt;
  pt.y1.resize(n);
  pt.y0.resize(n);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    x(i, 0) = normal(gen);
    x(i, 1) = normal(gen);
  }
  x = x.rowwise() - x.colwise().mean();
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    pt.y1(i) = 1.0 + 2.0 * x(i, 0) - x(i, 1) + normal(gen);
    pt.y0(i) = 0.5 * x(i, 0) + normal(gen);
  }
  const double p = 0.5;
  const LambdaSet ls = LambdaSet::build(g, p);
  const AdjustmentCoefficients oracle = oracle_beta(ls, pt, x);
  Eigen::VectorXd target(4);
  target << oracle.beta1, oracle.beta0;

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(4), sum_sq = Eigen::VectorXd::Zero(4);
  std::size_t used = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    Rng rng(123, r);
    const Assignment a = sample_assignment(p, m, rng);
    const Dataset ds = Dataset::centered(pt.observe(g, a), x);
    const AdjustmentCoefficients c = estimate_beta(g, a, ds, ls);
    Eigen::VectorXd b(4);
    b << c.beta1, c.beta0;
    sum += b;
    sum_sq += b.cwiseProduct(b);
    ++used;
  }
  const double k = static_cast<double>(used);
  const Eigen::VectorXd mean = sum / k;
  const Eigen::VectorXd var = (sum_sq / k - mean.cwiseProduct(mean)) * (k / (k - 1.0));
  const double mc_se = std::sqrt(var.sum() / k);
  CHECK((mean - target).norm() <= 3.0 * mc_se);
}
