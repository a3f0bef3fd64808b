#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "support.hpp"

using namespace sopf;

TEST(Toys, SquareWithLowerBound) {
  const test::SquareToy p;
  const SolveResult r = solve(p);
  ASSERT_EQ(r.solution.status, SolveStatus::optimal);
  EXPECT_NEAR(r.solution.x[0], 1.0, 1e-8);
  EXPECT_NEAR(r.duals.inequality()[0], 2.0, 1e-8);
}

TEST(Toys, LinearWithBox) {
  const test::LinearToy p;
  const SolveResult r = solve(p);
  ASSERT_EQ(r.solution.status, SolveStatus::optimal);
  EXPECT_NEAR(r.solution.x[0], 3.0, 1e-8);
  EXPECT_NEAR(r.duals.inequality()[0], 1.0, 1e-8);
  EXPECT_NEAR(r.duals.inequality()[1], 0.0, 1e-8);
}

TEST(KktResiduals, AnalyticPointOfSquareToy) {
  const test::SquareToy p;
  const DualRecord d({}, Eigen::VectorXd(0), p.inequality_handles(), Eigen::VectorXd::Constant(1, 2.0));
  const KktResiduals k = kkt_residuals(p, Eigen::VectorXd::Constant(1, 1.0), d);
  EXPECT_LE(k.stationarity, 1e-12);
  EXPECT_LE(k.feasibility, 1e-12);
  EXPECT_LE(k.complementarity, 1e-12);
}

TEST(KktResiduals, NonOptimalPointHasStationarityError) {
  const test::SquareToy p;
  const DualRecord d({}, Eigen::VectorXd(0), p.inequality_handles(), Eigen::VectorXd::Constant(1, 0.3));
  EXPECT_GT(kkt_residuals(p, Eigen::VectorXd::Constant(1, 1.7), d).stationarity, 0.0);
}

TEST(Options, RejectsOutOfRangeValues) {
  SolverOptions o;
  o.barrier_shrink = 1.5;
  EXPECT_THROW(o.validate(), std::invalid_argument);
  o = {};
  o.fraction_to_boundary = 1.0;
  EXPECT_THROW(o.validate(), std::invalid_argument);
  o = {};
  o.kkt_tolerance = 0.0;
  EXPECT_THROW(o.validate(), std::invalid_argument);
  EXPECT_NO_THROW(SolverOptions{}.validate());
}

class ConvergedCase : public ::testing::TestWithParam<std::string> {};

TEST_P(ConvergedCase, ResidualsWithinTolerance) {
  const SolverOptions o;
  const AcopfProblem p = build_relaxed(test::bundled(GetParam()), Execution::serial);
  const SolveResult r = solve(p, o);
  ASSERT_EQ(r.solution.status, SolveStatus::optimal);
  EXPECT_LE(r.solution.primal_infeasibility, o.kkt_tolerance);
  EXPECT_LE(r.solution.kkt_error, o.kkt_tolerance);

  // The solver works on objective_scale * f, so multipliers are reported
  // divided by that factor; residuals are compared in the solver's units.
  const double scale = r.solution.objective_scale;
  const KktResiduals k = kkt_residuals(p, r.solution.x, r.duals);
  EXPECT_LE(k.feasibility, o.kkt_tolerance);
  EXPECT_LE(scale * k.stationarity, o.kkt_tolerance);
  EXPECT_LE(scale * k.complementarity, o.kkt_tolerance);

  Eigen::VectorXd ce, ci;
  p.constraints(r.solution.x, ce, ci);
  const Eigen::VectorXd& lambda = r.duals.inequality();
  EXPECT_GE(lambda.minCoeff(), -1e-12);
  for (int i = 0; i < ci.size(); ++i) EXPECT_LE(scale * std::abs(lambda[i] * ci[i]), o.kkt_tolerance);
}

TEST_P(ConvergedCase, IterateInvariants) {
  const SolverOptions o;
  const SolveResult r = solve(build_relaxed(test::bundled(GetParam()), Execution::serial), o);
  ASSERT_FALSE(r.history.empty());
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    const IterationRecord& h = r.history[i];
    EXPECT_GE(h.min_multiplier, -1e-12);
    EXPECT_GE(h.min_slack_ratio, (1.0 - o.fraction_to_boundary) - 1e-12);
    if (i > 0) EXPECT_LE(h.mu, r.history[i - 1].mu);
  }
}

TEST_P(ConvergedCase, Deterministic) {
  const NetworkCase c = test::bundled(GetParam());
  const SolveResult a = solve(build_relaxed(c, Execution::serial));
  const SolveResult b = solve(build_relaxed(c, Execution::serial));
  EXPECT_EQ(a.solution.iterations, b.solution.iterations);
  EXPECT_TRUE(a.solution.x == b.solution.x);
  EXPECT_TRUE(a.duals.equality() == b.duals.equality());
  EXPECT_TRUE(a.duals.inequality() == b.duals.inequality());
}

TEST_P(ConvergedCase, WarmStartFromOptimum) {
  const NetworkCase c = test::bundled(GetParam());
  const AcopfProblem p = build_relaxed(c, Execution::serial);
  const SolveResult cold = solve(p);
  const SolveResult warm = solve(p, {}, cold.solution.x);
  ASSERT_EQ(warm.solution.status, SolveStatus::optimal);
  EXPECT_NEAR(warm.solution.objective, cold.solution.objective, 1e-6 * std::max(1.0, std::abs(cold.solution.objective)));
}

INSTANTIATE_TEST_SUITE_P(Bundled, ConvergedCase, ::testing::ValuesIn(test::bundled_names()));

TEST(Prices, TwoBusLossyLineMatchesResolve) {
  const NetworkCase c = case_from_json(test::two_bus_doc(50.0, 0.02, 0.1));
  const SolveResult r = solve(build_relaxed(c, Execution::serial));
  ASSERT_EQ(r.solution.status, SolveStatus::optimal);
  const double l0 = r.duals.lmp(0, 0), l1 = r.duals.lmp(1, 0);
  EXPECT_GT(l1, l0);
  for (int bus : {0, 1}) {
    const auto fd = oracle::price_by_resolve(c, bus, 0);
    ASSERT_TRUE(fd.has_value());
    const double lmp = r.duals.lmp(bus, 0);
    EXPECT_NEAR(lmp, *fd, 1e-3 * std::abs(*fd)) << "bus " << bus;
  }
}

TEST(Prices, ThreeBusMatchesResolve) {
  const NetworkCase c = test::bundled("three_bus");
  const SolveResult r = solve(build_relaxed(c, Execution::serial));
  ASSERT_EQ(r.solution.status, SolveStatus::optimal);
  for (int t = 0; t < c.periods(); ++t)
    for (int j = 0; j < c.bus_count(); ++j) {
      const auto fd = oracle::price_by_resolve(c, j, t);
      ASSERT_TRUE(fd.has_value());
      EXPECT_NEAR(r.duals.lmp(j, t), *fd, 1e-3 * std::abs(*fd)) << "bus " << j << " t " << t;
    }
}

TEST(Status, LoadAboveCapacityIsInfeasible) {
  const NetworkCase c = case_from_json(test::two_bus_doc(400.0, 0.02, 0.1));
  const SolveResult r = solve(build_relaxed(c, Execution::serial));
  EXPECT_EQ(r.solution.status, SolveStatus::infeasible_detected);
}

TEST(Status, IterationLimit) {
  SolverOptions o;
  o.max_iterations = 2;
  const SolveResult r = solve(build_relaxed(test::bundled("nine_bus"), Execution::serial), o);
  EXPECT_EQ(r.solution.status, SolveStatus::max_iter);
}

TEST(IterationLog, OneTabSeparatedLinePerIteration) {
  const auto path = std::filesystem::temp_directory_path() / "sopf_ipm_log.tsv";
  SolverOptions o;
  o.log_path = path.string();
  const SolveResult r = solve(build_relaxed(test::bundled("three_bus"), Execution::serial), o);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line, "iter\tmu\tobjective\tprimal_inf\tdual_inf\tstep");
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 5) << line;
    ++rows;
  }
  EXPECT_EQ(rows, static_cast<int>(r.history.size()));
  std::filesystem::remove(path);
}
