#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace sopf;

TEST(ScdResidual, NoChargingMeansZero) {
  const NetworkCase c = test::bundled("nine_bus");
  const VariableLayout L(c);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(L.dimension(), 0.4);
  for (int n = 0; n < static_cast<int>(c.storages.size()); ++n)
    for (int t = 0; t < c.periods(); ++t) x[L.pch(n, t)] = 0.0;
  EXPECT_EQ(scd_residual(x, c).max, 0.0);
}

TEST(ScdResidual, SingleSlotProduct) {
  const NetworkCase c = test::bundled("nine_bus");
  const VariableLayout L(c);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(L.dimension());
  x[L.pch(1, 3)] = 0.3;
  x[L.pdc(1, 3)] = 0.2;
  const ScdResidual s = scd_residual(x, c);
  EXPECT_DOUBLE_EQ(s.products[1 * c.periods() + 3], 0.06);
  EXPECT_DOUBLE_EQ(s.max, 0.06);
  EXPECT_EQ(s.storage, 1);
  EXPECT_EQ(s.period, 3);
}

TEST(BranchAndBound, ExactRootIsIncumbent) {
  const NetworkCase c = test::bundled("three_bus");
  const SolveResult relaxed = solve(build_relaxed(c, Execution::serial));
  ASSERT_EQ(relaxed.solution.status, SolveStatus::optimal);
  ASSERT_LE(scd_residual(relaxed.solution.x, c).max, 1e-8);
  const BnbResult m = solve_mip(c);
  EXPECT_EQ(m.status, MipStatus::optimal);
  EXPECT_EQ(m.nodes_explored, 1);
  EXPECT_NEAR(m.incumbent_objective, relaxed.solution.objective, 1e-9 * std::abs(relaxed.solution.objective));
}

TEST(BranchAndBound, SingleSlotSplitTakesBetterChild) {
  const NetworkCase c = test::bundled("scd_micro");
  ASSERT_EQ(c.storages.size() * c.periods(), 1u);
  const SolveResult relaxed = solve(build_relaxed(c, Execution::serial));
  ASSERT_GT(scd_residual(relaxed.solution.x, c).max, 1e-8);

  double child[2];
  int k = 0;
  for (StorageMode mode : {StorageMode::charge_only, StorageMode::discharge_only}) {
    const SolveResult r = solve(build_exact(c, {mode}, Execution::serial));
    ASSERT_EQ(r.solution.status, SolveStatus::optimal);
    child[k++] = r.solution.objective;
  }
  const BnbResult m = solve_mip(c);
  EXPECT_EQ(m.status, MipStatus::optimal);
  EXPECT_EQ(m.nodes_explored, 3);
  EXPECT_NEAR(m.incumbent_objective, std::min(child[0], child[1]), 1e-6 * std::abs(std::min(child[0], child[1])));
  EXPECT_GE(m.incumbent_objective, relaxed.solution.objective - 1e-6);
}

TEST(BranchAndBound, MatchesEnumeration) {
  const NetworkCase c = test::bundled("mip_oracle");
  ASSERT_LE(c.storages.size() * c.periods(), 4u);
  const auto e = oracle::enumerate_modes(c);
  ASSERT_TRUE(e.has_value());
  const BnbResult m = solve_mip(c);
  ASSERT_EQ(m.status, MipStatus::optimal);
  EXPECT_NEAR(m.incumbent_objective, e->best, 1e-6 * std::max(1.0, std::abs(e->best)));
}

TEST(BranchAndBound, IncumbentIsFeasible) {
  for (const std::string& name : {"scd_micro", "mip_oracle", "nine_bus"}) {
    const NetworkCase c = test::bundled(name);
    const MipOptions o;
    const BnbResult m = solve_mip(c, o);
    ASSERT_TRUE(m.incumbent.has_value()) << name;
    const Eigen::VectorXd& x = m.incumbent->solution.x;
    EXPECT_LE(scd_residual(x, c).max, o.scd_tolerance) << name;
    const ConstraintValues v = eval_constraints(build_relaxed(c, Execution::serial), x);
    EXPECT_LE(v.c_eq.cwiseAbs().maxCoeff(), o.nlp.kkt_tolerance) << name;
    EXPECT_LE(v.c_in.maxCoeff(), o.nlp.kkt_tolerance) << name;
    EXPECT_LE(m.gap, o.gap_tolerance) << name;
  }
}

TEST(BranchAndBound, ParallelSearchFindsSameOptimum) {
  const NetworkCase c = test::bundled("mip_oracle");
  MipOptions serial, parallel;
  parallel.serial = false;
  parallel.kernels = Execution::parallel;
  const BnbResult a = solve_mip(c, serial), b = solve_mip(c, parallel);
  ASSERT_EQ(a.status, MipStatus::optimal);
  ASSERT_EQ(b.status, MipStatus::optimal);
  EXPECT_NEAR(a.incumbent_objective, b.incumbent_objective, 1e-6 * std::abs(a.incumbent_objective));
}

TEST(BranchAndBound, NodeLimit) {
  MipOptions o;
  o.max_nodes = 1;
  const BnbResult m = solve_mip(test::bundled("scd_micro"), o);
  EXPECT_EQ(m.status, MipStatus::node_limit);
  EXPECT_EQ(m.nodes_explored, 1);
}
