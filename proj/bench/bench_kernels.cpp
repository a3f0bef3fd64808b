// Serial reference kernels against their OpenMP counterparts.
// Argument: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "sopf/formulation.hpp"
#include "sopf/ipm.hpp"
#include "sopf/power_flow.hpp"

using namespace sopf;

namespace {

const NetworkCase& nine_bus() {
  static const NetworkCase c = load_case(std::string(SOPF_CASE_DIR) + "/nine_bus.json");
  return c;
}

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "parallel" : "serial"); }

void BM_NetworkFlows(benchmark::State& s) {
  const AcopfProblem p = build_relaxed(nine_bus(), mode(s));
  const Eigen::VectorXd x = p.initial_point();
  for (auto _ : s)
    benchmark::DoNotOptimize(evaluate_network_flows(nine_bus(), p.layout(),
                                                    {x.data(), static_cast<std::size_t>(x.size())}, mode(s)));
  label(s);
}

void BM_Constraints(benchmark::State& s) {
  const AcopfProblem p = build_relaxed(nine_bus(), mode(s));
  const Eigen::VectorXd x = p.initial_point();
  Eigen::VectorXd ce, ci;
  for (auto _ : s) {
    p.constraints(x, ce, ci);
    benchmark::DoNotOptimize(ce.data());
  }
  label(s);
}

void BM_Jacobians(benchmark::State& s) {
  const AcopfProblem p = build_relaxed(nine_bus(), mode(s));
  const Eigen::VectorXd x = p.initial_point();
  SparseMatrix je, ji;
  for (auto _ : s) {
    p.jacobians(x, je, ji);
    benchmark::DoNotOptimize(je.valuePtr());
  }
  label(s);
}

void BM_Hessian(benchmark::State& s) {
  const AcopfProblem p = build_relaxed(nine_bus(), mode(s));
  const Eigen::VectorXd x = p.initial_point();
  const Eigen::VectorXd nu = Eigen::VectorXd::Constant(p.equality_count(), 0.5);
  const Eigen::VectorXd lambda = Eigen::VectorXd::Constant(p.inequality_count(), 0.1);
  for (auto _ : s) benchmark::DoNotOptimize(p.lagrangian_hessian(x, 1.0, nu, lambda));
  label(s);
}

void BM_RelaxedSolve(benchmark::State& s) {
  const AcopfProblem p = build_relaxed(nine_bus(), mode(s));
  for (auto _ : s) benchmark::DoNotOptimize(solve(p).solution.objective);
  label(s);
}

}  // namespace

BENCHMARK(BM_NetworkFlows)->Arg(0)->Arg(1);
BENCHMARK(BM_Constraints)->Arg(0)->Arg(1);
BENCHMARK(BM_Jacobians)->Arg(0)->Arg(1);
BENCHMARK(BM_Hessian)->Arg(0)->Arg(1);
BENCHMARK(BM_RelaxedSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
