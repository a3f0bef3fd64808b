#pragma once

// Primal-dual interior-point method for  min f(x)  s.t.  c_E(x) = 0, c_I(x) <= 0.
//
// Inequalities get slacks s > 0 with a log barrier; Newton steps on the
// perturbed KKT system are computed from the reduced system
//
//   [ W + J_I' S^-1 Lambda J_I + dw I     J_E'   ] [dx]
//   [ J_E                               -dc I    ] [dnu]
//
// with inertia correction (dw, dc) until the inertia is (n, m_E, 0). Steps
// respect the fraction-to-boundary rule on s and lambda and are globalised
// by backtracking on an l1-penalty barrier merit function. The barrier
// parameter follows the monotone Fiacco-McCormick rule. A Levenberg-Marquardt
// feasibility phase takes over when the line search stalls; converging to
// a point with nonzero violation reports infeasible_detected.

#include <optional>
#include <string>
#include <vector>

#include "sopf/nlp.hpp"

namespace sopf {

struct SolverOptions {
  double kkt_tolerance = 1e-8;
  double barrier_initial = 0.1;
  double barrier_shrink = 0.2;
  double fraction_to_boundary = 0.995;
  int max_iterations = 300;
  double regularization_min = 1e-10;
  double regularization_max = 1e4;
  /// Inequalities are enforced as c_I(x) <= bound_relax so that rows which
  /// are tight by construction (fixed modes, E_T = E_0 at a SOC bound) keep
  /// an interior.
  double bound_relax = 1e-12;
  double slack_floor = 1e-2;
  /// Tab-separated iteration log, disabled when empty.
  std::string log_path;

  void validate() const;
};

enum class SolveStatus { optimal, max_iter, infeasible_detected, numerical_failure };
std::string_view status_name(SolveStatus s);

struct SolutionPoint {
  Eigen::VectorXd x;
  double objective = 0.0;
  double primal_infeasibility = 0.0;
  double kkt_error = 0.0;  // scaled, as used for termination
  double objective_scale = 1.0;  // f is minimised as objective_scale * f
  int iterations = 0;
  SolveStatus status = SolveStatus::numerical_failure;
};

/// The eight storage multipliers of one (storage, period) plus lambda^relax.
struct EssMultipliers {
  double ch1 = 0, ch2 = 0, dc1 = 0, dc2 = 0;
  double s1 = 0, s2 = 0;        // circle_dc, circle_ch
  double soc1 = 0, soc2 = 0;
  double relax = 0;
};

/// Every constraint multiplier of a solve, keyed by constraint handle.
/// Values are in the problem's own units (per-unit prices for the ACOPF).
class DualRecord {
 public:
  DualRecord() = default;
  DualRecord(std::vector<ConstraintHandle> eq_handles, Eigen::VectorXd eq,
             std::vector<ConstraintHandle> in_handles, Eigen::VectorXd in);

  const Eigen::VectorXd& equality() const { return eq_; }
  const Eigen::VectorXd& inequality() const { return in_; }
  const std::vector<ConstraintHandle>& equality_handles() const { return eq_handles_; }
  const std::vector<ConstraintHandle>& inequality_handles() const { return in_handles_; }

  std::optional<double> find(const ConstraintHandle& h) const;
  /// Throws std::out_of_range if the handle is not part of the record.
  double at(const ConstraintHandle& h) const;
  /// Zero when the handle is absent.
  double value_or_zero(const ConstraintHandle& h) const;

  /// lambda^p_{j,t}: multiplier of the active power balance at bus j.
  double lmp(int bus, int t) const;
  EssMultipliers ess(int storage, int t) const;

  /// Mutable access used by diagnostics and tests that perturb duals.
  void set(const ConstraintHandle& h, double value);

 private:
  std::vector<ConstraintHandle> eq_handles_, in_handles_;
  Eigen::VectorXd eq_, in_;
  std::vector<std::pair<ConstraintHandle, int>> index_;  // sorted; in rows offset by m_E
};

struct IterationRecord {
  int iteration = 0;
  double mu = 0.0;
  double objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double step = 0.0;
  double min_multiplier = 0.0;   // min lambda after the step
  double min_slack_ratio = 1.0;  // min s_new / s_old over the step
};

struct SolveResult {
  SolutionPoint solution;
  DualRecord duals;
  std::vector<IterationRecord> history;
  int restorations = 0;
};

SolveResult solve(const NlpProblem& problem, const SolverOptions& options = {},
                  const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

struct KktResiduals {
  double stationarity = 0.0;    // || grad f + J_E' nu + J_I' lambda ||_inf
  double feasibility = 0.0;     // max(|c_E|, max(c_I, 0))
  double complementarity = 0.0; // max |lambda_i c_I,i|
};

/// Unscaled KKT residuals of a primal-dual pair, evaluated from scratch.
KktResiduals kkt_residuals(const NlpProblem& problem, const Eigen::VectorXd& x,
                           const DualRecord& duals);

/// Gradient of the Lagrangian at (x, duals).
Eigen::VectorXd lagrangian_gradient(const NlpProblem& problem, const Eigen::VectorXd& x,
                                    const DualRecord& duals);

}  // namespace sopf
