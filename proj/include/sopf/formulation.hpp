#pragma once

// Multi-period storage ACOPF as a smooth NLP.
//
// Rows, in order:
//   equalities    active balance [t*nb + j], reactive balance [t*nb + j],
//                 angle reference per t, terminal SOC per storage,
//                 mode-fixing rows (exact model only)
//   inequalities  thermal [t*nbr + k], ESS discharge circles, ESS charge
//                 circles, RG circles, then every linear row
//
// The active balance row is written as
//   sum of flows leaving j + V_j^2 g^s_j - (device injections) + p^D_{j,t} = 0
// so its multiplier is the marginal cost of load at (j,t). SOC is not a
// variable: E_{n,t} is an affine function of the charge/discharge powers of
// periods 0..t.

#include <optional>
#include <span>
#include <vector>

#include "sopf/layout.hpp"
#include "sopf/network.hpp"
#include "sopf/nlp.hpp"
#include "sopf/power_flow.hpp"

namespace sopf {

enum class StorageMode { free, charge_only, discharge_only };

/// Mode per (storage, period), stored at [n * T + t].
using ModeAssignment = std::vector<StorageMode>;

ModeAssignment all_free(const NetworkCase& c);

struct LinearTerm {
  int column = 0;
  double coefficient = 0.0;
};

/// c(x) = sum coefficient * x[column] + constant
struct LinearRow {
  ConstraintHandle handle;
  std::vector<LinearTerm> terms;
  double constant = 0.0;
};

/// c(x) = x[a]^2 + x[b]^2 - cap^2
struct CircleRow {
  ConstraintHandle handle;
  int a = 0, b = 0;
  double cap = 0.0;
};

class AcopfProblem final : public NlpProblem {
 public:
  AcopfProblem(NetworkCase c, ModeAssignment modes, Execution exec = Execution::parallel);

  const NetworkCase& network() const { return case_; }
  const VariableLayout& layout() const { return layout_; }
  const ModeAssignment& modes() const { return modes_; }
  Execution execution() const { return exec_; }

  int dimension() const override { return layout_.dimension(); }
  int equality_count() const override { return static_cast<int>(eq_handles_.size()); }
  int inequality_count() const override { return static_cast<int>(in_handles_.size()); }

  double objective(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  void constraints(const Eigen::VectorXd& x, Eigen::VectorXd& c_eq,
                   Eigen::VectorXd& c_in) const override;
  void jacobians(const Eigen::VectorXd& x, SparseMatrix& j_eq, SparseMatrix& j_in) const override;
  Eigen::MatrixXd lagrangian_hessian(const Eigen::VectorXd& x, double obj_factor,
                                     const Eigen::VectorXd& nu,
                                     const Eigen::VectorXd& lambda) const override;
  Eigen::VectorXd initial_point() const override;

  const std::vector<ConstraintHandle>& equality_handles() const override { return eq_handles_; }
  const std::vector<ConstraintHandle>& inequality_handles() const override { return in_handles_; }

  std::optional<int> equality_row(const ConstraintHandle& h) const;
  std::optional<int> inequality_row(const ConstraintHandle& h) const;

  /// Linear description of an affine row, if the row is affine.
  const LinearRow* linear_row(const ConstraintHandle& h) const;

 private:
  void build_rows();
  void add_linear_eq(LinearRow row);
  void add_linear_in(LinearRow row);

  NetworkCase case_;
  ModeAssignment modes_;
  Execution exec_;
  VariableLayout layout_;

  // Balance rows: device injections and loads are the affine part.
  std::vector<LinearRow> active_affine_, reactive_affine_;
  std::vector<LinearRow> eq_linear_;     // after the balance rows
  std::vector<CircleRow> circles_;       // after the thermal rows
  std::vector<LinearRow> in_linear_;     // after the circles

  std::vector<ConstraintHandle> eq_handles_, in_handles_;
  std::vector<std::pair<ConstraintHandle, int>> eq_index_, in_index_;  // sorted
};

AcopfProblem build_relaxed(const NetworkCase& c, Execution exec = Execution::parallel);
AcopfProblem build_exact(const NetworkCase& c, const ModeAssignment& modes,
                         Execution exec = Execution::parallel);

struct ObjectiveValue {
  double value = 0.0;
  Eigen::VectorXd gradient;
};
ObjectiveValue eval_objective(const AcopfProblem& p, const Eigen::VectorXd& x);

struct ConstraintValues {
  Eigen::VectorXd c_eq, c_in;
  SparseMatrix j_eq, j_in;
};
ConstraintValues eval_constraints(const AcopfProblem& p, const Eigen::VectorXd& x);

/// E_{n,t} for t = 0..T-1, i.e. the state after each period's dispatch.
std::vector<double> soc_trajectory(const NetworkCase& c, int storage,
                                   std::span<const double> p_ch, std::span<const double> p_dc);

/// Explicit objective partials of one storage at period t (per-unit prices):
/// f + sigma (1 - eta_ch) and g + sigma (1/eta_dc - 1).
double charge_gradient(const NetworkCase& c, int storage, int t);
double discharge_gradient(const NetworkCase& c, int storage, int t);

}  // namespace sopf
