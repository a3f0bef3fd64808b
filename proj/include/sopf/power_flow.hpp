#pragma once

// Polar AC branch-flow kernels.
//
// Every branch flow expression has the shape
//   F = c_ff V_f^2 + c_tt V_t^2 + V_f V_t (alpha cos d + beta sin d),
//   d = theta_f - theta_t - phi,
// so one evaluator covers P and Q at both ends. Local variable order for
// gradients and Hessians is (V_from, V_to, theta_from, theta_to).
//
// The network kernels come in two flavours with identical results: a plain
// serial loop nest kept as the reference, and an OpenMP version that splits
// the work by period. Each period touches only its own voltage and angle
// variables, so period blocks never write to the same output entry.

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sopf/layout.hpp"
#include "sopf/network.hpp"

namespace sopf {

enum class Execution { serial, parallel };

struct FlowTerm {
  double value = 0.0;
  std::array<double, 4> grad{};
  std::array<std::array<double, 4>, 4> hess{};
};

struct BranchFlows {
  FlowTerm p_from, q_from, p_to, q_to;
};

struct FlowCoefficients {
  double c_ff = 0.0, c_tt = 0.0, alpha = 0.0, beta = 0.0;
};

/// Coefficients of P_ij, Q_ij, P_ji, Q_ji for branch `br` at period `t`.
std::array<FlowCoefficients, 4> flow_coefficients(const Branch& br, int t);

FlowTerm evaluate_flow(const FlowCoefficients& k, double v_from, double v_to,
                       double theta_from, double theta_to, double phi,
                       bool with_hessian);

BranchFlows branch_flows(const Branch& br, int t, double v_from, double v_to,
                         double theta_from, double theta_to, bool with_hessian);

/// Flows of every (branch, period), stored at [t * branch_count + k].
std::vector<BranchFlows> evaluate_network_flows(const NetworkCase& c,
                                                const VariableLayout& layout,
                                                std::span<const double> x,
                                                Execution exec);

/// Multiplier weights applied to the network part of the Lagrangian Hessian.
/// Bus arrays are indexed [t * bus_count + j], branch arrays [t * branch_count + k].
struct NetworkWeights {
  std::span<const double> active;    // active_balance rows
  std::span<const double> reactive;  // reactive_balance rows
  std::span<const double> thermal;   // thermal rows (P_ij^2 + Q_ij^2 - S^2)
};

/// Adds the second-order terms of the balance and thermal rows (branch
/// flows plus bus shunts), weighted by `w`, into the dense matrix `hess`.
void accumulate_network_hessian(const NetworkCase& c, const VariableLayout& layout,
                                std::span<const double> x, const NetworkWeights& w,
                                Eigen::MatrixXd& hess, Execution exec);

}  // namespace sopf
