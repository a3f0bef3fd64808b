#pragma once

// Independent reference computations. Nothing here calls the code it is
// used to check: derivatives come from central differences, prices from
// re-solving perturbed cases, thresholds from the closed forms written out
// again, the MIP optimum from brute force.

#include <optional>
#include <random>
#include <vector>

#include "sopf/bnb.hpp"
#include "sopf/conditions.hpp"

namespace sopf::oracle {

struct DerivativeError {
  double gradient = 0.0;  // max over entries of |analytic - fd| / max(1, |analytic|)
  double jacobian = 0.0;
  double worst() const { return std::max(gradient, jacobian); }
};

/// Central differences with step h on every coordinate.
DerivativeError finite_difference_check(const NlpProblem& p, const Eigen::VectorXd& x, double h = 1e-6);

/// Hessian of  f + nu' c_E + lambda' c_I  against central differences of
/// the Lagrangian gradient, same error measure.
double hessian_check(const NlpProblem& p, const Eigen::VectorXd& x, const Eigen::VectorXd& nu,
                     const Eigen::VectorXd& lambda, double h = 1e-6);

/// (f / eta_dc + g * eta_ch) / (eta_ch - 1 / eta_dc)
double c2_by_hand(double f, double g, double eta_ch, double eta_dc);

/// Storage objective partials straight from the case data, $/MWh.
double grad_ch_by_hand(const NetworkCase& c, int n, int t);
double grad_dc_by_hand(const NetworkCase& c, int n, int t);

/// The two storage stationarity rows and the LMP reconstruction, rebuilt
/// from raw per-unit duals and reported in $/MWh.
struct Identities {
  double charge = 0.0, discharge = 0.0, lmp = 0.0;
  double lmp_rebuilt = 0.0;
  double c1 = 0.0, c2 = 0.0;
};
Identities identities_by_hand(const NetworkCase& c, const Eigen::VectorXd& x, const DualRecord& d,
                              int n, int t);

/// Threshold orderings and verdict inclusions evaluated from scratch for a
/// report. Returns the number of violations.
struct LemmaTally {
  int order = 0;       // c1 > c2 + 1e-9
  int premises = 0;    // c3/c4/c5 threshold inequalities under their premises
  int inclusion = 0;   // some C3..C8 holds while C2 fails
  int c2_c1 = 0;       // C2 holds, C1 fails
  int prior = 0;       // C6 without C5, C8 without C6
  int total() const { return order + premises + inclusion + c2_c1 + prior; }
};
LemmaTally lemmas_by_hand(const NetworkCase& c, const ConditionReport& rep);

/// d objective / d p^D_{bus,t} by central differences of full re-solves,
/// per-unit price. Empty if either perturbed solve fails.
std::optional<double> price_by_resolve(const NetworkCase& c, int bus, int t, double h = 1e-4,
                                       const SolverOptions& o = {});

/// Best objective over every pure charge_only/discharge_only assignment.
/// Assignments whose NLP does not reach optimal are skipped.
struct Enumeration {
  double best = 0.0;
  ModeAssignment modes;
  int solved = 0, skipped = 0;
};
std::optional<Enumeration> enumerate_modes(const NetworkCase& c, const SolverOptions& o = {});

}  // namespace sopf::oracle
