#pragma once

// Branch-and-bound over per-(storage, period) charge/discharge modes. Every
// node is the relaxed NLP plus the mode-fixing rows of its assignment; a
// node whose solution has no simultaneous charging/discharging is a
// candidate incumbent, otherwise the most violated slot is split into a
// charge_only and a discharge_only child.

#include <optional>
#include <vector>

#include "sopf/formulation.hpp"
#include "sopf/ipm.hpp"

namespace sopf {

struct MipOptions {
  SolverOptions nlp;
  double gap_tolerance = 1e-6;
  double scd_tolerance = 1e-8;
  double bound_slack = 1e-6;  // relative to max(1, |parent bound|)
  int max_nodes = 10000;
  bool serial = true;         // one node at a time, fully deterministic
  Execution kernels = Execution::serial;
};

struct ScdResidual {
  std::vector<double> products;  // p_ch * p_dc at [n * T + t]
  double max = 0.0;
  int storage = -1, period = -1;  // location of the maximum
};

ScdResidual scd_residual(const Eigen::VectorXd& x, const NetworkCase& c);

enum class MipStatus { optimal, node_limit, no_incumbent, root_failed };
std::string_view mip_status_name(MipStatus s);

struct BnbResult {
  MipStatus status = MipStatus::no_incumbent;
  std::optional<SolveResult> incumbent;
  ModeAssignment incumbent_modes;
  double incumbent_objective = 0.0;
  double best_bound = 0.0;
  double gap = 0.0;
  int nodes_explored = 0;
  int failed_nodes = 0;
  int bound_violations = 0;  // children that came out below parent - slack
  double root_objective = 0.0;
  double root_scd = 0.0;
};

BnbResult solve_mip(const NetworkCase& c, const MipOptions& options = {});

}  // namespace sopf
