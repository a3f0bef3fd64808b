#include "sopf/bnb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <omp.h>

namespace sopf {

ScdResidual scd_residual(const Eigen::VectorXd& x, const NetworkCase& c) {
  const VariableLayout L(c);
  if (x.size() != L.dimension()) throw std::invalid_argument("scd_residual: wrong dimension");
  const int T = c.periods();
  ScdResidual out;
  out.products.assign(c.storages.size() * static_cast<std::size_t>(T), 0.0);
  for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
    for (int t = 0; t < T; ++t) {
      const double v = x[L.pch(n, t)] * x[L.pdc(n, t)];
      out.products[n * T + t] = v;
      if (out.storage < 0 || v > out.max) {
        out.max = v;
        out.storage = n;
        out.period = t;
      }
    }
  }
  return out;
}

std::string_view mip_status_name(MipStatus s) {
  switch (s) {
    case MipStatus::optimal: return "optimal";
    case MipStatus::node_limit: return "node_limit";
    case MipStatus::no_incumbent: return "no_incumbent";
    case MipStatus::root_failed: return "root_failed";
  }
  return "unknown";
}

namespace {

struct Node {
  ModeAssignment modes;
  double bound = 0.0;  // parent objective
  int depth = 0;
  long order = 0;
  Eigen::VectorXd warm;
};

// Best bound first, deeper first on ties, then creation order.
struct Worse {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.order > b.order;
  }
};

struct Evaluated {
  SolveResult result;
  bool ok = false;
};

Evaluated solve_node(const NetworkCase& c, const Node& node, const MipOptions& o) {
  AcopfProblem p = build_exact(c, node.modes, o.kernels);
  Evaluated e;
  e.result = node.warm.size() ? solve(p, o.nlp, node.warm) : solve(p, o.nlp);
  e.ok = e.result.solution.status == SolveStatus::optimal;
  return e;
}

}  // namespace

BnbResult solve_mip(const NetworkCase& c, const MipOptions& o) {
  const int T = c.periods();
  const VariableLayout L(c);
  BnbResult out;
  std::priority_queue<Node, std::vector<Node>, Worse> open;
  long counter = 0;
  double incumbent = std::numeric_limits<double>::infinity();
  open.push({all_free(c), -std::numeric_limits<double>::infinity(), 0, counter++, {}});

  auto cutoff = [&] { return incumbent - o.gap_tolerance * std::max(1.0, std::abs(incumbent)); };
  const int batch_size = o.serial ? 1 : std::max(1, omp_get_max_threads());

  while (!open.empty()) {
    if (std::isfinite(incumbent) && open.top().bound >= cutoff()) break;
    if (out.nodes_explored >= o.max_nodes) break;

    std::vector<Node> batch;
    while (!open.empty() && static_cast<int>(batch.size()) < batch_size &&
           out.nodes_explored + static_cast<int>(batch.size()) < o.max_nodes) {
      if (std::isfinite(incumbent) && open.top().bound >= cutoff()) break;
      batch.push_back(open.top());
      open.pop();
    }
    std::vector<Evaluated> results(batch.size());
#pragma omp parallel for schedule(dynamic) if (batch.size() > 1)
    for (int i = 0; i < static_cast<int>(batch.size()); ++i) results[i] = solve_node(c, batch[i], o);

    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Node& node = batch[i];
      Evaluated& e = results[i];
      const bool root = out.nodes_explored == 0;
      ++out.nodes_explored;
      if (!e.ok) {
        if (root) {
          out.status = MipStatus::root_failed;
          out.root_objective = e.result.solution.objective;
          out.incumbent = std::move(e.result);
          return out;
        }
        ++out.failed_nodes;
        continue;
      }
      const double obj = e.result.solution.objective;
      const ScdResidual scd = scd_residual(e.result.solution.x, c);
      if (root) {
        out.root_objective = obj;
        out.root_scd = scd.max;
      } else if (obj < node.bound - o.bound_slack * std::max(1.0, std::abs(node.bound))) {
        // Local optimum below the parent's: noted, never used to prune.
        ++out.bound_violations;
      }
      if (std::isfinite(incumbent) && obj >= cutoff()) continue;

      if (scd.max <= o.scd_tolerance) {
        if (obj < incumbent) {
          incumbent = obj;
          out.incumbent_objective = obj;
          out.incumbent_modes = node.modes;
          out.incumbent = std::move(e.result);
        }
        continue;
      }
      // Branch on the free slot with the largest product.
      int slot = -1;
      double worst = -1.0;
      for (int k = 0; k < static_cast<int>(scd.products.size()); ++k) {
        if (node.modes[k] == StorageMode::free && scd.products[k] > worst) {
          worst = scd.products[k];
          slot = k;
        }
      }
      if (slot < 0) continue;
      const int n = slot / T, t = slot % T;
      for (StorageMode m : {StorageMode::charge_only, StorageMode::discharge_only}) {
        Node child{node.modes, obj, node.depth + 1, counter++, e.result.solution.x};
        child.modes[slot] = m;
        child.warm[m == StorageMode::charge_only ? L.pdc(n, t) : L.pch(n, t)] = 0.0;
        open.push(std::move(child));
      }
    }
  }

  if (!std::isfinite(incumbent)) {
    out.status = open.empty() ? MipStatus::no_incumbent : MipStatus::node_limit;
    out.best_bound = open.empty() ? std::numeric_limits<double>::infinity() : open.top().bound;
    return out;
  }
  double bound = incumbent;
  if (!open.empty()) bound = std::min(bound, open.top().bound);
  out.best_bound = bound;
  out.gap = (incumbent - bound) / std::max(1.0, std::abs(incumbent));
  out.status = out.gap <= o.gap_tolerance ? MipStatus::optimal : MipStatus::node_limit;
  return out;
}

}  // namespace sopf
