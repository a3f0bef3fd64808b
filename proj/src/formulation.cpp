#include "sopf/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sopf {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Triplets = std::vector<Eigen::Triplet<double>>;

ConstraintHandle handle(RowKind k, int entity, int t, RowSide side = RowSide::none) {
  return {k, entity, t, side};
}

double eval_linear(const LinearRow& r, const VectorXd& x) {
  double v = r.constant;
  for (const auto& term : r.terms) v += term.coefficient * x[term.column];
  return v;
}

void push_linear(const LinearRow& r, int row, Triplets& trip) {
  for (const auto& term : r.terms) trip.emplace_back(row, term.column, term.coefficient);
}

std::optional<int> find_row(const std::vector<std::pair<ConstraintHandle, int>>& index,
                            const ConstraintHandle& h) {
  auto it = std::lower_bound(index.begin(), index.end(), h,
                             [](const auto& e, const ConstraintHandle& k) { return e.first < k; });
  if (it == index.end() || it->first != h) return std::nullopt;
  return it->second;
}

std::vector<std::pair<ConstraintHandle, int>> make_index(const std::vector<ConstraintHandle>& hs) {
  std::vector<std::pair<ConstraintHandle, int>> idx;
  idx.reserve(hs.size());
  for (int i = 0; i < static_cast<int>(hs.size()); ++i) idx.emplace_back(hs[i], i);
  std::sort(idx.begin(), idx.end());
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i].first == idx[i - 1].first)
      throw std::logic_error("duplicate constraint handle " + idx[i].first.to_string());
  }
  return idx;
}

// Coefficients of E_{n,t} in the powers of period tau <= t, plus the constant.
struct SocRow {
  std::vector<LinearTerm> terms;
  double constant = 0.0;
};

SocRow soc_expression(const StorageUnit& s, const VariableLayout& L, double dt, int n, int t) {
  SocRow r;
  const double keep = 1.0 - s.self_discharge;
  r.constant = std::pow(keep, t + 1) * s.soc_initial;
  for (int tau = 0; tau <= t; ++tau) {
    const double decay = std::pow(keep, t - tau) * dt;
    r.terms.push_back({L.pch(n, tau), decay * s.eta_ch});
    r.terms.push_back({L.pdc(n, tau), -decay / s.eta_dc});
  }
  return r;
}

}  // namespace

ModeAssignment all_free(const NetworkCase& c) {
  return ModeAssignment(c.storages.size() * static_cast<std::size_t>(c.periods()),
                        StorageMode::free);
}

AcopfProblem::AcopfProblem(NetworkCase c, ModeAssignment modes, Execution exec)
    : case_(std::move(c)), modes_(std::move(modes)), exec_(exec), layout_(case_) {
  if (modes_.empty()) modes_ = all_free(case_);
  if (modes_.size() != case_.storages.size() * static_cast<std::size_t>(case_.periods()))
    throw std::invalid_argument("mode assignment size must be storage_count * T");
  build_rows();
}

void AcopfProblem::add_linear_eq(LinearRow row) {
  eq_handles_.push_back(row.handle);
  eq_linear_.push_back(std::move(row));
}

void AcopfProblem::add_linear_in(LinearRow row) {
  in_handles_.push_back(row.handle);
  in_linear_.push_back(std::move(row));
}

void AcopfProblem::build_rows() {
  const NetworkCase& c = case_;
  const VariableLayout& L = layout_;
  const int T = c.periods();
  const int nb = c.bus_count();
  const int nbr = static_cast<int>(c.branches.size());
  const double dt = c.time_grid.interval;

  // Balance rows. Injections enter with a minus sign, loads as constants.
  active_affine_.assign(static_cast<std::size_t>(T) * nb, {});
  reactive_affine_.assign(static_cast<std::size_t>(T) * nb, {});
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < nb; ++j) {
      auto& a = active_affine_[t * nb + j];
      auto& r = reactive_affine_[t * nb + j];
      a.handle = handle(RowKind::active_balance, j, t);
      r.handle = handle(RowKind::reactive_balance, j, t);
      a.constant = c.time_grid.load_p[j][t];
      r.constant = c.time_grid.load_q[j][t];
    }
    for (int g = 0; g < static_cast<int>(c.generators.size()); ++g) {
      const int j = c.generators[g].bus;
      active_affine_[t * nb + j].terms.push_back({L.pg(g, t), -1.0});
      reactive_affine_[t * nb + j].terms.push_back({L.qg(g, t), -1.0});
    }
    for (int k = 0; k < static_cast<int>(c.renewables.size()); ++k) {
      const int j = c.renewables[k].bus;
      active_affine_[t * nb + j].terms.push_back({L.prg(k, t), -1.0});
      reactive_affine_[t * nb + j].terms.push_back({L.qrg(k, t), -1.0});
    }
    for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
      const int j = c.storages[n].bus;
      active_affine_[t * nb + j].terms.push_back({L.pdc(n, t), -1.0});
      active_affine_[t * nb + j].terms.push_back({L.pch(n, t), 1.0});
      reactive_affine_[t * nb + j].terms.push_back({L.qess(n, t), -1.0});
    }
    for (int k = 0; k < static_cast<int>(c.svcs.size()); ++k) {
      reactive_affine_[t * nb + c.svcs[k].bus].terms.push_back({L.qsvc(k, t), -1.0});
    }
  }
  for (const auto& r : active_affine_) eq_handles_.push_back(r.handle);
  for (const auto& r : reactive_affine_) eq_handles_.push_back(r.handle);

  const int ref = c.reference_bus();
  for (int t = 0; t < T; ++t) {
    add_linear_eq({handle(RowKind::angle_ref, ref, t), {{L.theta(ref, t), 1.0}}, 0.0});
  }
  for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
    const StorageUnit& s = c.storages[n];
    SocRow e = soc_expression(s, L, dt, n, T - 1);
    add_linear_eq({handle(RowKind::soc_terminal, n, T - 1), e.terms, e.constant - s.soc_initial});
  }

  for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
    for (int t = 0; t < T; ++t) {
      const StorageMode m = modes_[n * T + t];
      if (m == StorageMode::charge_only)
        add_linear_eq({handle(RowKind::mode_fix, n, t), {{L.pdc(n, t), 1.0}}, 0.0});
      else if (m == StorageMode::discharge_only)
        add_linear_eq({handle(RowKind::mode_fix, n, t), {{L.pch(n, t), 1.0}}, 0.0});
    }
  }

  // Inequalities: thermal, circles, linear.
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < nbr; ++k) in_handles_.push_back(handle(RowKind::thermal, k, t));
  }
  for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
    for (int t = 0; t < T; ++t) {
      circles_.push_back({handle(RowKind::circle_dc, n, t), L.pdc(n, t), L.qess(n, t),
                          c.storages[n].apparent_capacity});
    }
  }
  for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
    for (int t = 0; t < T; ++t) {
      circles_.push_back({handle(RowKind::circle_ch, n, t), L.pch(n, t), L.qess(n, t),
                          c.storages[n].apparent_capacity});
    }
  }
  for (int k = 0; k < static_cast<int>(c.renewables.size()); ++k) {
    for (int t = 0; t < T; ++t) {
      circles_.push_back({handle(RowKind::rg_circle, k, t), L.prg(k, t), L.qrg(k, t),
                          c.renewables[k].apparent_capacity});
    }
  }
  for (const auto& cr : circles_) in_handles_.push_back(cr.handle);

  for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
    const StorageUnit& s = c.storages[n];
    for (int t = 0; t < T; ++t) {
      const int ch = L.pch(n, t), dc = L.pdc(n, t);
      // A mode-fixed power keeps only its equality; its lower row would
      // leave no interior.
      const StorageMode m = modes_[n * T + t];
      if (m != StorageMode::discharge_only)
        add_linear_in({handle(RowKind::ch_lower, n, t), {{ch, -1.0}}, 0.0});
      add_linear_in({handle(RowKind::ch_upper, n, t), {{ch, 1.0}}, -s.p_ch_max});
      if (m != StorageMode::charge_only)
        add_linear_in({handle(RowKind::dc_lower, n, t), {{dc, -1.0}}, 0.0});
      add_linear_in({handle(RowKind::dc_upper, n, t), {{dc, 1.0}}, -s.p_dc_max});

      SocRow e = soc_expression(s, L, dt, n, t);
      LinearRow lower{handle(RowKind::soc_lower, n, t), e.terms, s.soc_min - e.constant};
      for (auto& term : lower.terms) term.coefficient = -term.coefficient;
      add_linear_in(std::move(lower));
      add_linear_in({handle(RowKind::soc_upper, n, t), e.terms, e.constant - s.soc_max});

      add_linear_in({handle(RowKind::relax_cut, n, t),
                     {{ch, 1.0 / s.p_ch_max}, {dc, 1.0 / s.p_dc_max}},
                     -1.0});
    }
  }

  for (int g = 0; g < static_cast<int>(c.generators.size()); ++g) {
    const Generator& gen = c.generators[g];
    for (int t = 0; t < T; ++t) {
      const int p = L.pg(g, t), q = L.qg(g, t), ru = L.ru(g, t), rd = L.rd(g, t);
      add_linear_in({handle(RowKind::gen_p, g, t, RowSide::lower), {{p, -1.0}}, gen.p_min});
      add_linear_in({handle(RowKind::gen_p, g, t, RowSide::upper), {{p, 1.0}}, -gen.p_max});
      add_linear_in({handle(RowKind::gen_q, g, t, RowSide::lower), {{q, -1.0}}, gen.q_min});
      add_linear_in({handle(RowKind::gen_q, g, t, RowSide::upper), {{q, 1.0}}, -gen.q_max});

      // p_{t-1} is the case's initial output at t = 0.
      LinearRow up{handle(RowKind::ramp, g, t, RowSide::upper), {{p, 1.0}}, -gen.ramp_up * dt};
      LinearRow down{handle(RowKind::ramp, g, t, RowSide::lower), {{p, -1.0}},
                     -gen.ramp_down * dt};
      if (t == 0) {
        up.constant -= gen.initial_output;
        down.constant += gen.initial_output;
      } else {
        up.terms.push_back({L.pg(g, t - 1), -1.0});
        down.terms.push_back({L.pg(g, t - 1), 1.0});
      }
      add_linear_in(std::move(up));
      add_linear_in(std::move(down));

      add_linear_in({handle(RowKind::reserve_ru, g, t, RowSide::lower), {{ru, -1.0}}, 0.0});
      add_linear_in({handle(RowKind::reserve_ru, g, t, RowSide::upper), {{ru, 1.0}},
                     -gen.ramp_up * dt});
      add_linear_in({handle(RowKind::reserve_ru, g, t, RowSide::headroom), {{ru, 1.0}, {p, 1.0}},
                     -gen.p_max});
      add_linear_in({handle(RowKind::reserve_rd, g, t, RowSide::lower), {{rd, -1.0}}, 0.0});
      add_linear_in({handle(RowKind::reserve_rd, g, t, RowSide::upper), {{rd, 1.0}},
                     -gen.ramp_down * dt});
      add_linear_in({handle(RowKind::reserve_rd, g, t, RowSide::headroom), {{rd, 1.0}, {p, -1.0}},
                     gen.p_min});
    }
  }
  if (!c.generators.empty()) {
    for (int t = 0; t < T; ++t) {
      LinearRow up{handle(RowKind::system_reserve, 0, t, RowSide::upper), {},
                   c.time_grid.reserve_up[t]};
      LinearRow down{handle(RowKind::system_reserve, 0, t, RowSide::lower), {},
                     c.time_grid.reserve_down[t]};
      for (int g = 0; g < static_cast<int>(c.generators.size()); ++g) {
        up.terms.push_back({L.ru(g, t), -1.0});
        down.terms.push_back({L.rd(g, t), -1.0});
      }
      add_linear_in(std::move(up));
      add_linear_in(std::move(down));
    }
  }

  for (int k = 0; k < static_cast<int>(c.renewables.size()); ++k) {
    const RenewableGen& r = c.renewables[k];
    for (int t = 0; t < T; ++t) {
      const int p = L.prg(k, t);
      add_linear_in({handle(RowKind::rg_p, k, t, RowSide::lower), {{p, -1.0}}, r.p_min[t]});
      add_linear_in({handle(RowKind::rg_p, k, t, RowSide::upper), {{p, 1.0}}, -r.forecast[t]});
    }
  }
  for (int k = 0; k < static_cast<int>(c.svcs.size()); ++k) {
    for (int t = 0; t < T; ++t) {
      const int q = L.qsvc(k, t);
      add_linear_in({handle(RowKind::svc_q, k, t, RowSide::lower), {{q, -1.0}}, c.svcs[k].q_min});
      add_linear_in({handle(RowKind::svc_q, k, t, RowSide::upper), {{q, 1.0}}, -c.svcs[k].q_max});
    }
  }
  for (int j = 0; j < nb; ++j) {
    for (int t = 0; t < T; ++t) {
      const int v = L.v(j, t);
      add_linear_in({handle(RowKind::v_bounds, j, t, RowSide::lower), {{v, -1.0}},
                     c.buses[j].voltage_min});
      add_linear_in({handle(RowKind::v_bounds, j, t, RowSide::upper), {{v, 1.0}},
                     -c.buses[j].voltage_max});
    }
  }

  eq_index_ = make_index(eq_handles_);
  in_index_ = make_index(in_handles_);
}

std::optional<int> AcopfProblem::equality_row(const ConstraintHandle& h) const {
  return find_row(eq_index_, h);
}

std::optional<int> AcopfProblem::inequality_row(const ConstraintHandle& h) const {
  return find_row(in_index_, h);
}

const LinearRow* AcopfProblem::linear_row(const ConstraintHandle& h) const {
  const int balance = static_cast<int>(active_affine_.size() + reactive_affine_.size());
  if (auto r = equality_row(h); r && *r >= balance) return &eq_linear_[*r - balance];
  const int nonlinear = inequality_count() - static_cast<int>(in_linear_.size());
  if (auto r = inequality_row(h); r && *r >= nonlinear) return &in_linear_[*r - nonlinear];
  return nullptr;
}

// ---------------------------------------------------------------- objective

double AcopfProblem::objective(const VectorXd& x) const {
  require_finite(x, "objective");
  const NetworkCase& c = case_;
  const VariableLayout& L = layout_;
  const int T = c.periods();
  double f = 0.0;
  for (int t = 0; t < T; ++t) {
    for (int g = 0; g < static_cast<int>(c.generators.size()); ++g) {
      const Generator& gen = c.generators[g];
      const double p = x[L.pg(g, t)];
      f += gen.cost_quadratic * p * p + gen.cost_linear * p + gen.cost_constant;
    }
    for (int k = 0; k < static_cast<int>(c.renewables.size()); ++k) {
      const RenewableGen& r = c.renewables[k];
      const double p = x[L.prg(k, t)];
      f += r.cost_linear[t] * p;
      if (r.forecast[t] > 0) {
        const double d = p - r.forecast[t];
        f += r.curtail_penalty * d * d / r.forecast[t];
      }
    }
    for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
      f += charge_gradient(c, n, t) * x[L.pch(n, t)] + discharge_gradient(c, n, t) * x[L.pdc(n, t)];
    }
  }
  return f;
}

VectorXd AcopfProblem::gradient(const VectorXd& x) const {
  require_finite(x, "gradient");
  const NetworkCase& c = case_;
  const VariableLayout& L = layout_;
  const int T = c.periods();
  VectorXd g = VectorXd::Zero(dimension());
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < static_cast<int>(c.generators.size()); ++k) {
      const Generator& gen = c.generators[k];
      g[L.pg(k, t)] = 2.0 * gen.cost_quadratic * x[L.pg(k, t)] + gen.cost_linear;
    }
    for (int k = 0; k < static_cast<int>(c.renewables.size()); ++k) {
      const RenewableGen& r = c.renewables[k];
      double v = r.cost_linear[t];
      if (r.forecast[t] > 0) v += 2.0 * r.curtail_penalty * (x[L.prg(k, t)] - r.forecast[t]) / r.forecast[t];
      g[L.prg(k, t)] = v;
    }
    for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
      g[L.pch(n, t)] = charge_gradient(c, n, t);
      g[L.pdc(n, t)] = discharge_gradient(c, n, t);
    }
  }
  return g;
}

double charge_gradient(const NetworkCase& c, int n, int t) {
  const StorageUnit& s = c.storages.at(n);
  return s.charge_fee.at(t) + s.loss_penalty * (1.0 - s.eta_ch);
}

double discharge_gradient(const NetworkCase& c, int n, int t) {
  const StorageUnit& s = c.storages.at(n);
  return s.discharge_fee.at(t) + s.loss_penalty * (1.0 / s.eta_dc - 1.0);
}

// ---------------------------------------------------------------- constraints

void AcopfProblem::constraints(const VectorXd& x, VectorXd& c_eq, VectorXd& c_in) const {
  require_finite(x, "constraints");
  const NetworkCase& c = case_;
  const VariableLayout& L = layout_;
  const int T = c.periods();
  const int nb = c.bus_count();
  const int nbr = static_cast<int>(c.branches.size());
  const std::span<const double> xs(x.data(), x.size());
  const auto flows = evaluate_network_flows(c, L, xs, exec_);

  c_eq.resize(equality_count());
  c_in.resize(inequality_count());
  for (int i = 0; i < T * nb; ++i) {
    c_eq[i] = eval_linear(active_affine_[i], x);
    c_eq[T * nb + i] = eval_linear(reactive_affine_[i], x);
  }
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < nb; ++j) {
      const double v = x[L.v(j, t)];
      c_eq[t * nb + j] += v * v * c.buses[j].shunt_conductance;
      c_eq[T * nb + t * nb + j] -= v * v * c.buses[j].shunt_susceptance;
    }
    for (int k = 0; k < nbr; ++k) {
      const Branch& br = c.branches[k];
      const BranchFlows& f = flows[t * nbr + k];
      c_eq[t * nb + br.from_bus] += f.p_from.value;
      c_eq[t * nb + br.to_bus] += f.p_to.value;
      c_eq[T * nb + t * nb + br.from_bus] += f.q_from.value;
      c_eq[T * nb + t * nb + br.to_bus] += f.q_to.value;
      const double s = br.thermal_limit;
      c_in[t * nbr + k] = f.p_from.value * f.p_from.value + f.q_from.value * f.q_from.value - s * s;
    }
  }
  const int balance = 2 * T * nb;
  for (std::size_t i = 0; i < eq_linear_.size(); ++i) c_eq[balance + i] = eval_linear(eq_linear_[i], x);

  int row = T * nbr;
  for (const auto& cr : circles_) {
    c_in[row++] = x[cr.a] * x[cr.a] + x[cr.b] * x[cr.b] - cr.cap * cr.cap;
  }
  for (const auto& r : in_linear_) c_in[row++] = eval_linear(r, x);
}

void AcopfProblem::jacobians(const VectorXd& x, SparseMatrix& j_eq, SparseMatrix& j_in) const {
  require_finite(x, "jacobians");
  const NetworkCase& c = case_;
  const VariableLayout& L = layout_;
  const int T = c.periods();
  const int nb = c.bus_count();
  const int nbr = static_cast<int>(c.branches.size());
  const auto flows = evaluate_network_flows(c, L, std::span<const double>(x.data(), x.size()), exec_);

  Triplets te, ti;
  for (int i = 0; i < T * nb; ++i) {
    push_linear(active_affine_[i], i, te);
    push_linear(reactive_affine_[i], T * nb + i, te);
  }
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < nb; ++j) {
      const double v = x[L.v(j, t)];
      te.emplace_back(t * nb + j, L.v(j, t), 2.0 * v * c.buses[j].shunt_conductance);
      te.emplace_back(T * nb + t * nb + j, L.v(j, t), -2.0 * v * c.buses[j].shunt_susceptance);
    }
    for (int k = 0; k < nbr; ++k) {
      const Branch& br = c.branches[k];
      const BranchFlows& f = flows[t * nbr + k];
      const int idx[4] = {L.v(br.from_bus, t), L.v(br.to_bus, t), L.theta(br.from_bus, t),
                          L.theta(br.to_bus, t)};
      const int pf = t * nb + br.from_bus, pt = t * nb + br.to_bus;
      for (int a = 0; a < 4; ++a) {
        te.emplace_back(pf, idx[a], f.p_from.grad[a]);
        te.emplace_back(pt, idx[a], f.p_to.grad[a]);
        te.emplace_back(T * nb + pf, idx[a], f.q_from.grad[a]);
        te.emplace_back(T * nb + pt, idx[a], f.q_to.grad[a]);
        ti.emplace_back(t * nbr + k, idx[a],
                        2.0 * (f.p_from.value * f.p_from.grad[a] + f.q_from.value * f.q_from.grad[a]));
      }
    }
  }
  const int balance = 2 * T * nb;
  for (std::size_t i = 0; i < eq_linear_.size(); ++i) push_linear(eq_linear_[i], balance + i, te);

  int row = T * nbr;
  for (const auto& cr : circles_) {
    ti.emplace_back(row, cr.a, 2.0 * x[cr.a]);
    ti.emplace_back(row, cr.b, 2.0 * x[cr.b]);
    ++row;
  }
  for (const auto& r : in_linear_) push_linear(r, row++, ti);

  j_eq.resize(equality_count(), dimension());
  j_eq.setFromTriplets(te.begin(), te.end());
  j_in.resize(inequality_count(), dimension());
  j_in.setFromTriplets(ti.begin(), ti.end());
}

MatrixXd AcopfProblem::lagrangian_hessian(const VectorXd& x, double obj_factor, const VectorXd& nu,
                                          const VectorXd& lambda) const {
  require_finite(x, "lagrangian_hessian");
  const NetworkCase& c = case_;
  const VariableLayout& L = layout_;
  const int T = c.periods();
  const int nb = c.bus_count();
  const int nbr = static_cast<int>(c.branches.size());
  MatrixXd H = MatrixXd::Zero(dimension(), dimension());

  for (int t = 0; t < T; ++t) {
    for (int g = 0; g < static_cast<int>(c.generators.size()); ++g)
      H(L.pg(g, t), L.pg(g, t)) += obj_factor * 2.0 * c.generators[g].cost_quadratic;
    for (int k = 0; k < static_cast<int>(c.renewables.size()); ++k) {
      const RenewableGen& r = c.renewables[k];
      if (r.forecast[t] > 0)
        H(L.prg(k, t), L.prg(k, t)) += obj_factor * 2.0 * r.curtail_penalty / r.forecast[t];
    }
  }
  int row = T * nbr;
  for (const auto& cr : circles_) {
    const double w = lambda[row++];
    H(cr.a, cr.a) += 2.0 * w;
    H(cr.b, cr.b) += 2.0 * w;
  }
  NetworkWeights w{std::span<const double>(nu.data(), T * nb),
                   std::span<const double>(nu.data() + T * nb, T * nb),
                   std::span<const double>(lambda.data(), T * nbr)};
  accumulate_network_hessian(c, L, std::span<const double>(x.data(), x.size()), w, H, exec_);
  return H;
}

VectorXd AcopfProblem::initial_point() const {
  const NetworkCase& c = case_;
  const VariableLayout& L = layout_;
  const int T = c.periods();
  VectorXd x = VectorXd::Zero(dimension());
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < c.bus_count(); ++j) {
      const Bus& b = c.buses[j];
      x[L.v(j, t)] = (b.voltage_min <= 1.0 && 1.0 <= b.voltage_max)
                         ? 1.0
                         : 0.5 * (b.voltage_min + b.voltage_max);
    }
    for (int g = 0; g < static_cast<int>(c.generators.size()); ++g) {
      const Generator& gen = c.generators[g];
      x[L.pg(g, t)] = 0.5 * (gen.p_min + gen.p_max);
      x[L.qg(g, t)] = 0.5 * (gen.q_min + gen.q_max);
      x[L.ru(g, t)] = 0.25 * std::min(gen.ramp_up * c.time_grid.interval, gen.p_max - gen.p_min);
      x[L.rd(g, t)] = 0.25 * std::min(gen.ramp_down * c.time_grid.interval, gen.p_max - gen.p_min);
    }
    for (int k = 0; k < static_cast<int>(c.renewables.size()); ++k) {
      x[L.prg(k, t)] = 0.5 * (c.renewables[k].p_min[t] + c.renewables[k].forecast[t]);
    }
    // A quarter of each rating sits inside both the boxes and the relax cut.
    for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
      x[L.pch(n, t)] = 0.25 * c.storages[n].p_ch_max;
      x[L.pdc(n, t)] = 0.25 * c.storages[n].p_dc_max;
    }
    for (int k = 0; k < static_cast<int>(c.svcs.size()); ++k) {
      x[L.qsvc(k, t)] = 0.5 * (c.svcs[k].q_min + c.svcs[k].q_max);
    }
  }
  return x;
}

// ---------------------------------------------------------------- free functions

AcopfProblem build_relaxed(const NetworkCase& c, Execution exec) {
  return AcopfProblem(c, all_free(c), exec);
}

AcopfProblem build_exact(const NetworkCase& c, const ModeAssignment& modes, Execution exec) {
  return AcopfProblem(c, modes, exec);
}

ObjectiveValue eval_objective(const AcopfProblem& p, const VectorXd& x) {
  if (x.size() != p.dimension()) throw std::invalid_argument("eval_objective: wrong dimension");
  return {p.objective(x), p.gradient(x)};
}

ConstraintValues eval_constraints(const AcopfProblem& p, const VectorXd& x) {
  if (x.size() != p.dimension()) throw std::invalid_argument("eval_constraints: wrong dimension");
  ConstraintValues out;
  p.constraints(x, out.c_eq, out.c_in);
  p.jacobians(x, out.j_eq, out.j_in);
  return out;
}

std::vector<double> soc_trajectory(const NetworkCase& c, int n, std::span<const double> p_ch,
                                   std::span<const double> p_dc) {
  const StorageUnit& s = c.storages.at(n);
  const int T = c.periods();
  if (static_cast<int>(p_ch.size()) != T || static_cast<int>(p_dc.size()) != T)
    throw std::invalid_argument("soc_trajectory: arrays must have length T");
  const double keep = 1.0 - s.self_discharge;
  const double dt = c.time_grid.interval;
  std::vector<double> e(T);
  for (int t = 0; t < T; ++t) {
    double v = std::pow(keep, t + 1) * s.soc_initial;
    for (int tau = 0; tau <= t; ++tau)
      v += std::pow(keep, t - tau) * (p_ch[tau] * s.eta_ch - p_dc[tau] / s.eta_dc) * dt;
    e[t] = v;
  }
  return e;
}

}  // namespace sopf
