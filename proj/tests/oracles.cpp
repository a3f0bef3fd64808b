#include "oracles.hpp"

#include <cmath>

namespace sopf::oracle {

namespace {

double rel(double analytic, double fd) { return std::abs(analytic - fd) / std::max(1.0, std::abs(analytic)); }

Eigen::VectorXd lagrangian_grad(const NlpProblem& p, const Eigen::VectorXd& x, const Eigen::VectorXd& nu,
                                const Eigen::VectorXd& lambda) {
  SparseMatrix je, ji;
  p.jacobians(x, je, ji);
  Eigen::VectorXd g = p.gradient(x);
  if (je.rows()) g += je.transpose() * nu;
  if (ji.rows()) g += ji.transpose() * lambda;
  return g;
}

}  // namespace

DerivativeError finite_difference_check(const NlpProblem& p, const Eigen::VectorXd& x, double h) {
  DerivativeError err;
  const Eigen::VectorXd g = p.gradient(x);
  SparseMatrix je, ji;
  p.jacobians(x, je, ji);
  const Eigen::MatrixXd JE(je), JI(ji);
  Eigen::VectorXd ep, ip, em, im;
  Eigen::VectorXd xp = x, xm = x;
  for (int j = 0; j < x.size(); ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const double fd = (p.objective(xp) - p.objective(xm)) / (2 * h);
    err.gradient = std::max(err.gradient, rel(g[j], fd));
    p.constraints(xp, ep, ip);
    p.constraints(xm, em, im);
    for (int r = 0; r < ep.size(); ++r) err.jacobian = std::max(err.jacobian, rel(JE(r, j), (ep[r] - em[r]) / (2 * h)));
    for (int r = 0; r < ip.size(); ++r) err.jacobian = std::max(err.jacobian, rel(JI(r, j), (ip[r] - im[r]) / (2 * h)));
    xp[j] = xm[j] = x[j];
  }
  return err;
}

double hessian_check(const NlpProblem& p, const Eigen::VectorXd& x, const Eigen::VectorXd& nu,
                     const Eigen::VectorXd& lambda, double h) {
  const Eigen::MatrixXd H = p.lagrangian_hessian(x, 1.0, nu, lambda);
  double worst = 0.0;
  Eigen::VectorXd xp = x, xm = x;
  for (int j = 0; j < x.size(); ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const Eigen::VectorXd col = (lagrangian_grad(p, xp, nu, lambda) - lagrangian_grad(p, xm, nu, lambda)) / (2 * h);
    for (int i = 0; i < x.size(); ++i) worst = std::max(worst, rel(H(i, j), col[i]));
    xp[j] = xm[j] = x[j];
  }
  return worst;
}

double c2_by_hand(double f, double g, double eta_ch, double eta_dc) {
  return (f / eta_dc + g * eta_ch) / (eta_ch - 1.0 / eta_dc);
}

double grad_ch_by_hand(const NetworkCase& c, int n, int t) {
  const StorageUnit& s = c.storages[n];
  return (s.charge_fee[t] + s.loss_penalty * (1.0 - s.eta_ch)) / c.base_mva;
}

double grad_dc_by_hand(const NetworkCase& c, int n, int t) {
  const StorageUnit& s = c.storages[n];
  return (s.discharge_fee[t] + s.loss_penalty * (1.0 / s.eta_dc - 1.0)) / c.base_mva;
}

Identities identities_by_hand(const NetworkCase& c, const Eigen::VectorXd& x, const DualRecord& d,
                              int n, int t) {
  const VariableLayout L(c);
  const StorageUnit& s = c.storages[n];
  const int T = c.periods();
  const double base = c.base_mva, dt = c.time_grid.interval, keep = 1.0 - s.self_discharge;
  auto dual = [&](RowKind k, int period) { return d.value_or_zero({k, n, period, RowSide::none}) / base; };
  double gamma = 0.0;
  for (int tau = t; tau < T; ++tau)
    gamma += std::pow(keep, tau - t) * (dual(RowKind::soc_upper, tau) -
                                        dual(RowKind::soc_lower, tau));
  gamma += std::pow(keep, T - 1 - t) * dual(RowKind::soc_terminal, T - 1);

  const double lambda = d.lmp(s.bus, t) / base;
  const double pch = x[L.pch(n, t)], pdc = x[L.pdc(n, t)];
  const double ch1 = dual(RowKind::ch_lower, t), ch2 = dual(RowKind::ch_upper, t);
  const double dc1 = dual(RowKind::dc_lower, t), dc2 = dual(RowKind::dc_upper, t);
  const double s1 = dual(RowKind::circle_dc, t), s2 = dual(RowKind::circle_ch, t);
  const double relax = dual(RowKind::relax_cut, t);
  const double gch = grad_ch_by_hand(c, n, t), gdc = grad_dc_by_hand(c, n, t);

  const double a_ch = ch2 + relax / s.p_ch_max + 2 * s2 * pch;
  const double a_dc = dc2 + relax / s.p_dc_max + 2 * s1 * pdc;
  Identities out;
  out.charge = std::abs(gch + lambda - ch1 + a_ch + s.eta_ch * gamma * dt);
  out.discharge = std::abs(gdc - lambda - dc1 + a_dc - gamma * dt / s.eta_dc);
  const double denom = 1.0 / s.eta_dc - s.eta_ch;
  out.c2 = c2_by_hand(gch, gdc, s.eta_ch, s.eta_dc);
  out.c1 = out.c2 - (a_ch / s.eta_dc + a_dc * s.eta_ch) / denom;
  out.lmp_rebuilt = out.c1 + (ch1 / s.eta_dc + dc1 * s.eta_ch) / denom;
  out.lmp = std::abs(lambda - out.lmp_rebuilt);
  return out;
}

LemmaTally lemmas_by_hand(const NetworkCase& c, const ConditionReport& rep) {
  constexpr double m = 1e-9;
  LemmaTally tally;
  for (std::size_t i = 0; i < rep.thresholds.rows.size(); ++i) {
    const ThresholdRow& r = rep.thresholds.rows[i];
    const SlotVerdicts& v = rep.slots[i];
    const StorageUnit& s = c.storages[r.storage];
    const double gch = grad_ch_by_hand(c, r.storage, r.period), gdc = grad_dc_by_hand(c, r.storage, r.period);
    const double c2 = c2_by_hand(gch, gdc, s.eta_ch, s.eta_dc);
    if (r.c1 > c2 + m) ++tally.order;
    if (gch + gdc > 0 && !(-gch > c2 - m)) ++tally.premises;
    if (gch + gdc >= 0 && !(-gch >= c2 - m)) ++tally.premises;
    if (gch / s.eta_dc + gdc * s.eta_ch > 0 && !(0.0 > c2 - m)) ++tally.premises;
    auto holds = [&](int k) { return v.c[k] == Verdict::holds; };
    for (int k = 3; k <= 8; ++k)
      if (holds(k) && !holds(2)) ++tally.inclusion;
    if (holds(2) && !holds(1)) ++tally.c2_c1;
    if (holds(6) && !holds(5)) ++tally.prior;
    if (holds(8) && !holds(6)) ++tally.prior;
  }
  return tally;
}

std::optional<double> price_by_resolve(const NetworkCase& c, int bus, int t, double h, const SolverOptions& o) {
  double f[2];
  for (int k = 0; k < 2; ++k) {
    NetworkCase p = c;
    p.time_grid.load_p[bus][t] += k == 0 ? h : -h;
    const SolveResult r = solve(build_relaxed(p, Execution::serial), o);
    if (r.solution.status != SolveStatus::optimal) return std::nullopt;
    f[k] = r.solution.objective;
  }
  return (f[0] - f[1]) / (2 * h);
}

std::optional<Enumeration> enumerate_modes(const NetworkCase& c, const SolverOptions& o) {
  const int slots = static_cast<int>(c.storages.size()) * c.periods();
  Enumeration e;
  bool any = false;
  for (unsigned mask = 0; mask < (1u << slots); ++mask) {
    ModeAssignment m(slots);
    for (int i = 0; i < slots; ++i)
      m[i] = (mask >> i) & 1u ? StorageMode::discharge_only : StorageMode::charge_only;
    const SolveResult r = solve(build_exact(c, m, Execution::serial), o);
    if (r.solution.status != SolveStatus::optimal) {
      ++e.skipped;
      continue;
    }
    ++e.solved;
    if (!any || r.solution.objective < e.best) {
      e.best = r.solution.objective;
      e.modes = m;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return e;
}

}  // namespace sopf::oracle
