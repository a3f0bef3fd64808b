#include "sopf/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "sopf/bnb.hpp"

namespace sopf {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "?";
}

namespace {

Verdict of(bool b) { return b ? Verdict::holds : Verdict::fails; }

// a > b and a >= b with the strictness margin.
bool gt(double a, double b, double m) { return a > b + m; }
bool ge(double a, double b, double m) { return a >= b - m; }

double denominator(const StorageUnit& s) {
  const double d = 1.0 / s.eta_dc - s.eta_ch;
  if (!(std::abs(d) >= 1e-12)) throw std::domain_error("1/eta_dc - eta_ch vanishes");
  return d;
}

}  // namespace

double c2_threshold(double grad_ch, double grad_dc, double eta_ch, double eta_dc) {
  const double d = 1.0 / eta_dc - eta_ch;
  if (!(std::abs(d) >= 1e-12)) throw std::domain_error("1/eta_dc - eta_ch vanishes");
  return (grad_ch / eta_dc + grad_dc * eta_ch) / (eta_ch - 1.0 / eta_dc);
}

ThresholdSet compute_thresholds(const NetworkCase& c, const Eigen::VectorXd& x,
                                const DualRecord& duals) {
  const VariableLayout L(c);
  if (x.size() != L.dimension()) throw std::invalid_argument("compute_thresholds: wrong dimension");
  const int T = c.periods();
  const double base = c.base_mva;
  ThresholdSet out;
  out.periods = T;
  out.rows.reserve(c.storages.size() * static_cast<std::size_t>(T));
  for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
    const StorageUnit& s = c.storages[n];
    const double denom = denominator(s);
    const double keep = 1.0 - s.self_discharge;
    const double terminal =
        duals.value_or_zero({RowKind::soc_terminal, n, T - 1, RowSide::none}) / base;
    for (int t = 0; t < T; ++t) {
      ThresholdRow r;
      r.storage = n;
      r.period = t;
      r.bus = s.bus;
      r.lambda_p = duals.lmp(s.bus, t) / base;
      EssMultipliers m = duals.ess(n, t);
      for (double* v : {&m.ch1, &m.ch2, &m.dc1, &m.dc2, &m.s1, &m.s2, &m.soc1, &m.soc2, &m.relax})
        *v /= base;
      r.mult = m;
      r.p_ch = x[L.pch(n, t)];
      r.p_dc = x[L.pdc(n, t)];
      r.grad_ch = charge_gradient(c, n, t) / base;
      r.grad_dc = discharge_gradient(c, n, t) / base;

      double gamma = std::pow(keep, T - 1 - t) * terminal;
      for (int tau = t; tau < T; ++tau) {
        const EssMultipliers later = duals.ess(n, tau);
        gamma += std::pow(keep, tau - t) * (later.soc2 - later.soc1) / base;
      }
      r.gamma = gamma;

      r.c2 = (r.grad_ch / s.eta_dc + r.grad_dc * s.eta_ch) / (s.eta_ch - 1.0 / s.eta_dc);
      r.upper_terms = (m.ch2 + 2.0 * m.s2 * r.p_ch + m.relax / s.p_ch_max) / s.eta_dc +
                      (m.dc2 + 2.0 * m.s1 * r.p_dc + m.relax / s.p_dc_max) * s.eta_ch;
      r.c1 = r.c2 - r.upper_terms / denom;
      r.c3 = -r.grad_ch;
      r.c4 = -r.grad_ch;
      out.rows.push_back(r);
    }
  }
  return out;
}

std::pair<Verdict, Verdict> check_c1_c2(const ThresholdRow& r, const ConditionOptions& o) {
  return {of(gt(r.lambda_p, r.c1, o.strictness_margin)),
          of(gt(r.lambda_p, r.c2, o.strictness_margin))};
}

void check_prior_conditions(const NetworkCase& c, const ThresholdRow& r, bool converged,
                            SlotVerdicts& v, const ConditionOptions& o) {
  const StorageUnit& s = c.storages.at(r.storage);
  const double m = o.strictness_margin;
  const double gch = r.grad_ch, gdc = r.grad_dc, lp = r.lambda_p;

  v.c3_premise = gt(gch + gdc, 0.0, m);
  v.c4_premise = ge(gch + gdc, 0.0, m);
  v.c5_premise = gt(gch / s.eta_dc + gdc * s.eta_ch, 0.0, m);

  v.c[3] = of(v.c3_premise && ge(lp, r.c3, m));
  v.c[4] = of(v.c4_premise && gt(lp, r.c4, m));
  v.c[5] = of(v.c5_premise && ge(lp, 0.0, m));
  v.c[6] = of(ge(gch, 0.0, m) && ge(gdc, 0.0, m) && gt(gch + gdc, 0.0, m) && ge(lp, 0.0, m));
  if (!converged) {
    v.c[7] = Verdict::inapplicable;
  } else {
    v.c[7] = of(ge(lp, 0.0, m) && std::abs(r.mult.s1) <= o.active_tolerance &&
                std::abs(r.mult.s2) <= o.active_tolerance);
  }
  v.c[8] = of(std::abs(gch) <= m && gt(gdc, 0.0, m) && gt(lp, 0.0, m));
}

std::vector<IdentityResidual> verify_stationarity_identities(const NetworkCase& c,
                                                             const Eigen::VectorXd& x,
                                                             const DualRecord& duals) {
  const ThresholdSet th = compute_thresholds(c, x, duals);
  const double dt = c.time_grid.interval;
  std::vector<IdentityResidual> out;
  out.reserve(th.rows.size());
  for (const ThresholdRow& r : th.rows) {
    const StorageUnit& s = c.storages[r.storage];
    const EssMultipliers& m = r.mult;
    IdentityResidual id;
    id.charge = std::abs(r.grad_ch + r.lambda_p - m.ch1 + m.ch2 + m.relax / s.p_ch_max +
                         2.0 * m.s2 * r.p_ch + s.eta_ch * r.gamma * dt);
    id.discharge = std::abs(r.grad_dc - r.lambda_p - m.dc1 + m.dc2 + m.relax / s.p_dc_max +
                            2.0 * m.s1 * r.p_dc - r.gamma * dt / s.eta_dc);
    const double rebuilt = r.c1 + (m.ch1 / s.eta_dc + m.dc1 * s.eta_ch) / denominator(s);
    id.lmp = std::abs(r.lambda_p - rebuilt);
    out.push_back(id);
  }
  return out;
}

LemmaChecks verify_inclusions(const NetworkCase& c, const ThresholdSet& th,
                              const std::vector<SlotVerdicts>& verdicts,
                              const ConditionOptions& o) {
  (void)c;
  if (verdicts.size() != th.rows.size())
    throw std::invalid_argument("verify_inclusions: verdicts do not match thresholds");
  const double m = o.strictness_margin;
  LemmaChecks out;
  for (std::size_t i = 0; i < th.rows.size(); ++i) {
    const ThresholdRow& r = th.rows[i];
    const SlotVerdicts& v = verdicts[i];
    if (r.c1 > r.c2 + m) ++out.threshold_order_violations;
    if (v.c3_premise && !(r.c3 > r.c2 - m)) ++out.c3_ordering_violations;
    if (v.c4_premise && !(r.c4 >= r.c2 - m)) ++out.c4_ordering_violations;
    if (v.c5_premise && !(0.0 > r.c2 - m)) ++out.c5_ordering_violations;
    const bool c2 = v.c[2] == Verdict::holds;
    for (int k = 3; k <= 8; ++k) {
      if (v.c[k] == Verdict::holds && !c2) ++out.inclusion_violations;
    }
    if (c2 && v.c[1] != Verdict::holds) ++out.c2_c1_violations;
    if (v.c[6] == Verdict::holds && v.c[5] != Verdict::holds) ++out.c6_c5_violations;
    if (v.c[8] == Verdict::holds && v.c[6] != Verdict::holds) ++out.c8_c6_violations;
  }
  return out;
}

ConditionReport evaluate_conditions(const NetworkCase& c, const SolveResult& relaxed,
                                    const ConditionOptions& o) {
  ConditionReport rep;
  rep.converged = relaxed.solution.status == SolveStatus::optimal;
  const Eigen::VectorXd& x = relaxed.solution.x;
  rep.thresholds = compute_thresholds(c, x, relaxed.duals);
  const ScdResidual scd = scd_residual(x, c);
  rep.slots.resize(rep.thresholds.rows.size());
  for (std::size_t i = 0; i < rep.slots.size(); ++i) {
    const ThresholdRow& r = rep.thresholds.rows[i];
    SlotVerdicts& v = rep.slots[i];
    std::tie(v.c[1], v.c[2]) = check_c1_c2(r, o);
    check_prior_conditions(c, r, rep.converged, v, o);
    v.scd = scd.products[i];
    rep.max_scd = std::max(rep.max_scd, v.scd);
  }
  for (int k = 1; k <= 8; ++k) {
    bool any_applicable = false, all_hold = true;
    for (const SlotVerdicts& v : rep.slots) {
      if (v.c[k] == Verdict::inapplicable) continue;
      any_applicable = true;
      all_hold = all_hold && v.c[k] == Verdict::holds;
    }
    rep.all_slots[k] = !any_applicable ? Verdict::inapplicable : of(all_hold);
  }
  rep.lemmas = verify_inclusions(c, rep.thresholds, rep.slots, o);
  rep.identities = verify_stationarity_identities(c, x, relaxed.duals);
  for (const IdentityResidual& id : rep.identities) {
    rep.max_identity_residual =
        std::max({rep.max_identity_residual, id.charge, id.discharge, id.lmp});
  }
  return rep;
}

}  // namespace sopf
