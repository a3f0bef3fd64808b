#pragma once

// Exactness certificates for the complementarity relaxation.
//
// Everything here is reported in $/MWh: per-unit multipliers and objective
// partials are divided by base_mva, powers stay per-unit. With that choice
// every threshold below is homogeneous in price.
//
//   c2 = (g_ch/eta_dc + g_dc*eta_ch) / (eta_ch - 1/eta_dc)
//   c1 = c2 - B / (1/eta_dc - eta_ch)
//   B  = [l_ch2 + 2 l_S2 p_ch + l_relax/Pch_max] / eta_dc
//      + [l_dc2 + 2 l_S1 p_dc + l_relax/Pdc_max] * eta_ch
//   c3 = c4 = -g_ch
//
// g_ch, g_dc are the explicit objective partials of the storage powers.

#include <array>
#include <string>
#include <vector>

#include "sopf/formulation.hpp"
#include "sopf/ipm.hpp"

namespace sopf {

enum class Verdict { holds, fails, inapplicable };
std::string_view verdict_name(Verdict v);

// Indexed 1..8 by condition number; slot 0 is unused.
using VerdictRow = std::array<Verdict, 9>;
inline constexpr VerdictRow kNoVerdicts = [] {
  VerdictRow r{};
  r.fill(Verdict::inapplicable);
  return r;
}();

struct ConditionOptions {
  double strictness_margin = 1e-9;
  double active_tolerance = 1e-7;    // "multiplier is zero" in C7
  double identity_tolerance = 1e-6;
};

struct ThresholdRow {
  int storage = 0, period = 0, bus = 0;
  double lambda_p = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double grad_ch = 0.0, grad_dc = 0.0;
  double gamma = 0.0;        // includes the terminal-SOC multiplier, see compute_thresholds
  double p_ch = 0.0, p_dc = 0.0;
  EssMultipliers mult;       // $/MWh-scaled
  double upper_terms = 0.0;  // B above; c2 - c1 = B / (1/eta_dc - eta_ch)
};

struct ThresholdSet {
  int periods = 0;
  std::vector<ThresholdRow> rows;  // [n * T + t]
  const ThresholdRow& at(int n, int t) const { return rows.at(n * periods + t); }
};

/// Gamma_{n,t} is the discounted sum of future SOC-bound multipliers plus
/// the terminal-SOC multiplier discounted from the last period, i.e. the
/// full coefficient of eta_ch*dt in the charge stationarity row.
ThresholdSet compute_thresholds(const NetworkCase& c, const Eigen::VectorXd& x,
                                const DualRecord& duals);

/// c2 for scalar fees, the same expression as in compute_thresholds.
double c2_threshold(double grad_ch, double grad_dc, double eta_ch, double eta_dc);

struct SlotVerdicts {
  VerdictRow c = kNoVerdicts;  // index 1..8
  double scd = 0.0;
  bool c3_premise = false, c4_premise = false, c5_premise = false;
};

struct LemmaChecks {
  int threshold_order_violations = 0;  // c1 > c2 + margin
  int c3_ordering_violations = 0;      // premise and not c3 > c2
  int c4_ordering_violations = 0;      // premise and not c4 >= c2
  int c5_ordering_violations = 0;      // premise and not 0 > c2
  int inclusion_violations = 0;        // C_k holds, C2 fails (k = 3..8)
  int c2_c1_violations = 0;            // C2 holds, C1 fails
  int c6_c5_violations = 0;
  int c8_c6_violations = 0;
  int total() const {
    return threshold_order_violations + c3_ordering_violations + c4_ordering_violations +
           c5_ordering_violations + inclusion_violations + c2_c1_violations +
           c6_c5_violations + c8_c6_violations;
  }
};

struct IdentityResidual {
  double charge = 0.0;     // charge stationarity row
  double discharge = 0.0;  // discharge stationarity row
  double lmp = 0.0;        // |lambda_p - reconstruction|
};

struct ConditionReport {
  ThresholdSet thresholds;
  std::vector<SlotVerdicts> slots;  // [n * T + t]
  VerdictRow all_slots = kNoVerdicts;  // per condition, over every slot
  LemmaChecks lemmas;
  std::vector<IdentityResidual> identities;
  double max_identity_residual = 0.0;
  double max_scd = 0.0;
  bool converged = false;
};

/// C1 and C2 verdicts of one slot.
std::pair<Verdict, Verdict> check_c1_c2(const ThresholdRow& r, const ConditionOptions& o = {});

/// C3..C8 verdicts, written into v.c[3..8]. C7 is inapplicable unless the
/// solve converged.
void check_prior_conditions(const NetworkCase& c, const ThresholdRow& r, bool converged,
                            SlotVerdicts& v, const ConditionOptions& o = {});

/// Residuals of the two storage stationarity rows and of the LMP
/// reconstruction, per (n, t) in $/MWh. Empty for a storage-free case.
std::vector<IdentityResidual> verify_stationarity_identities(const NetworkCase& c,
                                                             const Eigen::VectorXd& x,
                                                             const DualRecord& duals);

LemmaChecks verify_inclusions(const NetworkCase& c, const ThresholdSet& th,
                              const std::vector<SlotVerdicts>& verdicts,
                              const ConditionOptions& o = {});

ConditionReport evaluate_conditions(const NetworkCase& c, const SolveResult& relaxed,
                                    const ConditionOptions& o = {});

}  // namespace sopf
