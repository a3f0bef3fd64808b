#pragma once

// Relaxed-vs-MIP comparisons and parameter sweeps over fees and RG cost.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sopf/bnb.hpp"
#include "sopf/conditions.hpp"

namespace sopf {

struct CompareOptions {
  MipOptions mip;  // mip.nlp is also used for the relaxed solve
  ConditionOptions conditions;
  double exact_objective_tolerance = 1e-5;  // relative
  double exact_scd_tolerance = 1e-8;
};

struct CompareRecord {
  SolveStatus relaxed_status = SolveStatus::numerical_failure;
  double relaxed_objective = 0.0;
  MipStatus mip_status = MipStatus::no_incumbent;
  double mip_objective = 0.0;
  double relative_difference = 0.0;  // |relaxed - mip| / max(1, |mip|)
  double mip_gap = 0.0;
  double relaxed_scd = 0.0;
  VerdictRow all_slots = kNoVerdicts;
  int nodes = 0;
  double relaxed_seconds = 0.0, mip_seconds = 0.0;
  bool exact = false;
  double min_lmp = 0.0;  // over every (bus, t), $/MWh
  int lemma_violations = 0;
  double max_identity_residual = 0.0;
  std::string error;  // empty unless a stage failed

  /// The relaxed solve and its condition report, kept for callers that
  /// inspect slots. Not serialized.
  std::optional<SolveResult> relaxed;
  std::optional<ConditionReport> report;
};

CompareRecord compare(const NetworkCase& c, const CompareOptions& o = {});

class SweepSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepSpec {
  // $/MWh. An absent axis leaves the case untouched.
  std::optional<std::vector<double>> charge_fee, discharge_fee, rg_cost;
  std::vector<int> storages;    // empty: all
  std::vector<int> renewables;  // empty: all
  int max_points = 64;

  std::size_t point_count() const;
  void validate(const NetworkCase& c) const;
};

/// {"charge_fee": [...], "discharge_fee": [...], "rg_cost": [...],
///  "storages": [ids], "renewables": [ids], "max_points": N}
SweepSpec parse_sweep_spec(const nlohmann::json& doc);
SweepSpec load_sweep_spec(const std::string& path);

struct SweepPoint {
  std::optional<double> charge_fee, discharge_fee, rg_cost;
};

/// Cartesian product in charge_fee-major order.
std::vector<SweepPoint> expand(const SweepSpec& spec);

/// Copy of c with the point's values written uniformly across periods.
NetworkCase apply_point(const NetworkCase& c, const SweepSpec& spec, const SweepPoint& p);

struct SweepRow {
  SweepPoint point;
  CompareRecord record;
};

/// Scenarios run concurrently unless `serial`. A failing scenario keeps
/// its row with `record.error` set.
std::vector<SweepRow> run_sweep(const NetworkCase& c, const SweepSpec& spec,
                                const CompareOptions& o, bool serial);

/// Column header and rows shared by compare and sweep output. Wall times
/// are not part of the body.
void write_compare_csv(std::ostream& os, const std::vector<CompareRecord>& records);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

nlohmann::json compare_json(const CompareRecord& r);

}  // namespace sopf
