#pragma once

// Grid data model for multi-period storage-concerned ACOPF.
//
// Every quantity held by NetworkCase is per-unit on `base_mva`:
//   power          MW / base_mva
//   energy         MWh / base_mva            (p.u.*h)
//   linear cost    $/MWh * base_mva          ($ per p.u. per hour)
//   quadratic cost $/MW^2h * base_mva^2
// Case files carry physical units; load_case / case_from_json convert.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace sopf {

struct Bus {
  int id = 0;
  double voltage_min = 0.95;
  double voltage_max = 1.05;
  double shunt_conductance = 0.0;
  double shunt_susceptance = 0.0;
  bool is_reference = false;
};

struct Branch {
  int from_bus = 0;
  int to_bus = 0;
  double series_conductance = 0.0;
  double series_susceptance = 0.0;
  double charging_susceptance = 0.0;
  std::vector<double> tap_ratio;    // per period
  std::vector<double> phase_shift;  // per period, radians
  double thermal_limit = 0.0;
};

struct Generator {
  int bus = 0;
  double p_min = 0.0, p_max = 0.0;
  double q_min = 0.0, q_max = 0.0;
  double cost_quadratic = 0.0, cost_linear = 0.0, cost_constant = 0.0;
  double ramp_up = 0.0, ramp_down = 0.0;
  double initial_output = 0.0;
};

struct RenewableGen {
  int bus = 0;
  std::vector<double> forecast;
  std::vector<double> p_min;
  std::vector<double> cost_linear;
  double curtail_penalty = 0.0;
  double apparent_capacity = 0.0;
};

struct StorageUnit {
  int bus = 0;
  double eta_ch = 1.0;
  double eta_dc = 1.0;
  double self_discharge = 0.0;
  double soc_initial = 0.0, soc_min = 0.0, soc_max = 0.0;
  double p_ch_max = 0.0, p_dc_max = 0.0;
  double apparent_capacity = 0.0;
  std::vector<double> charge_fee;
  std::vector<double> discharge_fee;
  double loss_penalty = 0.0;
};

struct Svc {
  int bus = 0;
  double q_min = 0.0, q_max = 0.0;
};

struct TimeGrid {
  int period_count = 1;
  double interval = 1.0;  // hours
  std::vector<double> reserve_up;
  std::vector<double> reserve_down;
  // load[bus][t]
  std::vector<std::vector<double>> load_p;
  std::vector<std::vector<double>> load_q;
};

struct NetworkCase {
  double base_mva = 100.0;
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  std::vector<Generator> generators;
  std::vector<RenewableGen> renewables;
  std::vector<StorageUnit> storages;
  std::vector<Svc> svcs;
  TimeGrid time_grid;

  int bus_count() const { return static_cast<int>(buses.size()); }
  int periods() const { return time_grid.period_count; }
  int reference_bus() const;
};

struct Violation {
  std::string entity;  // e.g. "storages[0]"
  std::string field;   // e.g. "soc_initial"
  std::string rule;    // human readable rule that failed

  std::string to_string() const;
};

class CaseParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CaseValidationError : public std::runtime_error {
 public:
  explicit CaseValidationError(Violation v)
      : std::runtime_error(v.to_string()), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

/// Checks every structural and physical invariant of a case. Returns an
/// empty list iff the case is usable by the formulation.
std::vector<Violation> validate(const NetworkCase& c);

/// Parses a case document (physical units) into a per-unit case. Throws
/// CaseParseError on schema problems and CaseValidationError naming the
/// first violated invariant.
NetworkCase case_from_json(const nlohmann::json& doc);
NetworkCase load_case(const std::filesystem::path& path);

/// Inverse of case_from_json: per-unit case to a physical-unit document.
nlohmann::json case_to_json(const NetworkCase& c);
void save_case(const NetworkCase& c, const std::filesystem::path& path);

}  // namespace sopf
