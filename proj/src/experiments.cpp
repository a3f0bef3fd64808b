#include "sopf/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace sopf {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

// Commas and newlines would break the CSV row.
std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

const char* kCompareHeader =
    "relaxed_status,relaxed_objective,mip_status,mip_objective,rel_diff,mip_gap,relaxed_scd,"
    "C1,C2,C3,C4,C5,C6,C7,C8,nodes,exact,min_lmp,lemma_violations,max_identity_residual,error";

void write_record(std::ostream& os, const CompareRecord& r) {
  os << status_name(r.relaxed_status) << ',' << num(r.relaxed_objective) << ','
     << mip_status_name(r.mip_status) << ',' << num(r.mip_objective) << ','
     << num(r.relative_difference) << ',' << num(r.mip_gap) << ',' << num(r.relaxed_scd);
  for (int k = 1; k <= 8; ++k) os << ',' << verdict_name(r.all_slots[k]);
  os << ',' << r.nodes << ',' << (r.exact ? "true" : "false") << ',' << num(r.min_lmp) << ','
     << r.lemma_violations << ',' << num(r.max_identity_residual) << ',' << sanitize(r.error);
}

std::vector<double> axis(const nlohmann::json& doc, const char* key) {
  const auto& a = doc.at(key);
  if (!a.is_array()) throw SweepSpecError(std::string("sweep: '") + key + "' must be an array");
  if (a.empty()) throw SweepSpecError(std::string("sweep: axis '") + key + "' is empty");
  std::vector<double> v;
  for (const auto& e : a) {
    if (!e.is_number()) throw SweepSpecError(std::string("sweep: '") + key + "' holds a non-number");
    v.push_back(e.get<double>());
  }
  return v;
}

std::vector<int> ids(const nlohmann::json& doc, const char* key) {
  std::vector<int> v;
  if (!doc.contains(key)) return v;
  const auto& a = doc[key];
  if (!a.is_array()) throw SweepSpecError(std::string("sweep: '") + key + "' must be an array");
  for (const auto& e : a) {
    if (!e.is_number_integer()) throw SweepSpecError(std::string("sweep: '") + key + "' holds a non-integer");
    v.push_back(e.get<int>());
  }
  return v;
}

template <class F>
void for_selected(const std::vector<int>& sel, std::size_t count, F f) {
  if (sel.empty()) {
    for (std::size_t i = 0; i < count; ++i) f(static_cast<int>(i));
  } else {
    for (int i : sel) f(i);
  }
}

}  // namespace

CompareRecord compare(const NetworkCase& c, const CompareOptions& o) {
  CompareRecord rec;
  auto t0 = std::chrono::steady_clock::now();
  try {
    AcopfProblem relaxed = build_relaxed(c, o.mip.kernels);
    SolveResult r = solve(relaxed, o.mip.nlp);
    rec.relaxed_seconds = seconds_since(t0);
    rec.relaxed_status = r.solution.status;
    rec.relaxed_objective = r.solution.objective;
    rec.relaxed_scd = scd_residual(r.solution.x, c).max;
    if (r.solution.status != SolveStatus::optimal) {
      rec.error = std::string("relaxed solve: ") + std::string(status_name(r.solution.status));
      rec.relaxed = std::move(r);
      return rec;
    }
    double min_lmp = std::numeric_limits<double>::infinity();
    for (int j = 0; j < c.bus_count(); ++j)
      for (int t = 0; t < c.periods(); ++t) min_lmp = std::min(min_lmp, r.duals.lmp(j, t) / c.base_mva);
    rec.min_lmp = min_lmp;
    ConditionReport rep = evaluate_conditions(c, r, o.conditions);
    rec.all_slots = rep.all_slots;
    rec.lemma_violations = rep.lemmas.total();
    rec.max_identity_residual = rep.max_identity_residual;
    rec.relaxed = std::move(r);
    rec.report = std::move(rep);
  } catch (const std::exception& e) {
    rec.relaxed_seconds = seconds_since(t0);
    rec.error = std::string("relaxed solve: ") + e.what();
    return rec;
  }

  t0 = std::chrono::steady_clock::now();
  try {
    BnbResult m = solve_mip(c, o.mip);
    rec.mip_seconds = seconds_since(t0);
    rec.mip_status = m.status;
    rec.nodes = m.nodes_explored;
    rec.mip_gap = m.gap;
    if (!m.incumbent || m.status == MipStatus::root_failed) {
      rec.error = std::string("mip: ") + std::string(mip_status_name(m.status));
      return rec;
    }
    rec.mip_objective = m.incumbent_objective;
    rec.relative_difference = std::abs(rec.relaxed_objective - rec.mip_objective) /
                              std::max(1.0, std::abs(rec.mip_objective));
    rec.exact = rec.relative_difference <= o.exact_objective_tolerance &&
                rec.relaxed_scd <= o.exact_scd_tolerance;
  } catch (const std::exception& e) {
    rec.mip_seconds = seconds_since(t0);
    rec.error = std::string("mip: ") + e.what();
  }
  return rec;
}

std::size_t SweepSpec::point_count() const {
  std::size_t n = 1;
  for (const auto* a : {&charge_fee, &discharge_fee, &rg_cost})
    if (*a) n *= (*a)->size();
  return n;
}

void SweepSpec::validate(const NetworkCase& c) const {
  if (!charge_fee && !discharge_fee && !rg_cost) throw SweepSpecError("sweep: no axis given");
  for (const auto* a : {&charge_fee, &discharge_fee, &rg_cost})
    if (*a && (*a)->empty()) throw SweepSpecError("sweep: empty axis");
  if (max_points < 1) throw SweepSpecError("sweep: max_points must be positive");
  if (point_count() > static_cast<std::size_t>(max_points))
    throw SweepSpecError("sweep: " + std::to_string(point_count()) + " points exceed the cap of " +
                         std::to_string(max_points) + " (raise max_points to override)");
  for (int n : storages)
    if (n < 0 || n >= static_cast<int>(c.storages.size()))
      throw SweepSpecError("sweep: storage id " + std::to_string(n) + " out of range");
  for (int r : renewables)
    if (r < 0 || r >= static_cast<int>(c.renewables.size()))
      throw SweepSpecError("sweep: renewable id " + std::to_string(r) + " out of range");
}

SweepSpec parse_sweep_spec(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SweepSpecError("sweep: specification must be an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "charge_fee" && key != "discharge_fee" && key != "rg_cost" && key != "storages" &&
        key != "renewables" && key != "max_points")
      throw SweepSpecError("sweep: unknown key '" + key + "'");
  }
  SweepSpec s;
  if (doc.contains("charge_fee")) s.charge_fee = axis(doc, "charge_fee");
  if (doc.contains("discharge_fee")) s.discharge_fee = axis(doc, "discharge_fee");
  if (doc.contains("rg_cost")) s.rg_cost = axis(doc, "rg_cost");
  s.storages = ids(doc, "storages");
  s.renewables = ids(doc, "renewables");
  if (doc.contains("max_points")) {
    if (!doc["max_points"].is_number_integer()) throw SweepSpecError("sweep: max_points must be an integer");
    s.max_points = doc["max_points"].get<int>();
  }
  if (!s.charge_fee && !s.discharge_fee && !s.rg_cost) throw SweepSpecError("sweep: no axis given");
  return s;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SweepSpecError("sweep: cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw SweepSpecError("sweep: " + path + ": " + e.what());
  }
  return parse_sweep_spec(doc);
}

std::vector<SweepPoint> expand(const SweepSpec& spec) {
  auto values = [](const std::optional<std::vector<double>>& a) {
    std::vector<std::optional<double>> v;
    if (!a) {
      v.emplace_back();
    } else {
      for (double x : *a) v.emplace_back(x);
    }
    return v;
  };
  std::vector<SweepPoint> out;
  for (const auto& ch : values(spec.charge_fee))
    for (const auto& dc : values(spec.discharge_fee))
      for (const auto& rg : values(spec.rg_cost)) out.push_back({ch, dc, rg});
  return out;
}

NetworkCase apply_point(const NetworkCase& c, const SweepSpec& spec, const SweepPoint& p) {
  NetworkCase out = c;
  const double base = c.base_mva;
  const auto T = static_cast<std::size_t>(c.periods());
  for_selected(spec.storages, out.storages.size(), [&](int n) {
    StorageUnit& s = out.storages.at(n);
    if (p.charge_fee) s.charge_fee.assign(T, *p.charge_fee * base);
    if (p.discharge_fee) s.discharge_fee.assign(T, *p.discharge_fee * base);
  });
  if (p.rg_cost) {
    for_selected(spec.renewables, out.renewables.size(),
                 [&](int r) { out.renewables.at(r).cost_linear.assign(T, *p.rg_cost * base); });
  }
  return out;
}

std::vector<SweepRow> run_sweep(const NetworkCase& c, const SweepSpec& spec,
                                const CompareOptions& o, bool serial) {
  spec.validate(c);
  const std::vector<SweepPoint> points = expand(spec);
  std::vector<SweepRow> rows(points.size());
  const int count = static_cast<int>(points.size());
#pragma omp parallel for schedule(dynamic) if (!serial && count > 1)
  for (int i = 0; i < count; ++i) {
    rows[i].point = points[i];
    try {
      rows[i].record = compare(apply_point(c, spec, points[i]), o);
    } catch (const std::exception& e) {
      rows[i].record.error = e.what();
    }
    // Drop the heavy payload; rows are serialized only.
    rows[i].record.relaxed.reset();
  }
  return rows;
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRecord>& records) {
  os << kCompareHeader << '\n';
  for (const CompareRecord& r : records) {
    write_record(os, r);
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "charge_fee,discharge_fee,rg_cost," << kCompareHeader << '\n';
  for (const SweepRow& row : rows) {
    os << opt_num(row.point.charge_fee) << ',' << opt_num(row.point.discharge_fee) << ','
       << opt_num(row.point.rg_cost) << ',';
    write_record(os, row.record);
    os << '\n';
  }
}

nlohmann::json compare_json(const CompareRecord& r) {
  nlohmann::json j;
  j["relaxed_status"] = status_name(r.relaxed_status);
  j["relaxed_objective"] = r.relaxed_objective;
  j["mip_status"] = mip_status_name(r.mip_status);
  j["mip_objective"] = r.mip_objective;
  j["relative_difference"] = r.relative_difference;
  j["mip_gap"] = r.mip_gap;
  j["relaxed_scd"] = r.relaxed_scd;
  nlohmann::json v = nlohmann::json::object();
  for (int k = 1; k <= 8; ++k) v["C" + std::to_string(k)] = verdict_name(r.all_slots[k]);
  v["ref1_condition"] = "not implemented";
  j["all_slots"] = std::move(v);
  j["nodes"] = r.nodes;
  j["exact"] = r.exact;
  j["min_lmp"] = r.min_lmp;
  j["lemma_violations"] = r.lemma_violations;
  j["max_identity_residual"] = r.max_identity_residual;
  j["relaxed_seconds"] = r.relaxed_seconds;
  j["mip_seconds"] = r.mip_seconds;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

}  // namespace sopf
