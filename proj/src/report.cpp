#include "sopf/report.hpp"

#include <cstdio>
#include <ostream>

#include "sopf/bnb.hpp"

namespace sopf {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_json_array(const nlohmann::json& a, Eigen::Index expected, const char* what) {
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != expected)
    throw CaseParseError(std::string("solution document: '") + what + "' has the wrong size");
  Eigen::VectorXd v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) v[i] = a[i].get<double>();
  return v;
}

SolveStatus status_from_name(const std::string& s) {
  for (SolveStatus st : {SolveStatus::optimal, SolveStatus::max_iter,
                         SolveStatus::infeasible_detected, SolveStatus::numerical_failure})
    if (status_name(st) == s) return st;
  throw CaseParseError("solution document: unknown status '" + s + "'");
}

}  // namespace

nlohmann::json solution_document(const NetworkCase& c, const SolveResult& r) {
  const VariableLayout L(c);
  nlohmann::json doc;
  const SolutionPoint& s = r.solution;
  doc["status"] = status_name(s.status);
  doc["objective"] = s.objective;
  doc["iterations"] = s.iterations;
  doc["primal_infeasibility"] = s.primal_infeasibility;
  doc["kkt_error"] = s.kkt_error;
  doc["restorations"] = r.restorations;
  if (s.x.size() == L.dimension()) {
    nlohmann::json named = nlohmann::json::object();
    for (int i = 0; i < L.dimension(); ++i) named[L.name(i)] = s.x[i];
    doc["variables"] = std::move(named);
  }
  doc["x"] = to_vector(s.x);
  doc["duals"] = {{"equality", to_vector(r.duals.equality())},
                  {"inequality", to_vector(r.duals.inequality())}};
  return doc;
}

SolveResult read_solution_document(const NetworkCase& c, const nlohmann::json& doc) {
  if (!doc.is_object()) throw CaseParseError("solution document: not an object");
  for (const char* key : {"status", "objective", "x", "duals"})
    if (!doc.contains(key)) throw CaseParseError(std::string("solution document: missing '") + key + "'");
  const AcopfProblem p = build_relaxed(c, Execution::serial);
  SolveResult r;
  r.solution.status = status_from_name(doc["status"].get<std::string>());
  r.solution.objective = doc["objective"].get<double>();
  r.solution.iterations = doc.value("iterations", 0);
  r.solution.primal_infeasibility = doc.value("primal_infeasibility", 0.0);
  r.solution.kkt_error = doc.value("kkt_error", 0.0);
  r.solution.x = from_json_array(doc["x"], p.dimension(), "x");
  const auto& d = doc["duals"];
  if (!d.is_object() || !d.contains("equality") || !d.contains("inequality"))
    throw CaseParseError("solution document: malformed 'duals'");
  r.duals = DualRecord(p.equality_handles(), from_json_array(d["equality"], p.equality_count(), "duals.equality"),
                       p.inequality_handles(),
                       from_json_array(d["inequality"], p.inequality_count(), "duals.inequality"));
  return r;
}

void write_duals_csv(std::ostream& os, const NetworkCase& c, const DualRecord& d) {
  os << "kind,side,entity,period,value,per_mwh\n";
  auto rows = [&](const std::vector<ConstraintHandle>& hs, const Eigen::VectorXd& v) {
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const ConstraintHandle& h = hs[i];
      os << kind_name(h.kind) << ',' << side_name(h.side) << ',' << h.entity << ',' << h.period
         << ',' << num(v[i]) << ',' << num(v[i] / c.base_mva) << '\n';
    }
  };
  rows(d.equality_handles(), d.equality());
  rows(d.inequality_handles(), d.inequality());
}

void write_conditions_csv(std::ostream& os, const ConditionReport& rep) {
  os << "n,t,lmp,c1,c2,c3,grad_ch,grad_dc,scd,C1,C2,C3,C4,C5,C6,C7,C8\n";
  for (std::size_t i = 0; i < rep.slots.size(); ++i) {
    const ThresholdRow& r = rep.thresholds.rows[i];
    const SlotVerdicts& v = rep.slots[i];
    os << r.storage << ',' << r.period << ',' << num(r.lambda_p) << ',' << num(r.c1) << ','
       << num(r.c2) << ',' << num(r.c3) << ',' << num(r.grad_ch) << ',' << num(r.grad_dc) << ','
       << num(v.scd);
    for (int k = 1; k <= 8; ++k) os << ',' << verdict_name(v.c[k]);
    os << '\n';
  }
}

nlohmann::json condition_summary(const NetworkCase& c, const ConditionReport& rep) {
  nlohmann::json j;
  j["converged"] = rep.converged;
  nlohmann::json all = nlohmann::json::object();
  for (int k = 1; k <= 8; ++k) all["C" + std::to_string(k)] = verdict_name(rep.all_slots[k]);
  all["ref1_condition"] = "not implemented";
  j["all_slots"] = std::move(all);
  j["max_scd"] = rep.max_scd;
  j["max_identity_residual"] = rep.max_identity_residual;
  j["lemma_violations"] = {
      {"threshold_order", rep.lemmas.threshold_order_violations},
      {"c3_ordering", rep.lemmas.c3_ordering_violations},
      {"c4_ordering", rep.lemmas.c4_ordering_violations},
      {"c5_ordering", rep.lemmas.c5_ordering_violations},
      {"inclusion", rep.lemmas.inclusion_violations},
      {"c2_implies_c1", rep.lemmas.c2_c1_violations},
      {"c6_implies_c5", rep.lemmas.c6_c5_violations},
      {"c8_implies_c6", rep.lemmas.c8_c6_violations},
      {"total", rep.lemmas.total()}};
  double min_lmp = 0.0;
  bool first = true;
  for (const ThresholdRow& r : rep.thresholds.rows) {
    if (first || r.lambda_p < min_lmp) min_lmp = r.lambda_p;
    first = false;
  }
  if (!first) j["min_storage_lmp"] = min_lmp;
  // c2 depends only on fees, loss penalty and efficiencies: usable against
  // an external LMP forecast before any solve.
  nlohmann::json c2 = nlohmann::json::array();
  for (int n = 0; n < static_cast<int>(c.storages.size()); ++n) {
    const StorageUnit& s = c.storages[n];
    nlohmann::json per_t = nlohmann::json::array();
    for (int t = 0; t < c.periods(); ++t)
      per_t.push_back(c2_threshold(charge_gradient(c, n, t) / c.base_mva,
                                   discharge_gradient(c, n, t) / c.base_mva, s.eta_ch, s.eta_dc));
    c2.push_back({{"storage", n}, {"c2", std::move(per_t)}});
  }
  j["c2_threshold"] = std::move(c2);
  return j;
}

}  // namespace sopf
