// storage-opf: command-line front end.
// Exit codes: 0 success, 1 parse/validation/usage error, 2 solver failure.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sopf/experiments.hpp"
#include "sopf/report.hpp"

namespace fs = std::filesystem;
using namespace sopf;

namespace {

constexpr int kOk = 0, kUsage = 1, kSolver = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string case_path;
  std::string config_path;
  double tol = 0.0;
  bool serial = false;
};

void apply_config(SolverOptions& o, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config " + path + ": expected an object");
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "kkt_tolerance") o.kkt_tolerance = v.get<double>();
      else if (key == "barrier_initial") o.barrier_initial = v.get<double>();
      else if (key == "barrier_shrink") o.barrier_shrink = v.get<double>();
      else if (key == "fraction_to_boundary") o.fraction_to_boundary = v.get<double>();
      else if (key == "max_iterations") o.max_iterations = v.get<int>();
      else if (key == "regularization_min") o.regularization_min = v.get<double>();
      else if (key == "regularization_max") o.regularization_max = v.get<double>();
      else if (key == "bound_relax") o.bound_relax = v.get<double>();
      else if (key == "slack_floor") o.slack_floor = v.get<double>();
      else if (key == "log_path") o.log_path = v.get<std::string>();
      else throw UsageError("config " + path + ": unknown option '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
}

// defaults < config file < STORAGE_OPF_LOG < flags
SolverOptions solver_options(const Common& c) {
  SolverOptions o;
  if (!c.config_path.empty()) apply_config(o, c.config_path);
  if (const char* log = std::getenv("STORAGE_OPF_LOG"); log && *log) o.log_path = log;
  if (c.tol > 0) o.kkt_tolerance = c.tol;
  try {
    o.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return o;
}

CompareOptions compare_options(const Common& c) {
  CompareOptions o;
  o.mip.nlp = solver_options(c);
  o.mip.serial = c.serial;
  o.mip.kernels = c.serial ? Execution::serial : Execution::parallel;
  return o;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("case", c.case_path, "Case file (JSON)")->required();
  cmd->add_option("--config", c.config_path, "Solver options file (JSON)");
  cmd->add_option("--tol", c.tol, "KKT tolerance")->check(CLI::PositiveNumber);
  cmd->add_flag("--serial", c.serial, "Serial kernels and sequential search");
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw UsageError("cannot write " + p.string());
  return f;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int cmd_solve_relaxed(const Common& c, const std::string& out_dir) {
  const NetworkCase nc = load_case(c.case_path);
  const SolverOptions o = solver_options(c);
  const AcopfProblem p = build_relaxed(nc, c.serial ? Execution::serial : Execution::parallel);
  const SolveResult r = solve(p, o);
  const ConditionReport rep = evaluate_conditions(nc, r);

  fs::create_directories(out_dir);
  nlohmann::json doc = solution_document(nc, r);
  doc["conditions"] = condition_summary(nc, rep);
  open_out(fs::path(out_dir) / "solution.json") << doc.dump(2) << '\n';
  auto duals = open_out(fs::path(out_dir) / "duals.csv");
  write_duals_csv(duals, nc, r.duals);
  auto cond = open_out(fs::path(out_dir) / "conditions.csv");
  write_conditions_csv(cond, rep);

  std::cout << "status " << status_name(r.solution.status) << "\nobjective " << r.solution.objective
            << "\niterations " << r.solution.iterations << '\n';
  if (r.solution.status != SolveStatus::optimal) {
    std::cerr << "storage-opf: relaxed solve ended with status " << status_name(r.solution.status)
              << '\n';
    return kSolver;
  }
  return kOk;
}

int cmd_solve_mip(const Common& c, double gap, int max_nodes) {
  const NetworkCase nc = load_case(c.case_path);
  MipOptions o = compare_options(c).mip;
  o.gap_tolerance = gap;
  o.max_nodes = max_nodes;
  const BnbResult m = solve_mip(nc, o);
  nlohmann::json j;
  j["status"] = mip_status_name(m.status);
  j["nodes"] = m.nodes_explored;
  j["failed_nodes"] = m.failed_nodes;
  j["bound_violations"] = m.bound_violations;
  j["root_objective"] = m.root_objective;
  j["root_scd"] = m.root_scd;
  if (m.incumbent) {
    j["objective"] = m.incumbent_objective;
    j["best_bound"] = m.best_bound;
    j["gap"] = m.gap;
    nlohmann::json modes = nlohmann::json::array();
    for (StorageMode s : m.incumbent_modes)
      modes.push_back(s == StorageMode::free ? "free"
                      : s == StorageMode::charge_only ? "charge_only" : "discharge_only");
    j["modes"] = std::move(modes);
  }
  std::cout << j.dump(2) << '\n';
  if (!m.incumbent || m.status == MipStatus::root_failed || m.status == MipStatus::no_incumbent) {
    std::cerr << "storage-opf: branch-and-bound ended with status " << mip_status_name(m.status) << '\n';
    return kSolver;
  }
  return kOk;
}

int cmd_check_conditions(const Common& c, const std::string& solution_path, bool json) {
  const NetworkCase nc = load_case(c.case_path);
  SolveResult r;
  if (!solution_path.empty()) {
    std::ifstream in(solution_path);
    if (!in) throw UsageError("cannot open " + solution_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw CaseParseError(solution_path + ": " + e.what());
    }
    r = read_solution_document(nc, doc);
  } else {
    r = solve(build_relaxed(nc, c.serial ? Execution::serial : Execution::parallel), solver_options(c));
  }
  const ConditionReport rep = evaluate_conditions(nc, r);
  if (json) {
    std::cout << condition_summary(nc, rep).dump(2) << '\n';
  } else {
    write_conditions_csv(std::cout, rep);
  }
  if (r.solution.status != SolveStatus::optimal) {
    std::cerr << "storage-opf: solution status " << status_name(r.solution.status) << '\n';
    return kSolver;
  }
  return kOk;
}

int cmd_compare(const Common& c, bool json) {
  const NetworkCase nc = load_case(c.case_path);
  const CompareRecord rec = compare(nc, compare_options(c));
  if (json) {
    std::cout << compare_json(rec).dump(2) << '\n';
  } else {
    std::cout << "# relaxed_seconds " << rec.relaxed_seconds << " mip_seconds " << rec.mip_seconds
              << '\n';
    write_compare_csv(std::cout, {rec});
  }
  if (!rec.error.empty()) {
    std::cerr << "storage-opf: " << rec.error << '\n';
    return kSolver;
  }
  return kOk;
}

int cmd_sweep(const Common& c, const std::string& spec_path, const std::string& out_path) {
  const NetworkCase nc = load_case(c.case_path);
  SweepSpec spec;
  try {
    spec = load_sweep_spec(spec_path);
    spec.validate(nc);
  } catch (const SweepSpecError& e) {
    throw UsageError(e.what());
  }
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<SweepRow> rows = run_sweep(nc, spec, compare_options(c), c.serial);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream os;
  os << "# storage-opf sweep " << timestamp() << " wall_seconds " << wall << '\n';
  write_sweep_csv(os, rows);
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    open_out(out_path) << os.str();
  }
  int failed = 0;
  for (const SweepRow& r : rows) failed += !r.record.error.empty();
  if (failed) std::cerr << "storage-opf: " << failed << " of " << rows.size() << " scenarios failed\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Storage-concerned multi-period ACOPF: relaxation exactness toolkit", "storage-opf"};
  app.require_subcommand(1);

  Common common;
  std::string out_dir = ".", solution_path, spec_path, sweep_out;
  double gap = 1e-6;
  int max_nodes = 10000;
  bool json = false;

  auto* relaxed = app.add_subcommand("solve-relaxed", "Solve the relaxed model, write solution, duals and conditions");
  add_common(relaxed, common);
  relaxed->add_option("--out", out_dir, "Output directory");

  auto* mip = app.add_subcommand("solve-mip", "Branch-and-bound over charge/discharge modes");
  add_common(mip, common);
  mip->add_option("--gap", gap, "Relative optimality gap")->check(CLI::NonNegativeNumber);
  mip->add_option("--max-nodes", max_nodes, "Node limit")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check-conditions", "Evaluate C1..C8 at a relaxed solution");
  add_common(check, common);
  check->add_option("--solution", solution_path, "solution.json from solve-relaxed");
  check->add_flag("--json", json, "Print the summary instead of the per-slot CSV");

  auto* cmp = app.add_subcommand("compare", "Relaxed vs branch-and-bound comparison record");
  add_common(cmp, common);
  cmp->add_flag("--json", json, "Print JSON instead of CSV");

  auto* sweep = app.add_subcommand("sweep", "Fee / RG cost sweep, one comparison row per point");
  add_common(sweep, common);
  sweep->add_option("--spec", spec_path, "Sweep specification (JSON)")->required();
  sweep->add_option("--out", sweep_out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*relaxed) return cmd_solve_relaxed(common, out_dir);
    if (*mip) return cmd_solve_mip(common, gap, max_nodes);
    if (*check) return cmd_check_conditions(common, solution_path, json);
    if (*cmp) return cmd_compare(common, json);
    if (*sweep) return cmd_sweep(common, spec_path, sweep_out);
  } catch (const CaseParseError& e) {
    std::cerr << "storage-opf: parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const CaseValidationError& e) {
    std::cerr << "storage-opf: invalid case: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "storage-opf: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "storage-opf: failure: " << e.what() << '\n';
    return kSolver;
  }
  return kUsage;
}
