#include "support.hpp"

namespace sopf::test {

std::string case_path(const std::string& name) { return std::string(SOPF_CASE_DIR) + "/" + name + ".json"; }

NetworkCase bundled(const std::string& name) { return load_case(case_path(name)); }

const std::vector<std::string>& bundled_names() {
  static const std::vector<std::string> names{"three_bus", "nine_bus", "negative_lmp", "scd_micro",
                                               "mip_oracle"};
  return names;
}

nlohmann::json two_bus_doc(double load_mw, double r, double x) {
  const double z2 = r * r + x * x;
  return {
      {"base_mva", 100},
      {"time", {{"T", 1}, {"dt_hours", 1.0}}},
      {"buses",
       {{{"id", 0}, {"voltage_min", 0.9}, {"voltage_max", 1.1}, {"is_reference", true}},
        {{"id", 1}, {"voltage_min", 0.9}, {"voltage_max", 1.1}}}},
      {"branches",
       {{{"from_bus", 0},
         {"to_bus", 1},
         {"series_conductance", r / z2},
         {"series_susceptance", -x / z2},
         {"thermal_limit", 500}}}},
      {"generators",
       {{{"bus", 0},
         {"p_min", 0},
         {"p_max", 300},
         {"q_min", -200},
         {"q_max", 200},
         {"cost_quadratic", 0.04},
         {"cost_linear", 10},
         {"ramp_up", 300},
         {"ramp_down", 300},
         {"initial_output", 50}}}},
      {"loads", {{{"bus", 1}, {"p_mw", {load_mw}}, {"q_mvar", {0.0}}}}},
  };
}

NetworkCase without_storage(const NetworkCase& c) {
  NetworkCase out = c;
  out.storages.clear();
  return out;
}

namespace {

ConstraintHandle generic(int i) { return {RowKind::generic, i, 0, RowSide::none}; }

}  // namespace

SquareToy::SquareToy() : in_{generic(0)} {}

double SquareToy::objective(const Eigen::VectorXd& x) const { return x[0] * x[0]; }

Eigen::VectorXd SquareToy::gradient(const Eigen::VectorXd& x) const {
  return Eigen::VectorXd::Constant(1, 2.0 * x[0]);
}

void SquareToy::constraints(const Eigen::VectorXd& x, Eigen::VectorXd& ce, Eigen::VectorXd& ci) const {
  ce.resize(0);
  ci = Eigen::VectorXd::Constant(1, 1.0 - x[0]);
}

void SquareToy::jacobians(const Eigen::VectorXd&, SparseMatrix& je, SparseMatrix& ji) const {
  je.resize(0, 1);
  ji.resize(1, 1);
  ji.setZero();
  ji.insert(0, 0) = -1.0;
  ji.makeCompressed();
}

Eigen::MatrixXd SquareToy::lagrangian_hessian(const Eigen::VectorXd&, double obj_factor,
                                              const Eigen::VectorXd&, const Eigen::VectorXd&) const {
  return Eigen::MatrixXd::Constant(1, 1, 2.0 * obj_factor);
}

LinearToy::LinearToy() : in_{generic(0), generic(1)} {}

Eigen::VectorXd LinearToy::gradient(const Eigen::VectorXd&) const { return Eigen::VectorXd::Constant(1, -1.0); }

void LinearToy::constraints(const Eigen::VectorXd& x, Eigen::VectorXd& ce, Eigen::VectorXd& ci) const {
  ce.resize(0);
  ci.resize(2);
  ci << x[0] - 3.0, -x[0];
}

void LinearToy::jacobians(const Eigen::VectorXd&, SparseMatrix& je, SparseMatrix& ji) const {
  je.resize(0, 1);
  ji.resize(2, 1);
  ji.setZero();
  ji.insert(0, 0) = 1.0;
  ji.insert(1, 0) = -1.0;
  ji.makeCompressed();
}

Eigen::MatrixXd LinearToy::lagrangian_hessian(const Eigen::VectorXd&, double, const Eigen::VectorXd&,
                                              const Eigen::VectorXd&) const {
  return Eigen::MatrixXd::Zero(1, 1);
}

Eigen::VectorXd random_interior_point(const AcopfProblem& p, std::mt19937_64& rng) {
  const NetworkCase& c = p.network();
  const VariableLayout& L = p.layout();
  std::uniform_real_distribution<double> u(-1.0, 1.0), unit(0.0, 1.0);
  Eigen::VectorXd x = p.initial_point();
  for (int i = 0; i < L.dimension(); ++i) {
    const VarRef v = L.lookup(i);
    if (v.kind == VarKind::voltage) {
      const Bus& b = c.buses[v.entity];
      x[i] = b.voltage_min + unit(rng) * (b.voltage_max - b.voltage_min);
    } else if (v.kind == VarKind::angle) {
      x[i] = 0.3 * u(rng);
    } else {
      x[i] += 0.5 * u(rng) * std::max(0.05, std::abs(x[i]));
    }
  }
  return x;
}

}  // namespace sopf::test
