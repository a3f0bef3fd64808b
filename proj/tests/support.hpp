#pragma once

// Shared fixtures for the unit tests and the acceptance binary.

#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "sopf/conditions.hpp"

namespace sopf::test {

std::string case_path(const std::string& name);
NetworkCase bundled(const std::string& name);

/// Every case shipped in cases/.
const std::vector<std::string>& bundled_names();

/// Two buses, one branch, one quadratic generator at bus 0 and `load_mw`
/// at bus 1, T = 1. `r` is the series resistance in p.u. (0: lossless).
nlohmann::json two_bus_doc(double load_mw = 50.0, double r = 0.0, double x = 0.1);

/// A copy of `c` without storage units.
NetworkCase without_storage(const NetworkCase& c);

/// min x^2  s.t.  1 - x <= 0
class SquareToy final : public NlpProblem {
 public:
  SquareToy();
  int dimension() const override { return 1; }
  int equality_count() const override { return 0; }
  int inequality_count() const override { return 1; }
  double objective(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  void constraints(const Eigen::VectorXd& x, Eigen::VectorXd& ce, Eigen::VectorXd& ci) const override;
  void jacobians(const Eigen::VectorXd& x, SparseMatrix& je, SparseMatrix& ji) const override;
  Eigen::MatrixXd lagrangian_hessian(const Eigen::VectorXd& x, double obj_factor,
                                     const Eigen::VectorXd& nu,
                                     const Eigen::VectorXd& lambda) const override;
  Eigen::VectorXd initial_point() const override { return Eigen::VectorXd::Zero(1); }
  const std::vector<ConstraintHandle>& equality_handles() const override { return eq_; }
  const std::vector<ConstraintHandle>& inequality_handles() const override { return in_; }

 private:
  std::vector<ConstraintHandle> eq_, in_;
};

/// min -x  s.t.  x - 3 <= 0,  -x <= 0
class LinearToy final : public NlpProblem {
 public:
  LinearToy();
  int dimension() const override { return 1; }
  int equality_count() const override { return 0; }
  int inequality_count() const override { return 2; }
  double objective(const Eigen::VectorXd& x) const override { return -x[0]; }
  Eigen::VectorXd gradient(const Eigen::VectorXd&) const override;
  void constraints(const Eigen::VectorXd& x, Eigen::VectorXd& ce, Eigen::VectorXd& ci) const override;
  void jacobians(const Eigen::VectorXd& x, SparseMatrix& je, SparseMatrix& ji) const override;
  Eigen::MatrixXd lagrangian_hessian(const Eigen::VectorXd& x, double obj_factor,
                                     const Eigen::VectorXd& nu,
                                     const Eigen::VectorXd& lambda) const override;
  Eigen::VectorXd initial_point() const override { return Eigen::VectorXd::Zero(1); }
  const std::vector<ConstraintHandle>& equality_handles() const override { return eq_; }
  const std::vector<ConstraintHandle>& inequality_handles() const override { return in_; }

 private:
  std::vector<ConstraintHandle> eq_, in_;
};

/// Voltages inside their limits, angles within +-0.3 rad, every other
/// variable perturbed around the solver's starting point.
Eigen::VectorXd random_interior_point(const AcopfProblem& p, std::mt19937_64& rng);

}  // namespace sopf::test
