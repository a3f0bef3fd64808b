#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sopf/handles.hpp"

namespace sopf {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

class EvaluationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Smooth NLP  min f(x)  s.t.  c_E(x) = 0,  c_I(x) <= 0.
///
/// The Lagrangian is L = f + nu' c_E + lambda' c_I with lambda >= 0.
/// Evaluators are const and keep no mutable state, so distinct x values can
/// be evaluated concurrently.
class NlpProblem {
 public:
  virtual ~NlpProblem() = default;

  virtual int dimension() const = 0;
  virtual int equality_count() const = 0;
  virtual int inequality_count() const = 0;

  virtual double objective(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
  virtual void constraints(const Eigen::VectorXd& x, Eigen::VectorXd& c_eq,
                           Eigen::VectorXd& c_in) const = 0;
  /// Jacobians with a sparsity pattern that does not depend on x.
  virtual void jacobians(const Eigen::VectorXd& x, SparseMatrix& j_eq,
                         SparseMatrix& j_in) const = 0;
  /// Dense symmetric Hessian of  obj_factor * f + nu' c_E + lambda' c_I.
  virtual Eigen::MatrixXd lagrangian_hessian(const Eigen::VectorXd& x, double obj_factor,
                                             const Eigen::VectorXd& nu,
                                             const Eigen::VectorXd& lambda) const = 0;
  virtual Eigen::VectorXd initial_point() const = 0;

  virtual const std::vector<ConstraintHandle>& equality_handles() const = 0;
  virtual const std::vector<ConstraintHandle>& inequality_handles() const = 0;
};

inline void require_finite(const Eigen::VectorXd& x, const char* what) {
  if (!x.allFinite()) throw EvaluationError(std::string(what) + ": non-finite input");
}

}  // namespace sopf
