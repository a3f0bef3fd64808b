#pragma once

#include <vector>

#include <Eigen/Dense>

namespace sopf {

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Inertia&) const = default;
};

/// Dense symmetric-indefinite LDL' factorization (Bunch-Kaufman pivoting)
/// reporting the inertia of the factored matrix. Only the lower triangle of
/// the input is referenced.
class SymmetricIndefiniteFactor {
 public:
  /// Returns false when LAPACK reports an exactly singular pivot; the
  /// inertia is still filled in and counts that pivot as zero.
  bool factor(const Eigen::MatrixXd& matrix);
  Inertia inertia() const { return inertia_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  int size() const { return static_cast<int>(lu_.rows()); }

 private:
  Eigen::MatrixXd lu_;
  std::vector<int> pivots_;
  Inertia inertia_;
};

}  // namespace sopf
