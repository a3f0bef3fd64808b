#include "sopf/kkt_factor.hpp"

#include <cmath>
#include <stdexcept>

#include <lapacke.h>

namespace sopf {

static_assert(sizeof(lapack_int) == sizeof(int));

bool SymmetricIndefiniteFactor::factor(const Eigen::MatrixXd& matrix) {
  const int n = static_cast<int>(matrix.rows());
  lu_ = matrix;
  pivots_.assign(n, 0);
  inertia_ = {};
  if (n == 0) return true;

  const lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, lu_.data(), n,
                                         reinterpret_cast<lapack_int*>(pivots_.data()));
  if (info < 0) throw std::runtime_error("dsytrf: illegal argument");

  // D is block diagonal with 1x1 and 2x2 blocks. A 2x2 block produced by
  // Bunch-Kaufman always has one positive and one negative eigenvalue, but
  // classify it from its determinant anyway.
  // Absolute: barrier terms make the matrix norm meaningless as a scale.
  const double tiny = 1e-30;
  for (int k = 0; k < n;) {
    if (pivots_[k] > 0) {
      const double d = lu_(k, k);
      if (std::abs(d) <= tiny) ++inertia_.zero;
      else if (d > 0) ++inertia_.positive;
      else ++inertia_.negative;
      k += 1;
    } else {
      const double a = lu_(k, k), b = lu_(k + 1, k), c = lu_(k + 1, k + 1);
      const double det = a * c - b * b;
      if (std::abs(det) <= tiny * tiny) {
        ++inertia_.zero;
        if (a + c > 0) ++inertia_.positive;
        else ++inertia_.negative;
      } else if (det < 0) {
        ++inertia_.positive;
        ++inertia_.negative;
      } else if (a + c > 0) {
        inertia_.positive += 2;
      } else {
        inertia_.negative += 2;
      }
      k += 2;
    }
  }
  return info == 0;
}

Eigen::VectorXd SymmetricIndefiniteFactor::solve(const Eigen::VectorXd& rhs) const {
  const int n = size();
  Eigen::VectorXd out = rhs;
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', n, 1, lu_.data(), n,
                     reinterpret_cast<const lapack_int*>(pivots_.data()), out.data(), n);
  if (info != 0) throw std::runtime_error("dsytrs failed");
  return out;
}

}  // namespace sopf
