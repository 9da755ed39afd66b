#pragma once

// Arithmetic HRE for possibly incomplete comparison matrices.
//
// Each unknown priority is the average of c_ij * w_j over its row. A missing
// c_ij is taken to equal w_i / w_j, so its term collapses onto w_i itself and
// row i is averaged over its n - s_i - 1 defined comparisons only:
//
//   w_i = 1/(n - s_i - 1) * sum_{j != i, c_ij defined} c_ij w_j,   i < k.
//
// Moving the known priorities to the right-hand side gives a k x k system.

#include <optional>
#include <vector>

#include "hre/linsolve.hpp"
#include "hre/pc_matrix.hpp"

namespace hre {

struct ArithmeticSystem {
  // coeff: 1 on the diagonal, -c_ij/(n - s_i - 1) for defined unknown pairs,
  // 0 where c_ij is missing. rhs: sum over defined known j of
  // c_ij w_j/(n - s_i - 1).
  LinearSystem system;
  std::vector<double> row_denominators;

  const Matrix& coeff() const { return system.coeff; }
  const std::vector<double>& constants() const { return system.rhs; }
};

struct ArithmeticOptions {
  double reciprocity_tol = kDefaultTolerance;
  std::optional<double> pivot_tol;
};

// Runs require_rankable first, so may throw ReciprocityViolation,
// DegenerateRow, NotConnected or ValueError.
ArithmeticSystem build_arithmetic_system(const PCMatrix& c, const Partition& p,
                                         double reciprocity_tol = kDefaultTolerance);

// Additionally throws SingularMatrix, or NonPositiveSolution when some computed
// priority is <= 0 (too much inconsistency for the arithmetic method).
Ranking solve_arithmetic(const PCMatrix& c, const Partition& p, const ArithmeticOptions& opts = {});

}  // namespace hre
