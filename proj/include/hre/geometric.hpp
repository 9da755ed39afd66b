#pragma once

// Geometric HRE for possibly incomplete comparison matrices.
//
// Each unknown priority is the geometric mean of c_ij * w_j over its row. With
// missing c_ij replaced by w_i / w_j and both sides raised to n - 1:
//
//   w_i^(n - s_i - 1) = prod_{j != i, c_ij defined} c_ij w_j,   i < k.
//
// Taking log base xi turns this into a linear system in log w.

#include <numbers>
#include <optional>

#include "hre/linsolve.hpp"
#include "hre/pc_matrix.hpp"

namespace hre {

struct GeometricSystem {
  // coeff: n - s_i - 1 on the diagonal, -1 for defined unknown pairs, 0 where
  // missing. rhs_i = sum over defined unknown j of log c_ij plus
  // log g_i, g_i = prod over defined known j of c_ij w_j (empty product 1).
  LinearSystem system;
  double log_base = std::numbers::e;

  const Matrix& coeff() const { return system.coeff; }
  const std::vector<double>& constants() const { return system.rhs; }
};

struct GeometricOptions {
  double log_base = std::numbers::e;
  double reciprocity_tol = kDefaultTolerance;
  std::optional<double> pivot_tol;
};

// log_base must be positive, finite and different from 1 (ValueError otherwise).
GeometricSystem build_geometric_system(const PCMatrix& c, const Partition& p,
                                       double log_base = std::numbers::e,
                                       double reciprocity_tol = kDefaultTolerance);

Ranking solve_geometric(const PCMatrix& c, const Partition& p, const GeometricOptions& opts = {});

}  // namespace hre
