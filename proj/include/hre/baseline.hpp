#pragma once

// Classical prioritization of complete comparison matrices: principal
// eigenvector (EVM) and row geometric means (GMM). Both return weights that
// sum to 1.

#include <cstddef>
#include <vector>

#include "hre/pc_matrix.hpp"

namespace hre {

enum class BaselineMethod { EVM, GMM };

struct BaselineResult {
  BaselineMethod method;
  std::vector<double> weights;
  double spectral_radius = 0.0;  // EVM only
  double normalizer = 0.0;       // GMM only
  std::size_t iterations = 0;    // EVM only
};

// Power iteration from the uniform vector. Stops when successive normalized
// iterates differ by less than conv_tol in max-norm; throws NoConvergence after
// max_iter steps and IncompleteMatrix on any missing entry. spectral_radius is
// the Rayleigh quotient of the final iterate.
BaselineResult evm(const PCMatrix& c, std::size_t max_iter = 10000, double conv_tol = 1e-12);

// w_i = alpha * (prod_j c_ij)^(1/n), the diagonal included.
BaselineResult gmm(const PCMatrix& c);

}  // namespace hre
