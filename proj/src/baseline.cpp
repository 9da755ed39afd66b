#include "hre/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hre/error.hpp"

namespace hre {

namespace {

void require_complete(const PCMatrix& c) {
  if (!c.is_complete())
    throw Error(ErrorCode::IncompleteMatrix, "method requires a complete comparison matrix");
}

std::vector<double> times(const PCMatrix& c, const std::vector<double>& x) {
  std::vector<double> y(c.size(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) y[i] += *c(i, j) * x[j];
  return y;
}

void normalize(std::vector<double>& x) {
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= sum;
}

}  // namespace

BaselineResult evm(const PCMatrix& c, std::size_t max_iter, double conv_tol) {
  require_complete(c);
  const std::size_t n = c.size();
  BaselineResult out{BaselineMethod::EVM, std::vector<double>(n, 1.0 / static_cast<double>(n))};
  bool converged = false;
  while (out.iterations < max_iter) {
    auto next = times(c, out.weights);
    normalize(next);
    ++out.iterations;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - out.weights[i]));
    out.weights = std::move(next);
    if (diff < conv_tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Error(ErrorCode::NoConvergence,
                "power iteration did not converge in " + std::to_string(max_iter) + " steps");

  const auto cw = times(c, out.weights);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += out.weights[i] * cw[i];
    den += out.weights[i] * out.weights[i];
  }
  out.spectral_radius = num / den;
  return out;
}

BaselineResult gmm(const PCMatrix& c) {
  require_complete(c);
  const std::size_t n = c.size();
  BaselineResult out{BaselineMethod::GMM, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) prod *= *c(i, j);
    out.weights[i] = std::pow(prod, 1.0 / static_cast<double>(n));
  }
  out.normalizer = 1.0 / std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& w : out.weights) w *= out.normalizer;
  return out;
}

}  // namespace hre
