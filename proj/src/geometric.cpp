#include "hre/geometric.hpp"

#include <cmath>

#include "hre/error.hpp"

namespace hre {

GeometricSystem build_geometric_system(const PCMatrix& c, const Partition& p, double log_base,
                                       double reciprocity_tol) {
  if (!(std::isfinite(log_base) && log_base > 0.0 && log_base != 1.0))
    throw Error(ErrorCode::ValueError, "logarithm base must be positive and different from 1");
  require_rankable(c, p, reciprocity_tol);
  const std::size_t n = c.size();
  const std::size_t k = p.unknown_count();
  const auto s = undefined_counts(c);
  const double ln_base = std::log(log_base);
  const auto log_xi = [ln_base](double x) { return std::log(x) / ln_base; };

  GeometricSystem out;
  out.log_base = log_base;
  out.system.coeff = Matrix(k, k);
  out.system.rhs.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    out.system.coeff(i, i) = static_cast<double>(n - s[i] - 1);
    double c_sum = 0.0;
    double g_log = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !c.defined(i, j)) continue;
      if (j < k) {
        out.system.coeff(i, j) = -1.0;
        c_sum += log_xi(*c(i, j));
      } else {
        g_log += log_xi(*c(i, j) * p.known_priority(j));
      }
    }
    out.system.rhs[i] = c_sum + g_log;
  }
  return out;
}

Ranking solve_geometric(const PCMatrix& c, const Partition& p, const GeometricOptions& opts) {
  const auto sys = build_geometric_system(c, p, opts.log_base, opts.reciprocity_tol);
  const auto logw = solve(sys.system, opts.pivot_tol);
  Ranking r;
  r.values.reserve(c.size());
  for (double lw : logw) r.values.push_back(std::pow(opts.log_base, lw));
  r.values.insert(r.values.end(), p.known_priorities().begin(), p.known_priorities().end());
  return r;
}

}  // namespace hre
