#include "hre/arithmetic.hpp"

#include "hre/error.hpp"

namespace hre {

ArithmeticSystem build_arithmetic_system(const PCMatrix& c, const Partition& p,
                                         double reciprocity_tol) {
  require_rankable(c, p, reciprocity_tol);
  const std::size_t n = c.size();
  const std::size_t k = p.unknown_count();
  const auto s = undefined_counts(c);

  ArithmeticSystem out;
  out.system.coeff = Matrix::identity(k);
  out.system.rhs.assign(k, 0.0);
  out.row_denominators.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double denom = static_cast<double>(n - s[i] - 1);
    out.row_denominators[i] = denom;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !c.defined(i, j)) continue;
      if (j < k)
        out.system.coeff(i, j) = -(*c(i, j) / denom);
      else
        out.system.rhs[i] += *c(i, j) * p.known_priority(j) / denom;
    }
  }
  return out;
}

Ranking solve_arithmetic(const PCMatrix& c, const Partition& p, const ArithmeticOptions& opts) {
  const auto sys = build_arithmetic_system(c, p, opts.reciprocity_tol);
  const auto x = solve(sys.system, opts.pivot_tol);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0))
      throw Error(ErrorCode::NonPositiveSolution,
                  "computed priority of alternative " + std::to_string(i + 1) + " is " +
                      std::to_string(x[i]) + "; the comparisons are too inconsistent",
                  i);
  Ranking r;
  r.values = x;
  r.values.insert(r.values.end(), p.known_priorities().begin(), p.known_priorities().end());
  return r;
}

}  // namespace hre
