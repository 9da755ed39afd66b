#pragma once

// Random instance generators and brute-force oracles shared by the unit and
// acceptance suites. Nothing here calls into the solvers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "hre/pc_matrix.hpp"

namespace hre::testing {

using Rng = std::mt19937_64;

inline double log_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline std::vector<double> random_priorities(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = log_uniform(rng, 0.1, 10.0);
  return v;
}

// Transitive closure of the defined-comparison graph (Warshall).
inline std::vector<std::vector<bool>> reachability(const PCMatrix& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = i == j || c.defined(i, j);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][m] && r[m][j]) r[i][j] = true;
  return r;
}

// Solvability oracle: each unknown has a defined comparison and reaches a
// known alternative.
inline bool connected_oracle(const PCMatrix& c, std::size_t k) {
  const auto r = reachability(c);
  for (std::size_t i = 0; i < k; ++i) {
    bool has_edge = false, reaches_known = false;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j != i && c.defined(i, j)) has_edge = true;
      if (j >= k && r[i][j]) reaches_known = true;
    }
    if (!has_edge || !reaches_known) return false;
  }
  return true;
}

struct Instance {
  std::vector<double> generator;  // v; c_ij ~ v_i / v_j
  PCMatrix matrix;
  std::size_t k;
  std::vector<double> known;  // tail of generator
  Partition partition() const { return Partition(k, known); }
};

struct InstanceSpec {
  std::size_t n_min = 4, n_max = 10;
  double max_missing = 0.4;   // probability a pair is dropped is drawn from [0, max_missing]
  double perturbation = 1.0;  // upper-triangle factors in [1/perturbation, perturbation]
};

// Reciprocal instance with k unknowns (k drawn from [1, n-1]) that satisfies
// the connectivity guard.
inline Instance random_instance(Rng& rng, const InstanceSpec& spec) {
  std::uniform_int_distribution<std::size_t> pick_n(spec.n_min, spec.n_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    const std::size_t n = pick_n(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
    const double density = unit(rng) * spec.max_missing;
    Instance inst{random_priorities(rng, n), {}, k, {}};
    std::vector<std::vector<Entry>> rows(n, std::vector<Entry>(n));
    for (std::size_t i = 0; i < n; ++i) {
      rows[i][i] = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (unit(rng) < density) {
          rows[i][j] = rows[j][i] = kMissing;
          continue;
        }
        double cij = inst.generator[i] / inst.generator[j];
        if (spec.perturbation > 1.0) cij *= log_uniform(rng, 1.0 / spec.perturbation, spec.perturbation);
        rows[i][j] = cij;
        rows[j][i] = 1.0 / cij;
      }
    }
    inst.matrix = PCMatrix(std::move(rows));
    if (!connected_oracle(inst.matrix, k)) continue;
    inst.known.assign(inst.generator.begin() + static_cast<std::ptrdiff_t>(k), inst.generator.end());
    return inst;
  }
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Largest relative violation of w_i (n - s_i - 1) = sum_{defined j != i} c_ij w_j
// over the unknown rows.
inline double arithmetic_fixed_point_residual(const PCMatrix& c, std::size_t k,
                                              const std::vector<double>& w) {
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (j != i && c.defined(i, j)) {
        sum += *c(i, j) * w[j];
        ++defined;
      }
    worst = std::max(worst, rel_diff(static_cast<double>(defined) * w[i], sum));
  }
  return worst;
}

// Largest relative violation of w_i^(n - s_i - 1) = prod_{defined j != i} c_ij w_j.
inline double geometric_fixed_point_residual(const PCMatrix& c, std::size_t k,
                                             const std::vector<double>& w) {
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double prod = 1.0;
    int defined = 0;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (j != i && c.defined(i, j)) {
        prod *= *c(i, j) * w[j];
        ++defined;
      }
    worst = std::max(worst, rel_diff(std::pow(w[i], defined), prod));
  }
  return worst;
}

// Largest eigenvalue of a small matrix: characteristic polynomial by
// Faddeev-LeVerrier, then the largest real root by bisection above the
// Gershgorin bound.
inline double largest_real_eigenvalue(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  using Mat = std::vector<std::vector<double>>;
  auto mul = [n](const Mat& x, const Mat& y) {
    Mat z(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][m] * y[m][j];
    return z;
  };
  // p(x) = x^n + coef[1] x^(n-1) + ... + coef[n]
  std::vector<double> coef(n + 1, 0.0);
  coef[0] = 1.0;
  Mat m(n, std::vector<double>(n, 0.0));
  for (std::size_t step = 1; step <= n; ++step) {
    Mat am = mul(a, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += coef[step - 1];
    m = am;
    const Mat next = mul(a, m);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += next[i][i];
    coef[step] = -trace / static_cast<double>(step);
  }
  auto p = [&](double x) {
    double acc = 0.0;
    for (double c : coef) acc = acc * x + c;
    return acc;
  };
  double bound = 0.0;
  for (const auto& row : a) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    bound = std::max(bound, s);
  }
  // Scan down from the bound for the first sign change, then bisect.
  double hi = bound + 1.0;
  const double step = (2.0 * hi) / 20000.0;
  double lo = hi - step;
  while (lo > -hi && (p(lo) > 0) == (p(hi) > 0)) {
    hi = lo;
    lo -= step;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((p(mid) > 0) == (p(hi) > 0))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::vector<std::vector<double>> dense(const PCMatrix& c) {
  std::vector<std::vector<double>> out(c.size(), std::vector<double>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out[i][j] = c(i, j).value_or(0.0);
  return out;
}

}  // namespace hre::testing
