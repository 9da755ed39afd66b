#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hre/error.hpp"
#include "hre/linsolve.hpp"
#include "support.hpp"

using namespace hre;
using hre::testing::Rng;

namespace {

Matrix random_matrix(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

// Diagonally boosted so the condition number stays modest.
Matrix well_conditioned(Rng& rng, std::size_t n) {
  Matrix m = random_matrix(rng, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += static_cast<double>(n);
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

bool is_singular(const LinearSystem& sys) {
  try {
    solve(sys);
  } catch (const Error& e) {
    return e.code() == ErrorCode::SingularMatrix;
  }
  return false;
}

}  // namespace

TEST_CASE("small closed-form systems") {
  CHECK(solve({Matrix::identity(3), {1, 2, 3}}) == std::vector<double>{1, 2, 3});
  Matrix d(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 4;
  CHECK(solve({d, {2, 8}}) == std::vector<double>{1, 2});
}

TEST_CASE("forward-multiply round trip") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const Matrix m = trial % 2 ? well_conditioned(rng, n) : random_matrix(rng, n);
    std::vector<double> x(n);
    std::uniform_real_distribution<double> u(-5, 5);
    for (double& v : x) v = u(rng);
    const LinearSystem sys{m, m.multiply(x)};
    const auto got = solve(sys);
    double xnorm = 0.0;
    for (double v : x) xnorm = std::max(xnorm, std::abs(v));
    double rhs_norm = 0.0;
    for (double v : sys.rhs) rhs_norm = std::max(rhs_norm, std::abs(v));
    CHECK(residual_inf(sys, got) <= 1e-10 * (1.0 + rhs_norm));
    if (trial % 2) CHECK(max_abs_diff(got, x) <= 1e-9 * xnorm);
  }

  SUBCASE("8x8 instance") {
    const Matrix m = well_conditioned(rng, 8);
    const std::vector<double> x{1, -2, 3, -4, 5, -6, 7, -8};
    CHECK(max_abs_diff(solve({m, m.multiply(x)}), x) <= 1e-9 * 8);
  }
}

TEST_CASE("row permutation leaves the solution unchanged") {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 8;
    const Matrix m = well_conditioned(rng, n);
    std::vector<double> rhs(n);
    std::uniform_real_distribution<double> u(-1, 1);
    for (double& v : rhs) v = u(rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix pm(n, n);
    std::vector<double> prhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) pm(i, j) = m(perm[i], j);
      prhs[i] = rhs[perm[i]];
    }
    CHECK(max_abs_diff(solve({m, rhs}), solve({pm, prhs})) <= 1e-12);
  }
}

TEST_CASE("singular systems are reported") {
  CHECK(is_singular({Matrix(3, 3), {0, 0, 0}}));
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 6;
    Matrix m = random_matrix(rng, n);
    for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j);
    CHECK(is_singular({m, std::vector<double>(n, 1.0)}));
  }
  Matrix two(2, 2, 1.0);
  CHECK(is_singular({two, {1, 2}}));
}

TEST_CASE("shape and finiteness checks") {
  CHECK_THROWS_AS(solve({Matrix(2, 3), {1, 2}}), Error);
  CHECK_THROWS_AS(solve({Matrix::identity(2), {1}}), Error);
  CHECK_THROWS_AS(solve({Matrix::identity(2), {1, std::nan("")}}), Error);
}

TEST_CASE("solve is deterministic") {
  Rng rng(24);
  const Matrix m = random_matrix(rng, 9);
  const std::vector<double> rhs(9, 1.0);
  CHECK(solve({m, rhs}) == solve({m, rhs}));
}
