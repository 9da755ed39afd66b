#include "hre/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hre/error.hpp"

namespace hre {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) sum += std::abs((*this)(r, c));
    best = std::max(best, sum);
  }
  return best;
}

std::vector<double> Matrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  return y;
}

std::vector<double> solve(const LinearSystem& sys, std::optional<double> pivot_tol) {
  const std::size_t n = sys.coeff.rows();
  if (sys.coeff.cols() != n || sys.rhs.size() != n)
    throw Error(ErrorCode::ValueError, "linear system is not square or rhs length differs");

  Matrix a = sys.coeff;
  std::vector<double> b = sys.rhs;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(b[i])) throw Error(ErrorCode::ValueError, "non-finite right-hand side");
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(a(i, j))) throw Error(ErrorCode::ValueError, "non-finite coefficient");
  }
  const double tol = pivot_tol.value_or(1e-12 * a.norm_inf());

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (!(std::abs(a(pivot, col)) > tol))
      throw Error(ErrorCode::SingularMatrix,
                  "pivot " + std::to_string(col + 1) + " vanishes; system is singular");
    if (pivot != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      a(r, col) = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }

  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
    x[i] = acc / a(i, i);
  }
  return x;
}

double residual_inf(const LinearSystem& sys, std::span<const double> x) {
  const auto mx = sys.coeff.multiply(x);
  double worst = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) worst = std::max(worst, std::abs(mx[i] - sys.rhs[i]));
  return worst;
}

}  // namespace hre
