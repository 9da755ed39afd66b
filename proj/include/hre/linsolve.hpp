#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hre {

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  // Maximum absolute row sum.
  double norm_inf() const;

  std::vector<double> multiply(std::span<const double> x) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

struct LinearSystem {
  Matrix coeff;
  std::vector<double> rhs;
};

// Gaussian elimination with partial pivoting. Throws Error(SingularMatrix) when
// a pivot magnitude does not exceed pivot_tol, which defaults to
// 1e-12 * ||coeff||_inf. Throws Error(ValueError) for mismatched shapes or
// non-finite entries.
std::vector<double> solve(const LinearSystem& sys, std::optional<double> pivot_tol = std::nullopt);

// ||coeff * x - rhs||_inf
double residual_inf(const LinearSystem& sys, std::span<const double> x);

}  // namespace hre
