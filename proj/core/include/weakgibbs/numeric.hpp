#pragma once

// Small numerical kernels shared by the pressure and measure modules.

#include <cstddef>
#include <span>
#include <vector>

namespace weakgibbs {

/// log(sum exp(x_i)). Values are sorted before a pairwise summation of
/// exp(x_i - max), so the result does not depend on the input order.
/// Returns -inf for an empty input or all -inf inputs.
double log_sum_exp(std::span<const double> values);

/// Square matrix, row-major.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct PerronData {
  double root = 0.0;           // spectral radius
  std::vector<double> right;   // M h = root h, sum h = 1
  std::vector<double> left;    // nu M = root nu, normalized nu . h = 1
  int iterations = 0;
};

/// Perron root and eigenvectors of a primitive nonnegative matrix by power
/// iteration. Stops when the Collatz-Wielandt bounds
/// min (Mv)_i/v_i <= root <= max (Mv)_i/v_i are within `tol` relative.
/// Throws ConvergenceFailure after `max_iter` sweeps.
PerronData perron(const DenseMatrix& m, double tol = 1e-13, int max_iter = 1'000'000);

/// Stationary vector of a row-stochastic matrix (pi Q = pi, sum pi = 1) by
/// Gaussian elimination with partial pivoting. Assumes a unique solution.
std::vector<double> stationary_vector(const DenseMatrix& q);

/// Aitken delta-squared on the last three entries of `seq`.
struct AitkenResult {
  double value = 0.0;
  bool accelerated = false;  // false: denominator below 1e-14, value is the last entry
};
AitkenResult aitken_tail(std::span<const double> seq);

/// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

}  // namespace weakgibbs
