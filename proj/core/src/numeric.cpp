#include "weakgibbs/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "weakgibbs/errors.hpp"

namespace weakgibbs {
namespace {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

double log_sum_exp(std::span<const double> values) {
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  if (values.empty()) return ninf;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double top = sorted.back();
  if (top == ninf) return ninf;
  if (std::isinf(top)) return top;
  for (double& x : sorted) x = std::exp(x - top);
  return top + std::log(pairwise_sum(sorted));
}

PerronData perron(const DenseMatrix& m, double tol, int max_iter) {
  const std::size_t n = m.n;
  if (n == 0) throw InvalidInput("empty matrix");
  for (double x : m.a) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidInput("perron needs a finite nonnegative matrix");
  }

  auto iterate = [&](bool transpose) {
    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    std::vector<double> w(n);
    double root = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += (transpose ? m(j, i) : m(i, j)) * v[j];
        w[i] = s;
      }
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] <= 0.0) {
          lo = 0.0;
          hi = std::numeric_limits<double>::infinity();
          break;
        }
        const double r = w[i] / v[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      if (!(total > 0.0)) throw ConvergenceFailure("power iteration collapsed to zero");
      for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / total;
      if (std::isfinite(hi) && hi - lo <= tol * hi) {
        root = 0.5 * (lo + hi);
        return std::pair{root, std::pair{v, it}};
      }
    }
    throw ConvergenceFailure("power iteration did not converge");
  };

  auto [root, right] = iterate(false);
  auto [root_left, left] = iterate(true);
  (void)root_left;

  PerronData out;
  out.root = root;
  out.right = std::move(right.first);
  out.left = std::move(left.first);
  out.iterations = std::max(right.second, left.second);
  double dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) dot += out.left[i] * out.right[i];
  for (double& x : out.left) x /= dot;
  return out;
}

std::vector<double> stationary_vector(const DenseMatrix& q) {
  const std::size_t n = q.n;
  // Rows 0..n-2 of (Q^T - I) pi = 0, last row sum pi = 1.
  std::vector<double> a(n * (n + 1), 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * (n + 1) + j]; };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = q(j, i) - (i == j ? 1.0 : 0.0);
  }
  for (std::size_t j = 0; j < n; ++j) at(n - 1, j) = 1.0;
  at(n - 1, n) = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    }
    if (std::abs(at(pivot, col)) < 1e-300) throw InvalidInput("stationary vector is not unique");
    if (pivot != col) {
      for (std::size_t j = 0; j <= n; ++j) std::swap(at(col, j), at(pivot, j));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = at(r, col) / at(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j <= n; ++j) at(r, j) -= f * at(col, j);
    }
  }
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = std::max(0.0, at(i, n) / at(i, i));
  const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (double& x : pi) x /= total;
  return pi;
}

AitkenResult aitken_tail(std::span<const double> seq) {
  if (seq.empty()) throw InvalidInput("empty sequence");
  const double last = seq.back();
  if (seq.size() < 3) return {last, false};
  const double x0 = seq[seq.size() - 3];
  const double x1 = seq[seq.size() - 2];
  const double x2 = last;
  const double denom = (x2 - x1) - (x1 - x0);
  if (std::abs(denom) < 1e-14) return {last, false};
  const double value = x2 - (x2 - x1) * (x2 - x1) / denom;
  if (!std::isfinite(value)) return {last, false};
  return {value, true};
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2 || x.size() != y.size()) throw InvalidInput("slope fit needs matching inputs of size >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace weakgibbs
