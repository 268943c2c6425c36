#include "alcove/free_counts.hpp"

#include <cmath>
#include <cstdlib>

namespace alcove {

BigCount binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  BigCount out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

BigCount factorial(std::int64_t n) {
  if (n < 0)
    throw InvalidInput("factorial of a negative number");
  BigCount out = 1;
  for (std::int64_t i = 2; i <= n; ++i)
    out *= i;
  return out;
}

BigCount half_binomial(int k, std::int64_t x_doubled) {
  const std::int64_t twice = k + x_doubled;
  if (twice % 2 != 0)
    return 0;
  return binomial(k, twice / 2);
}

BigCount free_diagonal(const Coords& gamma, int k) {
  BigCount out = 1;
  for (Eigen::Index i = 0; i < gamma.size() && out != 0; ++i)
    out *= half_binomial(k, gamma[i]);
  return out;
}

BigCount free_diagonal(const LatticePoint& gamma, int k) { return free_diagonal(gamma.doubled(), k); }

namespace {

// Sum over compositions k_0 + ... + k_{n-1} = remaining of
// remaining! / prod k_i! * prod C(k_i, (k_i + gamma_i) / 2).
void coordinate_convolution(const Coords& g, int axis, int remaining, const BigCount& weight, BigCount& total) {
  const int n = static_cast<int>(g.size());
  const std::int64_t need = std::abs(g[axis]);
  if (axis == n - 1) {
    if (remaining < need || (remaining - need) % 2 != 0)
      return;
    total += weight * binomial(remaining, (remaining + g[axis]) / 2);
    return;
  }
  for (std::int64_t ki = need; ki <= remaining; ki += 2) {
    const BigCount w = weight * binomial(remaining, ki) * binomial(ki, (ki + g[axis]) / 2);
    coordinate_convolution(g, axis + 1, remaining - static_cast<int>(ki), w, total);
  }
}

} // namespace

BigCount free_coordinate(const Coords& gamma_doubled, int k) {
  if (k < 0)
    return 0;
  if (!gamma_doubled.unaryExpr([](std::int64_t v) { return v & 1; }).isZero())
    return 0;
  const Coords g = gamma_doubled / 2;
  if (g.cwiseAbs().sum() > k || (k - g.cwiseAbs().sum()) % 2 != 0)
    return 0;
  BigCount total = 0;
  coordinate_convolution(g, 0, k, BigCount(1), total);
  return total;
}

BigCount free_coordinate(const LatticePoint& gamma, int k) { return free_coordinate(gamma.doubled(), k); }

BigCount free_forward(const Coords& gamma_doubled, int k) {
  if (k < 0)
    return 0;
  std::int64_t sum = 0;
  for (Eigen::Index i = 0; i < gamma_doubled.size(); ++i) {
    if (gamma_doubled[i] < 0 || gamma_doubled[i] % 2 != 0)
      return 0;
    sum += gamma_doubled[i] / 2;
  }
  if (sum != k)
    return 0;
  BigCount out = 1;
  std::int64_t placed = 0;
  for (Eigen::Index i = 0; i < gamma_doubled.size(); ++i) {
    placed += gamma_doubled[i] / 2;
    out *= binomial(placed, gamma_doubled[i] / 2);
  }
  return out;
}

BigCount free_forward(const LatticePoint& gamma, int k) { return free_forward(gamma.doubled(), k); }

namespace {

BigCount free_count_no_zero(StepKind kind, const Coords& gamma, int k) {
  switch (kind) {
  case StepKind::Coordinate:
    return free_coordinate(gamma, k);
  case StepKind::Diagonal:
    return free_diagonal(gamma, k);
  case StepKind::Forward:
    return free_forward(gamma, k);
  }
  return 0;
}

} // namespace

BigCount free_count(const StepSet& steps, const Coords& gamma, int k) {
  if (!steps.include_zero_step())
    return free_count_no_zero(steps.kind(), gamma, k);
  BigCount total = 0;
  for (int j = 0; j <= k; ++j) {
    auto c = free_count_no_zero(steps.kind(), gamma, j);
    if (c != 0)
      total += binomial(k, j) * c;
  }
  return total;
}

double bessel_I(int order, double argument, double tolerance) {
  if (!(tolerance > 0))
    throw InvalidInput("tolerance must be positive");
  const int nu = std::abs(order);
  const double x = argument / 2.0;
  // First term x^nu / nu!
  double term = 1.0;
  for (int i = 1; i <= nu; ++i)
    term *= x / i;
  if (nu > 0 && x == 0.0)
    return 0.0;
  double sum = term;
  const double x2 = x * x;
  for (int t = 1; t < 100000; ++t) {
    term *= x2 / (static_cast<double>(t) * static_cast<double>(t + nu));
    if (std::abs(term) < tolerance * (1.0 + std::abs(sum)))
      break;
    sum += term;
  }
  return sum;
}

std::vector<double> bessel_series(int order, int max_degree) {
  const int nu = std::abs(order);
  std::vector<double> coeff(static_cast<std::size_t>(std::max(max_degree, -1) + 1), 0.0);
  // I_nu(2x) = sum_t x^(2t+nu) / (t! (t+nu)!)
  double c = 1.0;
  for (int i = 1; i <= nu; ++i)
    c /= i;
  for (int t = 0; 2 * t + nu <= max_degree; ++t) {
    if (t > 0)
      c /= static_cast<double>(t) * static_cast<double>(t + nu);
    coeff[static_cast<std::size_t>(2 * t + nu)] = c;
  }
  return coeff;
}

} // namespace alcove
