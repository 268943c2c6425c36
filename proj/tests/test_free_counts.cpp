#include <doctest.h>

#include <cmath>

#include "alcove/free_counts.hpp"

using namespace alcove;

namespace {

BigCount power(std::size_t base, int k) {
  BigCount p = 1;
  for (int i = 0; i < k; ++i)
    p *= base;
  return p;
}

// Sums c(gamma, k) over every doubled gamma in [-r, r]^n.
BigCount total_over_box(const StepSet& steps, int k) {
  const int n = steps.n();
  const std::int64_t r = k * steps.max_doubled_magnitude();
  Coords g = Coords::Constant(n, -r);
  BigCount total = 0;
  while (true) {
    total += free_count(steps, g, k);
    int i = n - 1;
    while (i >= 0 && g[i] == r)
      g[i--] = -r;
    if (i < 0)
      break;
    ++g[i];
  }
  return total;
}

} // namespace

TEST_CASE("binomials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  CHECK(factorial(10) == 3628800);
  CHECK(half_binomial(2, 0) == 2);
  CHECK(half_binomial(2, 1) == 0);
  CHECK(half_binomial(3, 1) == 3);
  CHECK(half_binomial(3, 5) == 0);
}

TEST_CASE("diagonal examples") {
  CHECK(free_diagonal(LatticePoint::integer({0}), 2) == 2);
  CHECK(free_diagonal(LatticePoint::integer({1, 0}), 2) == 2);
  CHECK(free_diagonal(LatticePoint::from_doubled({1}), 2) == 0);
  CHECK(free_diagonal(LatticePoint::from_doubled({1, -1}), 1) == 1);
}

TEST_CASE("coordinate examples") {
  CHECK(free_coordinate(LatticePoint::integer({0}), 2) == 2);
  CHECK(free_coordinate(LatticePoint::integer({0, 0}), 2) == 4);
  CHECK(free_coordinate(LatticePoint::integer({1, 1}), 2) == 2);
  CHECK(free_coordinate(LatticePoint::integer({1, 0}), 2) == 0);
  CHECK(free_coordinate(LatticePoint::from_doubled({1, 1}), 1) == 0);
}

TEST_CASE("forward examples") {
  CHECK(free_forward(LatticePoint::integer({1, 1}), 2) == 2);
  CHECK(free_forward(LatticePoint::integer({2, 0}), 2) == 1);
  CHECK(free_forward(LatticePoint::integer({-1, 3}), 2) == 0);
  CHECK(free_forward(LatticePoint::integer({1, 2, 1}), 4) == 12);
}

TEST_CASE("zero step is folded in binomially") {
  const StepSet lazy(StepKind::Coordinate, 1, true);
  // Sequences of +1, -1, 0 summing to 0 in two steps: 00, +-, -+.
  CHECK(free_count(lazy, Coords::Constant(1, 0), 2) == 3);
  CHECK(free_count(lazy, Coords::Constant(1, 2), 2) == 2);
}

TEST_CASE("free counts sum to the number of step sequences") {
  for (StepKind kind : {StepKind::Coordinate, StepKind::Diagonal, StepKind::Forward})
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= 8; ++k) {
        if (n == 3 && k > 6 && kind != StepKind::Forward)
          continue;
        for (bool zero : {false, true}) {
          const StepSet steps(kind, n, zero);
          CHECK(total_over_box(steps, k) == power(steps.size(), k));
        }
      }
}

TEST_CASE("coordinate counts are invariant under signed permutations") {
  const std::vector<Coords> gammas = {(Coords(3) << 2, 0, -4).finished(), (Coords(3) << 4, -2, 2).finished(),
                                      (Coords(3) << 0, 0, 6).finished()};
  for (const auto& g : gammas)
    for (int k = 0; k <= 9; ++k) {
      const auto base = free_coordinate(g, k);
      std::vector<int> sigma{0, 1, 2};
      do {
        for (int mask = 0; mask < 8; ++mask) {
          Coords h(3);
          for (int i = 0; i < 3; ++i)
            h[i] = ((mask >> i) & 1 ? -1 : 1) * g[sigma[static_cast<std::size_t>(i)]];
          CHECK(free_coordinate(h, k) == base);
          CHECK(free_diagonal(h, k) == free_diagonal(g, k));
        }
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
}

TEST_CASE("Bessel function values") {
  CHECK(bessel_I(0, 0.0) == doctest::Approx(1.0));
  CHECK(bessel_I(1, 0.0) == doctest::Approx(0.0));
  CHECK(std::abs(bessel_I(1, 1.0) - 0.565159103992485) < 1e-9);
  for (int order = -4; order <= 6; ++order)
    for (double x : {0.1, 0.5, 1.0, 2.5, 6.0})
      CHECK(std::abs(bessel_I(order, x) - std::cyl_bessel_i(static_cast<double>(std::abs(order)), x)) <
            1e-12 * (1 + std::cyl_bessel_i(static_cast<double>(std::abs(order)), x)));
  // Recurrence I_0(x) - (2/x) I_1(x) - I_2(x) = 0.
  CHECK(std::abs(bessel_I(0, 1.0) - 2.0 * bessel_I(1, 1.0) - bessel_I(2, 1.0)) < 1e-12);
}

TEST_CASE("generating function of coordinate counts is a product of Bessel series") {
  const int kmax = 6;
  std::vector<double> fact(kmax + 1, 1.0);
  for (int k = 1; k <= kmax; ++k)
    fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * k;
  for (int g1 = -3; g1 <= 3; ++g1)
    for (int g2 = -3; g2 <= 3; ++g2) {
      const auto a = bessel_series(g1, kmax);
      const auto b = bessel_series(g2, kmax);
      for (int k = 0; k <= kmax; ++k) {
        double coeff = 0;
        for (int j = 0; j <= k; ++j)
          coeff += a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
        const double egf = coeff * fact[static_cast<std::size_t>(k)];
        const double exact = free_coordinate(LatticePoint::integer({g1, g2}), k).convert_to<double>();
        CHECK(std::abs(egf - exact) <= 1e-6 * std::max(1.0, exact));
      }
      const auto one = bessel_series(g1, kmax);
      for (int k = 0; k <= kmax; ++k) {
        const double exact = free_coordinate(LatticePoint::integer({g1}), k).convert_to<double>();
        CHECK(std::abs(one[static_cast<std::size_t>(k)] * fact[static_cast<std::size_t>(k)] - exact) <=
              1e-6 * std::max(1.0, exact));
      }
    }
}
