#ifndef ALCOVE_FREE_COUNTS_HPP
#define ALCOVE_FREE_COUNTS_HPP

// Unconstrained walk counts c(gamma, k) for each step set, plus the
// hyperbolic Bessel series backing the generating-function formulas.

#include <vector>

#include "alcove/lattice.hpp"

namespace alcove {

/// C(n, k), zero unless 0 <= k <= n.
BigCount binomial(std::int64_t n, std::int64_t k);
BigCount factorial(std::int64_t n);

/// C(k, k/2 + x) for x given doubled; zero when k/2 + x is not an integer in [0, k].
BigCount half_binomial(int k, std::int64_t x_doubled);

/// Diagonal steps +-1/2 e_1 ... +-1/2 e_n: prod_i C(k, k/2 + gamma_i).
BigCount free_diagonal(const LatticePoint& gamma, int k);
BigCount free_diagonal(const Coords& gamma_doubled, int k);

/// Coordinate steps +-e_i: coefficient of u^gamma in (sum_i u_i + 1/u_i)^k,
/// by the multinomial convolution over how many steps each axis takes.
BigCount free_coordinate(const LatticePoint& gamma, int k);
BigCount free_coordinate(const Coords& gamma_doubled, int k);

/// Forward steps e_i: k! / prod gamma_i! when sum gamma = k, else zero.
BigCount free_forward(const LatticePoint& gamma, int k);
BigCount free_forward(const Coords& gamma_doubled, int k);

/// Dispatches on the step kind; the zero step (if present) is folded in as
/// sum_j C(k, j) c(gamma, j).
BigCount free_count(const StepSet& steps, const Coords& gamma_doubled, int k);

/// I_order(argument) by its power series in x = argument / 2, summed until
/// the next term drops below tolerance * (1 + |partial sum|).
double bessel_I(int order, double argument, double tolerance = 1e-15);

/// Power-series coefficients of I_order(2x) in x, degrees 0..max_degree.
std::vector<double> bessel_series(int order, int max_degree);

} // namespace alcove

#endif
