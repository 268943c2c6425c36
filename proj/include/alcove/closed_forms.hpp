#ifndef ALCOVE_CLOSED_FORMS_HPP
#define ALCOVE_CLOSED_FORMS_HPP

// Closed-form determinant formulas for alcove and circle walk counts.
//
// Diagonal-step formulas return the count for a fixed k as a real number.
// Coordinate-step formulas return the exponential generating function as an
// ExpPoly; expoly_extract(f, k) gives the count. All of these are double
// precision and are meant to be validated against the exact counts, so
// round_count() refuses to round anything that is not close to an integer.

#include <optional>
#include <vector>

#include "alcove/exp_poly.hpp"
#include "alcove/reflection.hpp"

namespace alcove {

/// Probability that the gambler starting with eta of N total chips goes broke
/// exactly at bet k (fair unit bets).
double gambler_first_passage(int N, int eta, int k);

/// Probability of holding lambda chips after k bets with neither player broke.
double gambler_position(int N, int eta, int lambda, int k);

/// Trigonometric form of sum_{j = d (mod 2m)} C(k, k/2 + j).
double periodic_binomial_sum(HalfInteger d, int k, int m);

/// Exponential form of sum_{j = s (mod 2m)} I_j(2x).
RealExpPoly periodic_bessel_expoly(int s, int m);

/// Diagonal steps in m > x_1 > ... > x_n > 0; m may be a half-integer.
double tcn_diag_count(const LatticePoint& eta, const LatticePoint& lambda, int k, HalfInteger m);

/// Coordinate steps in m > x_1 > ... > x_n > 0.
RealExpPoly tcn_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m);

/// Coordinate steps in x_1 > ... > x_n > 0, x_1 + x_2 < 2m.
RealExpPoly tbn_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m);

/// Prefactor used on the odd-harmonic cosine determinant of the D family.
/// `Simplified` is the value confirmed by the exact counts; `DoubledEntries`
/// scales every entry of that determinant by 2.
enum class DnOddCosineScale { Simplified, DoubledEntries };

/// Coordinate steps in x_1 > ... > x_n, x_1 + x_2 < 2m, x_{n-1} > -x_n.
RealExpPoly tdn_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m,
                             DnOddCosineScale scale = DnOddCosineScale::Simplified);

/// Diagonal steps in the B or D alcove; m may be a half-integer.
double bn_dn_diag_count(Family family, const LatticePoint& eta, const LatticePoint& lambda, int k, HalfInteger m,
                        DnOddCosineScale scale = DnOddCosineScale::Simplified);

/// Forward steps in x_1 > ... > x_n > x_1 - m: k! sum_{sum t = 0} det |1/(m t_i + lambda_j - eta_i)!|,
/// exact. Zero unless sum(lambda - eta) = k.
BigCount tan_forward_count(const LatticePoint& eta, const LatticePoint& lambda, int k, int m);

/// Coordinate-step particles on a circle of size m.
RealExpPoly circle_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m);

/// Diagonal-step particles (all move +-1/2 at once) on a circle of size m.
double circle_diag_count(const LatticePoint& eta, const LatticePoint& lambda, int k, int m);

/// Coordinate-step walks on the hyperplane sum x_i = 0: sums the circle
/// formula over the m translates lambda + c(1, ..., 1), 0 <= c < m.
RealExpPoly tan_hyperplane_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m);

/// Diagonal-step analogue of tan_hyperplane_coord_expoly for a fixed k.
double tan_hyperplane_diag_count(const LatticePoint& eta, const LatticePoint& lambda, int k, int m);

/// Nearest integer; throws ConsistencyError when farther than 1e-4 from it.
BigCount round_count(double value);

inline constexpr double rounding_tolerance = 1e-4;
inline constexpr double imaginary_tolerance = 1e-9;

/// Closed-form value for an alcove instance, or nullopt when no formula
/// covers the (family, steps) combination.
std::optional<double> closed_form_alcove(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                                         const LatticePoint& lambda, int k,
                                         DnOddCosineScale scale = DnOddCosineScale::Simplified);

/// Closed-form value for a labeled circle instance.
std::optional<double> closed_form_circle(HalfInteger m, const StepSet& steps, const LatticePoint& eta,
                                         const LatticePoint& lambda, int k);

/// Values for k = 0..k_max; coordinate-step generating functions are built once.
std::optional<std::vector<double>> closed_form_alcove_series(const ChamberSpec& chamber, const StepSet& steps,
                                                            const LatticePoint& eta, const LatticePoint& lambda,
                                                            int k_max,
                                                            DnOddCosineScale scale = DnOddCosineScale::Simplified);

std::optional<std::vector<double>> closed_form_circle_series(HalfInteger m, const StepSet& steps,
                                                             const LatticePoint& eta, const LatticePoint& lambda,
                                                             int k_max);

} // namespace alcove

#endif
