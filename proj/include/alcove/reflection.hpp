#ifndef ALCOVE_REFLECTION_HPP
#define ALCOVE_REFLECTION_HPP

// Exact constrained counts by signed sums over the affine group (alcoves),
// over permutations and winding vectors (labeled particles on a circle),
// and the non-colliding determinant for the finite symmetric group.

#include <functional>
#include <optional>

#include "alcove/free_counts.hpp"
#include "alcove/weyl_core.hpp"

namespace alcove {

/// Number of k-step walks eta -> lambda that stay strictly inside the chamber:
/// sum over group elements w of sgn(w) * c(w(lambda) - eta, k).
BigCount count_alcove(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                      const LatticePoint& lambda, int k);

/// count_alcove for every k = 0..k_max, enumerating the group only once.
std::vector<BigCount> count_alcove_series(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                                          const LatticePoint& lambda, int k_max);

/// Labeled particles on a circle of integer size m, relabeled so that eta is
/// strictly decreasing inside [0, m) and lambda reduced into [0, m).
struct CircleEndpoints {
  Coords eta;     // doubled
  Coords lambda;  // doubled, same relabeling as eta
  int s = 0;      // 1-based index of the smallest coordinate of lambda
  std::int64_t circle_doubled = 0;
};

/// Throws PreconditionError on collisions, a non-integer circle size, or
/// positions off the step lattice.
CircleEndpoints canonical_circle_endpoints(HalfInteger m, const StepSet& steps, const LatticePoint& eta,
                                           const LatticePoint& lambda);

/// k-step evolutions where particle i moves eta_i -> lambda_i on the circle
/// of size m without two particles ever occupying the same point.
BigCount count_circle(HalfInteger m, int n, const StepSet& steps, const LatticePoint& eta,
                      const LatticePoint& lambda, int k);

/// For forward steps: the point of R^n over the circle configuration
/// `lambda_on_circle` that a k-step walk from eta (decreasing within a window
/// of length m) must end at, if any.
std::optional<LatticePoint> lift_forward_endpoint(HalfInteger m, const LatticePoint& eta,
                                                  const LatticePoint& lambda_on_circle, int k);

using OneDimCounter = std::function<BigCount(HalfInteger from, HalfInteger to, int k)>;

/// det |counter(eta_i, lambda_j, k)| by fraction-free elimination.
BigCount km_determinant(const LatticePoint& eta, const LatticePoint& lambda, int k, const OneDimCounter& counter);

/// Exact determinant of an integer matrix (Bareiss elimination), row-major n x n.
BigCount bareiss_determinant(std::vector<BigCount> a, int n);

} // namespace alcove

#endif
