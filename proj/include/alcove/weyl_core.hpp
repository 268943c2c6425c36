#ifndef ALCOVE_WEYL_CORE_HPP
#define ALCOVE_WEYL_CORE_HPP

// Alcove geometry: interior predicates, the affine group acting by signed
// permutations plus translations, and the reflectability test for a
// (step set, chamber) pair.

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "alcove/lattice.hpp"

namespace alcove {

/// w(x)_i = epsilon_i * x_{sigma(i)} + T * t_i, with T the chamber's translation unit.
struct SignedGroupElement {
  std::vector<int> sigma;   // 0-based permutation
  Eigen::VectorXi epsilon;  // entries +1 / -1
  Coords t;                 // translation multipliers
  int sign = 1;

  static SignedGroupElement identity(int n);
};

/// Sign of a 0-based permutation.
int permutation_sign(const std::vector<int>& sigma);

/// Whether the element belongs to the chamber's affine group.
bool is_valid_element(const SignedGroupElement& element, const ChamberSpec& chamber);

/// sgn(sigma) * prod(epsilon).
int element_sign(const SignedGroupElement& element);

LatticePoint apply(const SignedGroupElement& element, const LatticePoint& point, const ChamberSpec& chamber);

/// Group product: (a * b)(x) = a(b(x)).
SignedGroupElement compose(const SignedGroupElement& a, const SignedGroupElement& b, const ChamberSpec& chamber);

bool in_interior(const LatticePoint& point, const ChamberSpec& chamber);
/// Same predicate on raw doubled coordinates; the caller guarantees the size.
bool in_interior(const Coords& doubled, const ChamberSpec& chamber);

/// Per-coordinate translation bound used by the element enumeration.
std::vector<std::int64_t> translation_bounds(const ChamberSpec& chamber, const StepSet& steps,
                                             const LatticePoint& eta, const LatticePoint& lambda, int k);

namespace detail {

inline bool next_box_vector(Coords& t, const std::vector<std::int64_t>& bound, int len) {
  for (int i = len - 1; i >= 0; --i) {
    if (t[i] < bound[i]) {
      ++t[i];
      return true;
    }
    t[i] = -bound[i];
  }
  return false;
}

} // namespace detail

/// Calls fn(element, image) for every group element w whose image w(lambda)
/// lies within k steps of eta, i.e. max_i |w(lambda)_i - eta_i| <= k * s_max.
/// Order is lexicographic in (t, epsilon, sigma). `image` is w(lambda) in
/// doubled coordinates.
template <class Fn>
void for_each_element(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                      const LatticePoint& lambda, int k, Fn&& fn) {
  chamber.validate();
  const int n = chamber.n;
  if (eta.n() != n || lambda.n() != n || steps.n() != n)
    throw InvalidInput("dimension mismatch between chamber, step set and endpoints");
  if (k < 0)
    throw InvalidInput("step count must be nonnegative");

  const std::int64_t reach = static_cast<std::int64_t>(k) * steps.max_doubled_magnitude();
  const std::int64_t unit = chamber.translation_doubled();
  const bool signed_family = chamber.family == Family::AffineB || chamber.family == Family::AffineC ||
                             chamber.family == Family::AffineD;
  const bool translations = chamber.family != Family::FiniteA;

  std::vector<std::int64_t> bound = translations ? translation_bounds(chamber, steps, eta, lambda, k)
                                                 : std::vector<std::int64_t>(n, 0);
  // A: the last multiplier is fixed by sum(t) = 0.
  const int free_len = chamber.family == Family::AffineA ? n - 1 : n;

  SignedGroupElement w;
  w.sigma.resize(n);
  w.epsilon = Eigen::VectorXi::Ones(n);
  w.t = Coords::Zero(n);
  Coords image(n);

  const auto& L = lambda.doubled();
  const auto& H = eta.doubled();

  for (int i = 0; i < free_len; ++i)
    w.t[i] = -bound[i];
  bool more_t = true;
  while (more_t) {
    bool t_ok = true;
    if (chamber.family == Family::AffineA) {
      std::int64_t s = 0;
      for (int i = 0; i < n - 1; ++i)
        s += w.t[i];
      w.t[n - 1] = -s;
      t_ok = std::abs(w.t[n - 1]) <= bound[n - 1];
    } else if (chamber.family == Family::AffineB || chamber.family == Family::AffineD) {
      t_ok = w.t.sum() % 2 == 0;
    }
    if (t_ok) {
      const std::uint32_t eps_count = signed_family ? (1u << n) : 1u;
      for (std::uint32_t mask = 0; mask < eps_count; ++mask) {
        int eps_prod = 1;
        for (int i = 0; i < n; ++i) {
          w.epsilon[i] = (mask >> (n - 1 - i)) & 1u ? -1 : 1;
          eps_prod *= w.epsilon[i];
        }
        if (chamber.family == Family::AffineD && eps_prod != 1)
          continue;
        std::iota(w.sigma.begin(), w.sigma.end(), 0);
        do {
          bool near = true;
          for (int i = 0; i < n && near; ++i) {
            image[i] = w.epsilon[i] * L[w.sigma[i]] + unit * w.t[i];
            near = std::abs(image[i] - H[i]) <= reach;
          }
          if (near) {
            w.sign = permutation_sign(w.sigma) * eps_prod;
            fn(static_cast<const SignedGroupElement&>(w), static_cast<const Coords&>(image));
          }
        } while (std::next_permutation(w.sigma.begin(), w.sigma.end()));
      }
    }
    more_t = free_len > 0 && detail::next_box_vector(w.t, bound, free_len);
  }
}

std::vector<SignedGroupElement> enumerate_elements(const ChamberSpec& chamber, const StepSet& steps,
                                                   const LatticePoint& eta, const LatticePoint& lambda, int k);

struct ReflectabilityReport {
  bool reflectable = false;
  std::string diagnostic;  // names the failing root when not reflectable
  explicit operator bool() const { return reflectable; }
};

/// Checks the simple-root condition for every wall of the chamber. When
/// `start` is given, lattice conditions use the coset reachable from it;
/// otherwise the step set's natural lattice.
ReflectabilityReport is_reflectable(const StepSet& steps, const ChamberSpec& chamber,
                                    const LatticePoint* start = nullptr);

/// Whether `point` lies on the lattice walked by `steps` (integers, or a
/// uniform integer/half-odd class for diagonals).
bool on_step_lattice(const LatticePoint& point, const StepSet& steps);

/// Interior lattice points with every doubled coordinate in [lo, hi].
std::vector<LatticePoint> interior_points(const ChamberSpec& chamber, const StepSet& steps, std::int64_t lo_doubled,
                                          std::int64_t hi_doubled);

/// Bounding box (doubled) that contains the whole interior of a bounded
/// chamber; throws for the unbounded A and finite families.
std::pair<std::int64_t, std::int64_t> interior_box(const ChamberSpec& chamber);

} // namespace alcove

#endif
