#ifndef ALCOVE_ORACLE_HPP
#define ALCOVE_ORACLE_HPP

// Brute-force ground truth. Nothing here touches the group enumeration or
// the unconstrained counters: walks are stepped one at a time and checked
// against the chamber (or circle) directly.

#include <unordered_map>
#include <vector>

#include "alcove/lattice.hpp"

namespace alcove::oracle {

inline constexpr std::size_t default_state_cap = 10'000'000;
inline constexpr std::size_t default_sequence_cap = 10'000'000;

struct PointHash {
  std::size_t operator()(const Coords& c) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      h ^= static_cast<std::size_t>(c[i]);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

struct PointEq {
  bool operator()(const Coords& a, const Coords& b) const noexcept { return a.size() == b.size() && a == b; }
};

using Distribution = std::unordered_map<Coords, BigCount, PointHash, PointEq>;

/// distributions[j] maps each interior point to the number of j-step
/// confined walks from eta ending there, for j = 0..k_max.
std::vector<Distribution> dp_distributions(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                                           int k_max, std::size_t state_cap = default_state_cap);

BigCount dp_count(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                  const LatticePoint& lambda, int k, std::size_t state_cap = default_state_cap);

/// Tries every step sequence; for tiny k only.
BigCount exhaustive_count(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                          const LatticePoint& lambda, int k, std::size_t sequence_cap = default_sequence_cap);

/// Labeled particles on a circle of integer size m. Keys are doubled
/// positions reduced into [0, 2m).
std::vector<Distribution> circle_dp_distributions(HalfInteger m, const StepSet& steps, const LatticePoint& eta,
                                                  int k_max, std::size_t state_cap = default_state_cap);

BigCount circle_dp_count(HalfInteger m, int n, const StepSet& steps, const LatticePoint& eta,
                         const LatticePoint& lambda, int k, std::size_t state_cap = default_state_cap);

/// Reduces doubled circle positions into [0, 2m).
Coords reduce_on_circle(const Coords& doubled, HalfInteger m);

} // namespace alcove::oracle

#endif
