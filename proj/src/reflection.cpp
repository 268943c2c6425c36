#include "alcove/reflection.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace alcove {

namespace {

struct CoordsHash {
  std::size_t operator()(const Coords& c) const noexcept {
    std::size_t h = static_cast<std::size_t>(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i)
      h ^= static_cast<std::size_t>(c[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct CoordsEq {
  bool operator()(const Coords& a, const Coords& b) const noexcept { return a == b; }
};

class FreeCountCache {
public:
  FreeCountCache(const StepSet& steps, int k) : steps_(steps), k_(k) {}

  const BigCount& operator()(const Coords& gamma) {
    auto it = table_.find(gamma);
    if (it == table_.end())
      it = table_.emplace(gamma, free_count(steps_, gamma, k_)).first;
    return it->second;
  }

private:
  const StepSet& steps_;
  int k_;
  std::unordered_map<Coords, BigCount, CoordsHash, CoordsEq> table_;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t mod(std::int64_t a, std::int64_t b) { return a - b * floor_div(a, b); }

} // namespace

namespace {

void check_alcove_inputs(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                         const LatticePoint& lambda, int k) {
  chamber.validate();
  if (eta.n() != chamber.n || lambda.n() != chamber.n || steps.n() != chamber.n)
    throw InvalidInput("dimension mismatch between chamber, step set and endpoints");
  if (k < 0)
    throw InvalidInput("step count must be nonnegative");
  if (!on_step_lattice(eta, steps) || !on_step_lattice(lambda, steps))
    throw PreconditionError("endpoints are not on the lattice of the step set");
  if (const auto report = is_reflectable(steps, chamber, &eta); !report)
    throw PreconditionError("walk is not reflectable: " + report.diagnostic);
  if (!in_interior(eta, chamber))
    throw PreconditionError("start " + eta.to_string() + " is not interior");
  if (!in_interior(lambda, chamber))
    throw PreconditionError("end " + lambda.to_string() + " is not interior");
}

} // namespace

BigCount count_alcove(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                      const LatticePoint& lambda, int k) {
  check_alcove_inputs(chamber, steps, eta, lambda, k);

  FreeCountCache free(steps, k);
  BigCount total = 0;
  Coords gamma(chamber.n);
  for_each_element(chamber, steps, eta, lambda, k, [&](const SignedGroupElement& w, const Coords& image) {
    gamma = image - eta.doubled();
    const auto& c = free(gamma);
    if (c == 0)
      return;
    if (w.sign > 0)
      total += c;
    else
      total -= c;
  });
  if (total < 0)
    throw ConsistencyError("signed reflection sum is negative");
  return total;
}

std::vector<BigCount> count_alcove_series(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                                          const LatticePoint& lambda, int k_max) {
  check_alcove_inputs(chamber, steps, eta, lambda, k_max);

  const auto size = static_cast<std::size_t>(k_max) + 1;
  std::vector<BigCount> totals(size);
  std::vector<BigCount> c(size);
  Coords gamma(chamber.n);
  for_each_element(chamber, steps, eta, lambda, k_max, [&](const SignedGroupElement& w, const Coords& image) {
    gamma = image - eta.doubled();
    for (std::size_t k = 0; k < size; ++k) {
      c[k] = free_count(steps, gamma, static_cast<int>(k));
      if (w.sign > 0)
        totals[k] += c[k];
      else
        totals[k] -= c[k];
    }
  });
  for (const auto& t : totals)
    if (t < 0)
      throw ConsistencyError("signed reflection sum is negative");
  return totals;
}

CircleEndpoints canonical_circle_endpoints(HalfInteger m, const StepSet& steps, const LatticePoint& eta,
                                           const LatticePoint& lambda) {
  if (!m.is_integer() || m.doubled() <= 0)
    throw PreconditionError("circle size must be a positive integer");
  const int n = eta.n();
  if (lambda.n() != n || steps.n() != n || n < 1)
    throw InvalidInput("dimension mismatch between step set and circle configurations");
  if (!on_step_lattice(eta, steps) || !on_step_lattice(lambda, steps))
    throw PreconditionError("circle positions are not on the lattice of the step set");

  const std::int64_t M = m.doubled();
  CircleEndpoints out;
  out.circle_doubled = M;
  Coords e(n), l(n);
  for (int i = 0; i < n; ++i) {
    e[i] = mod(eta.doubled(i), M);
    l[i] = mod(lambda.doubled(i), M);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (e[i] == e[j])
        throw PreconditionError("start configuration has colliding particles");
      if (l[i] == l[j])
        throw PreconditionError("end configuration has colliding particles");
    }
  // Relabel particles so the start positions decrease.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return e[a] > e[b]; });
  out.eta.resize(n);
  out.lambda.resize(n);
  for (int i = 0; i < n; ++i) {
    out.eta[i] = e[order[i]];
    out.lambda[i] = l[order[i]];
  }
  Eigen::Index smallest = 0;
  out.lambda.minCoeff(&smallest);
  out.s = static_cast<int>(smallest) + 1;
  return out;
}

BigCount count_circle(HalfInteger m, int n, const StepSet& steps, const LatticePoint& eta,
                      const LatticePoint& lambda, int k) {
  if (eta.n() != n)
    throw InvalidInput("particle count does not match the configurations");
  if (k < 0)
    throw InvalidInput("step count must be nonnegative");
  const auto ends = canonical_circle_endpoints(m, steps, eta, lambda);
  const std::int64_t M = ends.circle_doubled;
  const std::int64_t reach = static_cast<std::int64_t>(k) * steps.max_doubled_magnitude();

  FreeCountCache free(steps, k);
  BigCount total = 0;
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  Coords t(n), gamma(n);
  std::vector<std::int64_t> lo(n), hi(n);
  do {
    const int sign = permutation_sign(sigma);
    bool empty = false;
    for (int i = 0; i < n; ++i) {
      const std::int64_t base = ends.lambda[sigma[i]] - ends.eta[i];
      lo[i] = ceil_div(-reach - base, M);
      hi[i] = floor_div(reach - base, M);
      empty = empty || lo[i] > hi[i];
    }
    if (empty)
      continue;
    for (int i = 0; i < n; ++i)
      t[i] = lo[i];
    while (true) {
      if (mod(t.sum() - ends.s, n) == 0) {
        for (int i = 0; i < n; ++i)
          gamma[i] = M * t[i] + ends.lambda[sigma[i]] - ends.eta[i];
        const auto& c = free(gamma);
        if (c != 0) {
          if (sign > 0)
            total += c;
          else
            total -= c;
        }
      }
      int i = n - 1;
      while (i >= 0 && t[i] == hi[i]) {
        t[i] = lo[i];
        --i;
      }
      if (i < 0)
        break;
      ++t[i];
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  if (total < 0)
    throw ConsistencyError("signed circle sum is negative");
  return total;
}

std::optional<LatticePoint> lift_forward_endpoint(HalfInteger m, const LatticePoint& eta,
                                                  const LatticePoint& lambda_on_circle, int k) {
  if (!m.is_integer() || m.doubled() <= 0)
    throw PreconditionError("circle size must be a positive integer");
  const int n = eta.n();
  if (lambda_on_circle.n() != n)
    throw InvalidInput("dimension mismatch");
  const ChamberSpec window{Family::AffineA, n, m};
  if (!in_interior(eta, window))
    throw PreconditionError("start must be strictly decreasing within a window of length m");
  const std::int64_t M = m.doubled();
  Coords l(n);
  for (int i = 0; i < n; ++i)
    l[i] = mod(lambda_on_circle.doubled(i), M);
  Eigen::Index smallest = 0;
  l.minCoeff(&smallest);
  const int s = static_cast<int>(smallest) + 1;
  // Particles 1..s wind T times, the rest T - 1 times.
  const std::int64_t target = eta.doubled().sum() + 2 * static_cast<std::int64_t>(k);
  const std::int64_t rest = target - l.sum() + static_cast<std::int64_t>(n - s) * M;
  if (rest % (static_cast<std::int64_t>(n) * M) != 0)
    return std::nullopt;
  const std::int64_t T = rest / (static_cast<std::int64_t>(n) * M);
  Coords y(n);
  for (int i = 0; i < n; ++i)
    y[i] = l[i] + M * (i < s ? T : T - 1);
  LatticePoint lifted(std::move(y));
  if (!in_interior(lifted, window))
    return std::nullopt;
  return lifted;
}

BigCount bareiss_determinant(std::vector<BigCount> a, int n) {
  if (n == 0)
    return 1;
  auto at = [&](int i, int j) -> BigCount& { return a[static_cast<std::size_t>(i * n + j)]; };
  int sign = 1;
  BigCount prev = 1;
  for (int p = 0; p < n - 1; ++p) {
    if (at(p, p) == 0) {
      int swap = -1;
      for (int r = p + 1; r < n; ++r)
        if (at(r, p) != 0) {
          swap = r;
          break;
        }
      if (swap < 0)
        return 0;
      for (int j = 0; j < n; ++j)
        std::swap(at(p, j), at(swap, j));
      sign = -sign;
    }
    for (int i = p + 1; i < n; ++i) {
      for (int j = p + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(p, p) - at(i, p) * at(p, j)) / prev;
      at(i, p) = 0;
    }
    prev = at(p, p);
  }
  return sign * at(n - 1, n - 1);
}

BigCount km_determinant(const LatticePoint& eta, const LatticePoint& lambda, int k, const OneDimCounter& counter) {
  const int n = eta.n();
  if (lambda.n() != n)
    throw InvalidInput("dimension mismatch");
  for (int i = 0; i + 1 < n; ++i)
    if (!(eta.doubled(i) > eta.doubled(i + 1)) || !(lambda.doubled(i) > lambda.doubled(i + 1)))
      throw PreconditionError("endpoints must be strictly decreasing");
  std::vector<BigCount> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(i * n + j)] = counter(eta[i], lambda[j], k);
  return bareiss_determinant(std::move(a), n);
}

} // namespace alcove
