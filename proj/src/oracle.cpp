#include "alcove/oracle.hpp"

#include "alcove/weyl_core.hpp"

namespace alcove::oracle {

namespace {

void check_inputs(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta, int k) {
  chamber.validate();
  if (eta.n() != chamber.n || steps.n() != chamber.n)
    throw InvalidInput("dimension mismatch between chamber, step set and start");
  if (k < 0)
    throw InvalidInput("step count must be nonnegative");
  if (!in_interior(eta, chamber))
    throw PreconditionError("start " + eta.to_string() + " is not interior");
}

std::int64_t wrap(std::int64_t x, std::int64_t period) {
  const auto r = x % period;
  return r < 0 ? r + period : r;
}

bool distinct(const Coords& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = i + 1; j < x.size(); ++j)
      if (x[i] == x[j])
        return false;
  return true;
}

} // namespace

std::vector<Distribution> dp_distributions(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                                           int k_max, std::size_t state_cap) {
  check_inputs(chamber, steps, eta, k_max);
  std::vector<Distribution> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  Distribution current;
  current.emplace(eta.doubled(), BigCount(1));
  out.push_back(current);
  Coords next_point(chamber.n);
  for (int j = 1; j <= k_max; ++j) {
    Distribution next;
    for (const auto& [point, count] : current) {
      for (const auto& s : steps.steps()) {
        next_point = point + s;
        if (!in_interior(next_point, chamber))
          continue;
        next[next_point] += count;
      }
    }
    if (next.size() > state_cap)
      throw ResourceError("walk DP exceeded the state cap");
    current = std::move(next);
    out.push_back(current);
  }
  return out;
}

BigCount dp_count(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                  const LatticePoint& lambda, int k, std::size_t state_cap) {
  check_inputs(chamber, steps, eta, k);
  if (lambda.n() != chamber.n)
    throw InvalidInput("dimension mismatch for the end point");
  if (!in_interior(lambda, chamber))
    throw PreconditionError("end " + lambda.to_string() + " is not interior");
  const auto dist = dp_distributions(chamber, steps, eta, k, state_cap);
  const auto it = dist.back().find(lambda.doubled());
  return it == dist.back().end() ? BigCount(0) : it->second;
}

BigCount exhaustive_count(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                          const LatticePoint& lambda, int k, std::size_t sequence_cap) {
  check_inputs(chamber, steps, eta, k);
  if (lambda.n() != chamber.n)
    throw InvalidInput("dimension mismatch for the end point");
  double sequences = 1;
  for (int j = 0; j < k; ++j)
    sequences *= static_cast<double>(steps.size());
  if (sequences > static_cast<double>(sequence_cap))
    throw ResourceError("too many step sequences to enumerate");

  const auto& all = steps.steps();
  const std::size_t width = all.size();
  std::vector<std::size_t> choice(static_cast<std::size_t>(k), 0);
  BigCount total = 0;
  Coords x(chamber.n);
  // Odometer over all width^k sequences.
  while (true) {
    x = eta.doubled();
    bool inside = true;
    for (int j = 0; j < k && inside; ++j) {
      x += all[choice[static_cast<std::size_t>(j)]];
      inside = in_interior(x, chamber);
    }
    if (inside && x == lambda.doubled())
      ++total;
    int j = k - 1;
    while (j >= 0 && choice[static_cast<std::size_t>(j)] + 1 == width) {
      choice[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0)
      break;
    ++choice[static_cast<std::size_t>(j)];
  }
  return total;
}

Coords reduce_on_circle(const Coords& doubled, HalfInteger m) {
  Coords out(doubled.size());
  for (Eigen::Index i = 0; i < doubled.size(); ++i)
    out[i] = wrap(doubled[i], m.doubled());
  return out;
}

std::vector<Distribution> circle_dp_distributions(HalfInteger m, const StepSet& steps, const LatticePoint& eta,
                                                  int k_max, std::size_t state_cap) {
  if (!m.is_integer() || m.doubled() <= 0)
    throw PreconditionError("circle size must be a positive integer");
  if (steps.n() != eta.n())
    throw InvalidInput("dimension mismatch between step set and start");
  if (k_max < 0)
    throw InvalidInput("step count must be nonnegative");
  const Coords start = reduce_on_circle(eta.doubled(), m);
  if (!distinct(start))
    throw PreconditionError("start configuration has colliding particles");

  const std::int64_t period = m.doubled();
  std::vector<Distribution> out;
  Distribution current;
  current.emplace(start, BigCount(1));
  out.push_back(current);
  Coords y(eta.n());
  for (int j = 1; j <= k_max; ++j) {
    Distribution next;
    for (const auto& [x, count] : current) {
      for (const auto& s : steps.steps()) {
        for (Eigen::Index i = 0; i < x.size(); ++i)
          y[i] = wrap(x[i] + s[i], period);
        if (!distinct(y))
          continue;
        next[y] += count;
      }
    }
    if (next.size() > state_cap)
      throw ResourceError("circle DP exceeded the state cap");
    current = std::move(next);
    out.push_back(current);
  }
  return out;
}

BigCount circle_dp_count(HalfInteger m, int n, const StepSet& steps, const LatticePoint& eta,
                         const LatticePoint& lambda, int k, std::size_t state_cap) {
  if (eta.n() != n || lambda.n() != n)
    throw InvalidInput("particle count does not match the configurations");
  if (!m.is_integer() || m.doubled() <= 0)
    throw PreconditionError("circle size must be a positive integer");
  const Coords target = reduce_on_circle(lambda.doubled(), m);
  if (!distinct(target))
    throw PreconditionError("end configuration has colliding particles");
  const auto dist = circle_dp_distributions(m, steps, eta, k, state_cap);
  const auto it = dist.back().find(target);
  return it == dist.back().end() ? BigCount(0) : it->second;
}

} // namespace alcove::oracle
