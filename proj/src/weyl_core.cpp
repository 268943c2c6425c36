#include "alcove/weyl_core.hpp"

#include <numeric>
#include <sstream>

namespace alcove {

SignedGroupElement SignedGroupElement::identity(int n) {
  SignedGroupElement e;
  e.sigma.resize(n);
  std::iota(e.sigma.begin(), e.sigma.end(), 0);
  e.epsilon = Eigen::VectorXi::Ones(n);
  e.t = Coords::Zero(n);
  e.sign = 1;
  return e;
}

int permutation_sign(const std::vector<int>& sigma) {
  int inversions = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      inversions += sigma[i] > sigma[j];
  return inversions % 2 ? -1 : 1;
}

int element_sign(const SignedGroupElement& element) {
  int s = permutation_sign(element.sigma);
  for (Eigen::Index i = 0; i < element.epsilon.size(); ++i)
    s *= element.epsilon[i];
  return s;
}

bool is_valid_element(const SignedGroupElement& element, const ChamberSpec& chamber) {
  const int n = chamber.n;
  if (static_cast<int>(element.sigma.size()) != n || element.epsilon.size() != n || element.t.size() != n)
    return false;
  std::vector<int> seen(n, 0);
  for (int s : element.sigma) {
    if (s < 0 || s >= n || seen[s]++)
      return false;
  }
  if (!(element.epsilon.array().abs() == 1).all())
    return false;
  const auto tsum = element.t.sum();
  const auto eps_prod = element.epsilon.prod();
  switch (chamber.family) {
  case Family::AffineC:
    return true;
  case Family::AffineB:
    return tsum % 2 == 0;
  case Family::AffineD:
    return tsum % 2 == 0 && eps_prod == 1;
  case Family::AffineA:
    return (element.epsilon.array() == 1).all() && tsum == 0;
  case Family::FiniteA:
    return (element.epsilon.array() == 1).all() && (element.t.array() == 0).all();
  }
  return false;
}

LatticePoint apply(const SignedGroupElement& element, const LatticePoint& point, const ChamberSpec& chamber) {
  const int n = chamber.n;
  if (point.n() != n || static_cast<int>(element.sigma.size()) != n || element.epsilon.size() != n ||
      element.t.size() != n)
    throw InvalidInput("dimension mismatch in group action");
  if (!is_valid_element(element, chamber))
    throw InvalidInput("element does not belong to the " + std::string(to_string(chamber.family)) + " group");
  const auto unit = chamber.translation_doubled();
  Coords out(n);
  for (int i = 0; i < n; ++i)
    out[i] = element.epsilon[i] * point.doubled(element.sigma[i]) + unit * element.t[i];
  return LatticePoint(std::move(out));
}

SignedGroupElement compose(const SignedGroupElement& a, const SignedGroupElement& b, const ChamberSpec& chamber) {
  const int n = chamber.n;
  SignedGroupElement c;
  c.sigma.resize(n);
  c.epsilon.resize(n);
  c.t.resize(n);
  for (int i = 0; i < n; ++i) {
    const int j = a.sigma[i];
    c.sigma[i] = b.sigma[j];
    c.epsilon[i] = a.epsilon[i] * b.epsilon[j];
    c.t[i] = a.epsilon[i] * b.t[j] + a.t[i];
  }
  c.sign = element_sign(c);
  return c;
}

bool in_interior(const Coords& x, const ChamberSpec& chamber) {
  const int n = chamber.n;
  const std::int64_t M = chamber.m.doubled();
  for (int i = 0; i + 1 < n; ++i)
    if (!(x[i] > x[i + 1]))
      return false;
  switch (chamber.family) {
  case Family::FiniteA:
    return true;
  case Family::AffineA:
    return n < 2 || x[n - 1] > x[0] - M;
  case Family::AffineC:
    return x[0] < M && x[n - 1] > 0;
  case Family::AffineB:
    if (x[n - 1] <= 0)
      return false;
    return n == 1 ? x[0] < 2 * M : x[0] + x[1] < 2 * M;
  case Family::AffineD:
    if (n < 2 || !(x[n - 2] > -x[n - 1]) || !(x[0] + x[1] < 2 * M))
      return false;
    // For n = 2 the walls x1 - x2 = 2m are not implied by the others.
    return n > 2 || x[0] - x[1] < 2 * M;
  }
  return false;
}

bool in_interior(const LatticePoint& point, const ChamberSpec& chamber) {
  if (point.n() != chamber.n)
    throw InvalidInput("dimension mismatch between point and chamber");
  return in_interior(point.doubled(), chamber);
}

std::vector<std::int64_t> translation_bounds(const ChamberSpec& chamber, const StepSet& steps,
                                             const LatticePoint& eta, const LatticePoint& lambda, int k) {
  const auto unit = chamber.translation_doubled();
  const int n = chamber.n;
  std::vector<std::int64_t> bound(n, 0);
  if (unit == 0)
    return bound;
  const std::int64_t reach = static_cast<std::int64_t>(k) * steps.max_doubled_magnitude();
  const std::int64_t lam_max = lambda.doubled().cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i) {
    const std::int64_t num = reach + std::abs(eta.doubled(i)) + lam_max;
    bound[i] = (num + unit - 1) / unit + 1;
  }
  return bound;
}

std::vector<SignedGroupElement> enumerate_elements(const ChamberSpec& chamber, const StepSet& steps,
                                                   const LatticePoint& eta, const LatticePoint& lambda, int k) {
  std::vector<SignedGroupElement> out;
  for_each_element(chamber, steps, eta, lambda, k,
                   [&](const SignedGroupElement& w, const Coords&) { out.push_back(w); });
  return out;
}

namespace {

struct Wall {
  Eigen::VectorXi alpha;
  bool affine = false;
  std::int64_t level_doubled = 0;
  std::string name;
};

Eigen::VectorXi unit_vector(int n, int i) {
  Eigen::VectorXi v = Eigen::VectorXi::Zero(n);
  v[i] = 1;
  return v;
}

std::string root_name(const Eigen::VectorXi& alpha) {
  std::ostringstream os;
  bool first = true;
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0)
      continue;
    if (alpha[i] < 0)
      os << '-';
    else if (!first)
      os << '+';
    if (std::abs(alpha[i]) != 1)
      os << std::abs(alpha[i]);
    os << 'e' << (i + 1);
    first = false;
  }
  return os.str();
}

std::vector<Wall> walls_of(const ChamberSpec& chamber) {
  const int n = chamber.n;
  const auto M = chamber.m.doubled();
  std::vector<Wall> walls;
  auto linear = [&](Eigen::VectorXi a) { walls.push_back({a, false, 0, root_name(a)}); };
  auto affine = [&](Eigen::VectorXi a, std::int64_t level) {
    walls.push_back({a, true, level, root_name(a) + "=" + HalfInteger::from_doubled(level).to_string()});
  };
  for (int i = 0; i + 1 < n; ++i)
    linear(unit_vector(n, i) - unit_vector(n, i + 1));
  switch (chamber.family) {
  case Family::FiniteA:
    break;
  case Family::AffineA:
    if (n >= 2)
      affine(unit_vector(n, 0) - unit_vector(n, n - 1), M);
    break;
  case Family::AffineC:
    linear(unit_vector(n, n - 1));
    affine(unit_vector(n, 0), M);
    break;
  case Family::AffineB:
    linear(unit_vector(n, n - 1));
    if (n >= 2)
      affine(unit_vector(n, 0) + unit_vector(n, 1), 2 * M);
    else
      affine(unit_vector(n, 0), 2 * M);
    break;
  case Family::AffineD:
    linear(unit_vector(n, n - 2) + unit_vector(n, n - 1));
    affine(unit_vector(n, 0) + unit_vector(n, 1), 2 * M);
    if (n == 2)
      affine(unit_vector(n, 0) - unit_vector(n, 1), 2 * M);
    break;
  }
  return walls;
}

std::int64_t gcd_all(std::int64_t g, std::int64_t v) { return std::gcd(g, v < 0 ? -v : v); }

} // namespace

ReflectabilityReport is_reflectable(const StepSet& steps, const ChamberSpec& chamber, const LatticePoint* start) {
  ReflectabilityReport report;
  try {
    chamber.validate();
  } catch (const InvalidInput& e) {
    report.diagnostic = e.what();
    return report;
  }
  if (steps.n() != chamber.n) {
    report.diagnostic = "step set dimension differs from chamber rank";
    return report;
  }
  const bool signed_group = chamber.family == Family::AffineB || chamber.family == Family::AffineC ||
                            chamber.family == Family::AffineD;
  if (signed_group && steps.kind() == StepKind::Forward) {
    report.diagnostic = "step set is not symmetric under sign changes of the finite Weyl group of type " +
                        std::string(chamber.family == Family::AffineB   ? "B"
                                    : chamber.family == Family::AffineC ? "C"
                                                                        : "D");
    return report;
  }
  if (start && start->n() != chamber.n) {
    report.diagnostic = "start point dimension differs from chamber rank";
    return report;
  }

  for (const auto& wall : walls_of(chamber)) {
    const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> alpha = wall.alpha.cast<std::int64_t>();
    std::int64_t K = 0;
    for (const auto& s : steps.steps())
      K = std::max(K, std::abs(alpha.dot(s)));
    if (K == 0)
      continue;
    for (const auto& s : steps.steps()) {
      const auto p = std::abs(alpha.dot(s));
      if (p != 0 && p != K) {
        report.diagnostic = "root " + wall.name + ": step inner products are not in {0, +-k}";
        return report;
      }
    }
    // Values of (alpha, x) over the lattice, as offset + generator * Z.
    std::int64_t offset = 0;
    std::int64_t gen = 0;
    if (start) {
      offset = alpha.dot(start->doubled());
      for (const auto& s : steps.steps())
        gen = gcd_all(gen, alpha.dot(s));
    } else {
      for (Eigen::Index i = 0; i < alpha.size(); ++i)
        gen = gcd_all(gen, 2 * alpha[i]);
      if (steps.allows_half_lattice())
        gen = gcd_all(gen, alpha.sum());
    }
    if (gen % K != 0 || offset % K != 0) {
      report.diagnostic = "root " + wall.name + ": lattice values are not multiples of the step increment";
      return report;
    }
    if (wall.affine && wall.level_doubled % K != 0) {
      report.diagnostic = "root " + wall.name + ": wall level is not a multiple of the step increment";
      return report;
    }
  }
  report.reflectable = true;
  return report;
}

bool on_step_lattice(const LatticePoint& point, const StepSet& steps) {
  return steps.allows_half_lattice() ? point.uniform_parity() : point.all_integer();
}

std::vector<LatticePoint> interior_points(const ChamberSpec& chamber, const StepSet& steps, std::int64_t lo,
                                          std::int64_t hi) {
  const int n = chamber.n;
  std::vector<LatticePoint> out;
  if (hi < lo)
    return out;
  Coords x = Coords::Constant(n, lo);
  while (true) {
    if (in_interior(x, chamber)) {
      LatticePoint p(x);
      if (on_step_lattice(p, steps))
        out.push_back(std::move(p));
    }
    int i = n - 1;
    while (i >= 0 && x[i] == hi) {
      x[i] = lo;
      --i;
    }
    if (i < 0)
      break;
    ++x[i];
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> interior_box(const ChamberSpec& chamber) {
  chamber.validate();
  const auto M = chamber.m.doubled();
  switch (chamber.family) {
  case Family::AffineC:
    return {1, M - 1};
  case Family::AffineB:
    return {1, 2 * M - 1};
  case Family::AffineD:
    return {-2 * M + 1, 2 * M - 1};
  default:
    throw InvalidInput("chamber is unbounded");
  }
}

} // namespace alcove
