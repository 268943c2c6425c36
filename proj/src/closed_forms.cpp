#include "alcove/closed_forms.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace alcove {

namespace {

using std::numbers::pi;
using Rational = boost::multiprecision::cpp_rational;

enum class Harmonic { Even, Odd };
enum class Trig { Sin, Cos };

double trig(Trig f, double x) { return f == Trig::Sin ? std::sin(x) : std::cos(x); }

// Angle of the r-th kernel: pi r / m (even) or pi (2r + 1) / 2m (odd).
double harmonic_angle(Harmonic h, int r, double m) {
  return h == Harmonic::Even ? pi * r / m : pi * (2.0 * r + 1.0) / (2.0 * m);
}

void require_interior(const ChamberSpec& chamber, const LatticePoint& eta, const LatticePoint& lambda) {
  if (eta.n() != chamber.n || lambda.n() != chamber.n)
    throw InvalidInput("dimension mismatch between chamber and endpoints");
  if (!in_interior(eta, chamber) || !in_interior(lambda, chamber))
    throw PreconditionError("endpoints must be interior to the " + std::string(to_string(chamber.family)) +
                            " alcove");
}

void require_diagonal_lattice(const LatticePoint& eta, const LatticePoint& lambda) {
  if (!eta.uniform_parity() || !lambda.uniform_parity())
    throw PreconditionError("diagonal walks need all coordinates integer or all half-odd");
}

void require_integer_lattice(const LatticePoint& eta, const LatticePoint& lambda) {
  if (!eta.all_integer() || !lambda.all_integer())
    throw PreconditionError("coordinate-step walks need integer endpoints");
}

// (2^(k-1) / m) sum_{r=0}^{4m-1} f(theta lambda) f(theta eta) cos^k(theta / 2)
Eigen::MatrixXd diag_kernel_matrix(Harmonic h, Trig f, const LatticePoint& eta, const LatticePoint& lambda, int k,
                                   HalfInteger m) {
  const int n = eta.n();
  const double mv = m.value();
  const int terms = static_cast<int>(2 * m.doubled());
  const double scale = std::ldexp(1.0, k - 1) / mv;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double sum = 0;
      for (int r = 0; r < terms; ++r) {
        const double theta = harmonic_angle(h, r, mv);
        sum += trig(f, theta * lambda.value(j)) * trig(f, theta * eta.value(i)) * std::pow(std::cos(theta / 2), k);
      }
      a(i, j) = scale * sum;
    }
  return a;
}

// (1/m) sum_{r=0}^{2m-1} f(theta lambda) f(theta eta) exp(2x cos theta)
RingMatrix<RealExpPoly> coord_kernel_matrix(Harmonic h, Trig f, const LatticePoint& eta, const LatticePoint& lambda,
                                            int m) {
  const int n = eta.n();
  RingMatrix<RealExpPoly> a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RealExpPoly entry;
      for (int r = 0; r < 2 * m; ++r) {
        const double theta = harmonic_angle(h, r, m);
        const double c = trig(f, theta * lambda.value(j)) * trig(f, theta * eta.value(i)) / m;
        if (c != 0.0)
          entry.add_term(c, 2.0 * std::cos(theta));
      }
      a(i, j) = std::move(entry);
    }
  return a;
}

double diag_det(Harmonic h, Trig f, const LatticePoint& eta, const LatticePoint& lambda, int k, HalfInteger m) {
  return diag_kernel_matrix(h, f, eta, lambda, k, m).determinant();
}

RealExpPoly coord_det(Harmonic h, Trig f, const LatticePoint& eta, const LatticePoint& lambda, int m) {
  return leibniz_determinant(coord_kernel_matrix(h, f, eta, lambda, m));
}

RealExpPoly real_part_checked(const ComplexExpPoly& f) {
  RealExpPoly out;
  const double scale = std::max(1.0, f.max_abs_coefficient());
  for (const auto& t : f.terms()) {
    if (std::abs(t.coefficient.imag()) > imaginary_tolerance * scale)
      throw ConsistencyError("root-of-unity sum left an imaginary part of " + std::to_string(t.coefficient.imag()));
    out.add_term(t.coefficient.real(), t.frequency);
  }
  return out;
}

double real_part_checked(std::complex<double> z) {
  if (std::abs(z.imag()) > imaginary_tolerance * std::max(1.0, std::abs(z.real())))
    throw ConsistencyError("root-of-unity sum left an imaginary part of " + std::to_string(z.imag()));
  return z.real();
}

LatticePoint shifted(const LatticePoint& p, std::int64_t c) {
  Coords d = p.doubled();
  d.array() += 2 * c;
  return LatticePoint(std::move(d));
}

} // namespace

double gambler_first_passage(int N, int eta, int k) {
  if (!(0 < eta && eta < N))
    throw PreconditionError("need 0 < eta < N");
  if (k < 1)
    throw PreconditionError("need k >= 1");
  double sum = 0;
  for (int r = 1; r < N; ++r) {
    const double a = pi * r / N;
    sum += std::pow(std::cos(a), k - 1) * std::sin(a) * std::sin(a * eta);
  }
  return sum / N;
}

double gambler_position(int N, int eta, int lambda, int k) {
  if (!(0 < eta && eta < N) || !(0 < lambda && lambda < N))
    throw PreconditionError("need 0 < eta, lambda < N");
  if (k < 0)
    throw PreconditionError("need k >= 0");
  double sum = 0;
  for (int r = 1; r < N; ++r) {
    const double a = pi * r / N;
    sum += std::pow(std::cos(a), k) * std::sin(a * lambda) * std::sin(a * eta);
  }
  return 2.0 * sum / N;
}

double periodic_binomial_sum(HalfInteger d, int k, int m) {
  if (m < 1)
    throw PreconditionError("need m >= 1");
  const int period = 4 * m;
  double sum = 0;
  for (int r = 0; r < period; ++r) {
    // cos(2 pi r (2d) / 4m), with 2d the doubled displacement
    sum += std::cos(2.0 * pi * r * static_cast<double>(d.doubled()) / period) *
           std::pow(2.0 * std::cos(2.0 * pi * r / period), k);
  }
  return sum / period;
}

RealExpPoly periodic_bessel_expoly(int s, int m) {
  if (m < 1)
    throw PreconditionError("need m >= 1");
  RealExpPoly f;
  const int period = 2 * m;
  for (int r = 0; r < period; ++r) {
    const double c = std::cos(2.0 * pi * r * s / period) / period;
    if (c != 0.0)
      f.add_term(c, 2.0 * std::cos(2.0 * pi * r / period));
  }
  return f;
}

double tcn_diag_count(const LatticePoint& eta, const LatticePoint& lambda, int k, HalfInteger m) {
  require_interior({Family::AffineC, eta.n(), m}, eta, lambda);
  require_diagonal_lattice(eta, lambda);
  if (k < 0)
    throw InvalidInput("step count must be nonnegative");
  return diag_det(Harmonic::Even, Trig::Sin, eta, lambda, k, m);
}

RealExpPoly tcn_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m) {
  require_interior({Family::AffineC, eta.n(), HalfInteger::integer(m)}, eta, lambda);
  require_integer_lattice(eta, lambda);
  return coord_det(Harmonic::Even, Trig::Sin, eta, lambda, m);
}

RealExpPoly tbn_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m) {
  require_interior({Family::AffineB, eta.n(), HalfInteger::integer(m)}, eta, lambda);
  require_integer_lattice(eta, lambda);
  auto g = coord_det(Harmonic::Even, Trig::Sin, eta, lambda, m) + coord_det(Harmonic::Odd, Trig::Sin, eta, lambda, m);
  return g * 0.5;
}

RealExpPoly tdn_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m, DnOddCosineScale scale) {
  require_interior({Family::AffineD, eta.n(), HalfInteger::integer(m)}, eta, lambda);
  require_integer_lattice(eta, lambda);
  auto odd_cos = coord_det(Harmonic::Odd, Trig::Cos, eta, lambda, m);
  if (scale == DnOddCosineScale::DoubledEntries)
    odd_cos *= std::ldexp(1.0, eta.n());
  auto g = coord_det(Harmonic::Even, Trig::Sin, eta, lambda, m) + coord_det(Harmonic::Odd, Trig::Sin, eta, lambda, m) +
           coord_det(Harmonic::Even, Trig::Cos, eta, lambda, m) + odd_cos;
  return g * 0.25;
}

double bn_dn_diag_count(Family family, const LatticePoint& eta, const LatticePoint& lambda, int k, HalfInteger m,
                        DnOddCosineScale scale) {
  if (family != Family::AffineB && family != Family::AffineD)
    throw InvalidInput("bn_dn_diag_count takes the B or D family");
  require_interior({family, eta.n(), m}, eta, lambda);
  require_diagonal_lattice(eta, lambda);
  if (k < 0)
    throw InvalidInput("step count must be nonnegative");
  const double sin_even = diag_det(Harmonic::Even, Trig::Sin, eta, lambda, k, m);
  const double sin_odd = diag_det(Harmonic::Odd, Trig::Sin, eta, lambda, k, m);
  if (family == Family::AffineB)
    return 0.5 * (sin_even + sin_odd);
  double cos_odd = diag_det(Harmonic::Odd, Trig::Cos, eta, lambda, k, m);
  if (scale == DnOddCosineScale::DoubledEntries)
    cos_odd *= std::ldexp(1.0, eta.n());
  return 0.25 * (sin_even + sin_odd + diag_det(Harmonic::Even, Trig::Cos, eta, lambda, k, m) + cos_odd);
}

BigCount tan_forward_count(const LatticePoint& eta, const LatticePoint& lambda, int k, int m) {
  const int n = eta.n();
  require_interior({Family::AffineA, n, HalfInteger::integer(m)}, eta, lambda);
  require_integer_lattice(eta, lambda);
  if (k < 0)
    throw InvalidInput("step count must be nonnegative");
  if (lambda.doubled().sum() - eta.doubled().sum() != 2 * static_cast<std::int64_t>(k))
    return 0;

  std::vector<std::int64_t> diff(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      diff[static_cast<std::size_t>(i * n + j)] = (lambda.doubled(j) - eta.doubled(i)) / 2;

  // Row i has a nonzero entry 1/a! with 0 <= a <= k only for t_i in [lo_i, hi_i].
  auto floor_div = [](std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
  };
  std::vector<std::int64_t> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = std::numeric_limits<std::int64_t>::max();
    hi[i] = std::numeric_limits<std::int64_t>::min();
    for (int j = 0; j < n; ++j) {
      const auto d = diff[static_cast<std::size_t>(i * n + j)];
      lo[i] = std::min(lo[i], -floor_div(d, m));
      hi[i] = std::max(hi[i], floor_div(k - d, m));
    }
  }

  std::vector<BigCount> fact(static_cast<std::size_t>(k + 1));
  fact[0] = 1;
  for (int i = 1; i <= k; ++i)
    fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;
  auto inv_factorial = [&](std::int64_t a) -> Rational {
    if (a < 0)
      return Rational(0);
    if (a <= k)
      return Rational(BigCount(1), fact[static_cast<std::size_t>(a)]);
    return Rational(BigCount(1), factorial(a));
  };

  Rational total = 0;
  std::vector<std::int64_t> t(n);
  std::function<void(int, std::int64_t)> visit = [&](int i, std::int64_t partial) {
    if (i == n - 1) {
      t[i] = -partial;
      if (t[i] < lo[i] || t[i] > hi[i])
        return;
      std::vector<Rational> a(static_cast<std::size_t>(n * n));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          a[static_cast<std::size_t>(r * n + c)] = inv_factorial(m * t[r] + diff[static_cast<std::size_t>(r * n + c)]);
      // Gaussian elimination over the rationals.
      Rational det = 1;
      for (int p = 0; p < n; ++p) {
        int piv = -1;
        for (int r = p; r < n; ++r)
          if (a[static_cast<std::size_t>(r * n + p)] != 0) {
            piv = r;
            break;
          }
        if (piv < 0)
          return;
        if (piv != p) {
          for (int c = 0; c < n; ++c)
            std::swap(a[static_cast<std::size_t>(p * n + c)], a[static_cast<std::size_t>(piv * n + c)]);
          det = -det;
        }
        const Rational pv = a[static_cast<std::size_t>(p * n + p)];
        det *= pv;
        for (int r = p + 1; r < n; ++r) {
          const Rational f = a[static_cast<std::size_t>(r * n + p)] / pv;
          if (f == 0)
            continue;
          for (int c = p; c < n; ++c)
            a[static_cast<std::size_t>(r * n + c)] -= f * a[static_cast<std::size_t>(p * n + c)];
        }
      }
      total += det;
      return;
    }
    for (std::int64_t v = lo[i]; v <= hi[i]; ++v) {
      t[i] = v;
      visit(i + 1, partial + v);
    }
  };
  visit(0, 0);

  const Rational scaled = total * Rational(fact[static_cast<std::size_t>(k)]);
  if (boost::multiprecision::denominator(scaled) != 1)
    throw ConsistencyError("forward-step determinant sum is not an integer");
  return boost::multiprecision::numerator(scaled);
}

RealExpPoly circle_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m) {
  const int n = eta.n();
  const StepSet steps(StepKind::Coordinate, n);
  const auto ends = canonical_circle_endpoints(HalfInteger::integer(m), steps, eta, lambda);
  const double mn = static_cast<double>(m) * n;
  auto zeta_pow = [&](double e) { return std::polar(1.0, 2.0 * pi * e / mn); };

  ComplexExpPoly total;
  for (int u = 0; u < n; ++u) {
    RingMatrix<ComplexExpPoly> a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double v = static_cast<double>(ends.lambda[j] - ends.eta[i]) / 2.0;
        ComplexExpPoly entry;
        for (int r = 0; r < m; ++r) {
          const double q = u + static_cast<double>(n) * r;
          entry.add_term(zeta_pow(-q * v) / static_cast<double>(m), 2.0 * std::cos(2.0 * pi * q / mn));
        }
        a(i, j) = std::move(entry);
      }
    auto det = leibniz_determinant(a);
    det *= zeta_pow(-static_cast<double>(u) * m * ends.s) / static_cast<double>(n);
    total += det;
  }
  return real_part_checked(total);
}

double circle_diag_count(const LatticePoint& eta, const LatticePoint& lambda, int k, int m) {
  const int n = eta.n();
  if (k < 0)
    throw InvalidInput("step count must be nonnegative");
  const StepSet steps(StepKind::Diagonal, n);
  const auto ends = canonical_circle_endpoints(HalfInteger::integer(m), steps, eta, lambda);
  const double two_mn = 2.0 * m * n;
  auto zeta_pow = [&](double e) { return std::polar(1.0, 2.0 * pi * e / two_mn); };
  const double scale = std::ldexp(1.0, k - 1) / m;

  std::complex<double> total = 0;
  for (int u = 0; u < n; ++u) {
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // doubled displacement, so zeta^(-2 q v) = zeta^(-q V)
        const double V = static_cast<double>(ends.lambda[j] - ends.eta[i]);
        std::complex<double> sum = 0;
        for (int r = 0; r < 2 * m; ++r) {
          const double q = u + static_cast<double>(n) * r;
          sum += zeta_pow(-q * V) * std::pow(std::cos(pi * q / (static_cast<double>(m) * n)), k);
        }
        a(i, j) = scale * sum;
      }
    total += zeta_pow(-2.0 * u * m * ends.s) * a.determinant() / static_cast<double>(n);
  }
  return real_part_checked(total);
}

RealExpPoly tan_hyperplane_coord_expoly(const LatticePoint& eta, const LatticePoint& lambda, int m) {
  require_interior({Family::AffineA, eta.n(), HalfInteger::integer(m)}, eta, lambda);
  RealExpPoly total;
  for (int c = 0; c < m; ++c)
    total += circle_coord_expoly(eta, shifted(lambda, c), m);
  return total;
}

double tan_hyperplane_diag_count(const LatticePoint& eta, const LatticePoint& lambda, int k, int m) {
  require_interior({Family::AffineA, eta.n(), HalfInteger::integer(m)}, eta, lambda);
  double total = 0;
  for (int c = 0; c < m; ++c)
    total += circle_diag_count(eta, shifted(lambda, c), k, m);
  return total;
}

BigCount round_count(double value) {
  if (!std::isfinite(value))
    throw ConsistencyError("closed form produced a non-finite value");
  const double r = std::nearbyint(value);
  if (std::abs(value - r) > rounding_tolerance)
    throw ConsistencyError("closed form value " + std::to_string(value) + " is not within " +
                           std::to_string(rounding_tolerance) + " of an integer");
  if (std::abs(r) >= 9.0e18)
    throw ConsistencyError("closed form value too large to round");
  return BigCount(static_cast<long long>(r));
}

std::optional<double> closed_form_alcove(const ChamberSpec& chamber, const StepSet& steps, const LatticePoint& eta,
                                         const LatticePoint& lambda, int k, DnOddCosineScale scale) {
  if (steps.include_zero_step() || chamber.n > max_leibniz_size)
    return std::nullopt;
  const bool coord = steps.kind() == StepKind::Coordinate;
  const bool diag = steps.kind() == StepKind::Diagonal;
  if (coord && !chamber.m.is_integer())
    return std::nullopt;
  const int mi = chamber.m.is_integer() ? static_cast<int>(chamber.m.as_integer()) : 0;
  switch (chamber.family) {
  case Family::AffineC:
    if (coord)
      return expoly_extract(tcn_coord_expoly(eta, lambda, mi), k);
    if (diag)
      return tcn_diag_count(eta, lambda, k, chamber.m);
    break;
  case Family::AffineB:
    if (coord)
      return expoly_extract(tbn_coord_expoly(eta, lambda, mi), k);
    if (diag)
      return bn_dn_diag_count(Family::AffineB, eta, lambda, k, chamber.m);
    break;
  case Family::AffineD:
    if (coord)
      return expoly_extract(tdn_coord_expoly(eta, lambda, mi, scale), k);
    if (diag)
      return bn_dn_diag_count(Family::AffineD, eta, lambda, k, chamber.m, scale);
    break;
  case Family::AffineA:
    if (steps.kind() == StepKind::Forward && chamber.m.is_integer())
      return tan_forward_count(eta, lambda, k, mi).convert_to<double>();
    break;
  case Family::FiniteA:
    if (diag) {
      auto counter = [](HalfInteger a, HalfInteger b, int kk) { return half_binomial(kk, b.doubled() - a.doubled()); };
      return km_determinant(eta, lambda, k, counter).convert_to<double>();
    }
    break;
  }
  return std::nullopt;
}

std::optional<double> closed_form_circle(HalfInteger m, const StepSet& steps, const LatticePoint& eta,
                                         const LatticePoint& lambda, int k) {
  if (steps.include_zero_step() || eta.n() > max_leibniz_size || !m.is_integer())
    return std::nullopt;
  const int mi = static_cast<int>(m.as_integer());
  switch (steps.kind()) {
  case StepKind::Coordinate:
    return expoly_extract(circle_coord_expoly(eta, lambda, mi), k);
  case StepKind::Diagonal:
    return circle_diag_count(eta, lambda, k, mi);
  case StepKind::Forward: {
    const auto ends = canonical_circle_endpoints(m, steps, eta, lambda);
    const LatticePoint start(ends.eta);
    const auto lifted = lift_forward_endpoint(m, start, LatticePoint(ends.lambda), k);
    if (!lifted)
      return 0.0;
    return tan_forward_count(start, *lifted, k, mi).convert_to<double>();
  }
  }
  return std::nullopt;
}

std::optional<std::vector<double>> closed_form_alcove_series(const ChamberSpec& chamber, const StepSet& steps,
                                                            const LatticePoint& eta, const LatticePoint& lambda,
                                                            int k_max, DnOddCosineScale scale) {
  if (k_max < 0)
    throw InvalidInput("step count must be nonnegative");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  const bool egf = steps.kind() == StepKind::Coordinate && !steps.include_zero_step() &&
                   chamber.n <= max_leibniz_size && chamber.m.is_integer() &&
                   (chamber.family == Family::AffineC || chamber.family == Family::AffineB ||
                    chamber.family == Family::AffineD);
  if (egf) {
    const int mi = static_cast<int>(chamber.m.as_integer());
    const RealExpPoly f = chamber.family == Family::AffineC   ? tcn_coord_expoly(eta, lambda, mi)
                          : chamber.family == Family::AffineB ? tbn_coord_expoly(eta, lambda, mi)
                                                              : tdn_coord_expoly(eta, lambda, mi, scale);
    for (int k = 0; k <= k_max; ++k)
      out.push_back(expoly_extract(f, k));
    return out;
  }
  for (int k = 0; k <= k_max; ++k) {
    const auto v = closed_form_alcove(chamber, steps, eta, lambda, k, scale);
    if (!v)
      return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

std::optional<std::vector<double>> closed_form_circle_series(HalfInteger m, const StepSet& steps,
                                                             const LatticePoint& eta, const LatticePoint& lambda,
                                                             int k_max) {
  if (k_max < 0)
    throw InvalidInput("step count must be nonnegative");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  if (steps.kind() == StepKind::Coordinate && !steps.include_zero_step() && eta.n() <= max_leibniz_size &&
      m.is_integer()) {
    const RealExpPoly f = circle_coord_expoly(eta, lambda, static_cast<int>(m.as_integer()));
    for (int k = 0; k <= k_max; ++k)
      out.push_back(expoly_extract(f, k));
    return out;
  }
  for (int k = 0; k <= k_max; ++k) {
    const auto v = closed_form_circle(m, steps, eta, lambda, k);
    if (!v)
      return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

} // namespace alcove
