// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "alcove/cli.hpp"
#include "alcove/oracle.hpp"

using namespace alcove;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << title << ": " << detail << std::endl;
  if (!ok)
    ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string first_failure(const cli::GridReport& r, bool closed) {
  for (const auto& i : r.instances)
    if ((closed ? i.closed_failures : i.reflection_failures) > 0)
      return i.key + ": " + i.failure;
  return {};
}

cli::GridSpec alcove_grid() {
  cli::GridSpec g;
  g.families = {"atilde", "btilde", "ctilde", "dtilde"};
  g.n_values = {1, 2, 3};
  g.m_values = {HalfInteger::integer(2), HalfInteger::integer(3), HalfInteger::integer(4),
                HalfInteger::from_doubled(5)};
  g.k_min = 0;
  g.k_max = 10;
  return g;
}

// Hyperplane formulas against the A alcove count summed over lambda + c(1,...,1).
bool hyperplane_check(std::size_t& checks, std::string& why) {
  for (StepKind kind : {StepKind::Coordinate, StepKind::Diagonal})
    for (int n = 2; n <= 3; ++n)
      for (int m = 2; m <= 4; ++m) {
        const ChamberSpec a{Family::AffineA, n, HalfInteger::integer(m)};
        const StepSet s(kind, n);
        for (const auto& eta : interior_points(a, s, 0, 2 * m)) {
          if (eta.doubled(n - 1) != 0)
            continue;
          const auto dist = oracle::dp_distributions(a, s, eta, 10);
          for (const auto& lambda : interior_points(a, s, 0, 2 * m)) {
            if (lambda.doubled(n - 1) > 1)
              continue;
            const auto f = kind == StepKind::Coordinate
                               ? std::optional<RealExpPoly>(tan_hyperplane_coord_expoly(eta, lambda, m))
                               : std::nullopt;
            for (int k = 0; k <= 10; ++k) {
              // The formula sums integer translates only. With diagonal steps an end point of the
              // wrong parity for k picks up nothing, and its half-integer shift carries the count.
              const std::int64_t stride = 2;
              BigCount expected = 0;
              for (std::int64_t c = -2 * k - 2 * m; c <= 2 * k + 2 * m; c += stride) {
                const LatticePoint shifted(Coords(lambda.doubled() + Coords::Constant(n, c)));
                const auto it = dist[static_cast<std::size_t>(k)].find(shifted.doubled());
                if (it != dist[static_cast<std::size_t>(k)].end()) {
                  expected += it->second;
                  if (count_alcove(a, s, eta, shifted, k) != it->second) {
                    why = "reflection disagrees at " + shifted.to_string();
                    return false;
                  }
                }
              }
              const double value = f ? expoly_extract(*f, k) : tan_hyperplane_diag_count(eta, lambda, k, m);
              ++checks;
              const double e = expected.convert_to<double>();
              bool ok = std::abs(value - e) < 1e-6 * std::max(1.0, e);
              if (ok) {
                try {
                  ok = round_count(value) == expected;
                } catch (const ConsistencyError&) {
                  ok = false;
                }
              }
              if (!ok) {
                std::ostringstream os;
                os << "hyperplane " << to_string(kind) << " n=" << n << " m=" << m << " eta=" << eta.to_string()
                   << " lambda=" << lambda.to_string() << " k=" << k << ": " << value << " vs " << expected;
                why = os.str();
                return false;
              }
            }
          }
        }
      }
  return true;
}

void criteria_1_and_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = cli::run_grid(alcove_grid());
  const double secs = seconds_since(t0);
  {
    std::ostringstream os;
    os << r.instances.size() << " start points, " << r.checks() << " (eta, lambda, k) checks, " << r.skipped
       << " non-reflectable combinations skipped, " << secs << " s";
    const bool ok = r.reflection_passed() && secs < 600;
    report(1, "reflection equals DP on every alcove family, n<=3, m in {2,3,4,5/2}, k<=10", ok,
           ok ? os.str() : first_failure(r, false) + " | " + os.str());
  }
  std::size_t hyper = 0;
  std::string why;
  const bool hyper_ok = hyperplane_check(hyper, why);
  std::ostringstream os;
  os << r.closed_checks() << " alcove closed-form values and " << hyper << " hyperplane values within 1e-6 and rounded exactly";
  const bool ok = r.closed_passed() && hyper_ok;
  std::string detail = os.str();
  if (!r.closed_passed())
    detail = first_failure(r, true);
  else if (!hyper_ok)
    detail = why;
  report(2, "closed forms match the exact counts", ok, detail);
}

void criterion_3() {
  cli::GridSpec g;
  g.families = {"circle"};
  g.n_values = {2, 3};
  g.m_values = {HalfInteger::integer(3), HalfInteger::integer(4), HalfInteger::integer(5)};
  g.k_min = 0;
  g.k_max = 8;
  const auto r = cli::run_grid(g);
  std::ostringstream os;
  os << r.instances.size() << " start configurations, " << r.checks() << " exact checks, " << r.closed_checks()
     << " closed-form checks over coord/diag/forward";
  std::string detail = os.str();
  if (!r.reflection_passed())
    detail = first_failure(r, false);
  else if (!r.closed_passed())
    detail = first_failure(r, true);
  report(3, "circle counts equal the labeled-particle DP", r.passed() && r.checks() > 0, detail);
}

void criterion_4() {
  bool ok = true;
  std::ostringstream os;
  const double fp = gambler_first_passage(3, 1, 3);
  ok = ok && std::abs(fp - 0.125) < 1e-12;
  os << "fp(3,1,3)=" << fp;

  double worst = 0;
  for (int N = 2; N <= 6; ++N)
    for (int eta = 1; eta < N; ++eta) {
      const int K = 30;
      double total = 0;
      for (int k = 1; k <= K; ++k)
        total += gambler_first_passage(N, eta, k) + gambler_first_passage(N, N - eta, k);
      for (int lambda = 1; lambda < N; ++lambda)
        total += gambler_position(N, eta, lambda, K);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  ok = ok && worst < 1e-12;
  os << ", completeness error " << worst;

  // Interval walks are the n = 1 C alcove: chips 0 < x < N, either step size.
  std::size_t matched = 0;
  for (int N = 2; N <= 6; ++N)
    for (int eta = 1; eta < N; ++eta)
      for (int lambda = 1; lambda < N; ++lambda) {
        const auto e = LatticePoint::integer({eta});
        const auto l = LatticePoint::integer({lambda});
        const auto coord = tcn_coord_expoly(e, l, N);
        const ChamberSpec c{Family::AffineC, 1, HalfInteger::integer(N)};
        for (int k = 0; k <= 20; ++k) {
          const double scale = std::ldexp(1.0, k);
          const double prob = gambler_position(N, eta, lambda, k);
          const double exact = count_alcove(c, StepSet(StepKind::Coordinate, 1), e, l, k).convert_to<double>();
          const double diag = tcn_diag_count(LatticePoint::from_doubled({eta}), LatticePoint::from_doubled({lambda}),
                                             k, HalfInteger::from_doubled(N));
          const bool here = std::abs(prob * scale - expoly_extract(coord, k)) < 1e-6 * std::max(1.0, exact) &&
                            std::abs(prob * scale - exact) < 1e-6 * std::max(1.0, exact) &&
                            std::abs(diag - exact) < 1e-6 * std::max(1.0, exact);
          if (lambda == 1) {
            // Going broke at bet k+1 means sitting at 1 after k safe bets, then losing.
            const double broke = gambler_first_passage(N, eta, k + 1) * scale * 2.0;
            ok = ok && std::abs(broke - exact) < 1e-6 * std::max(1.0, exact);
          }
          ok = ok && here;
          ++matched;
        }
      }
  os << ", " << matched << " interval instances match the n=1 alcove formulas";
  report(4, "gambler's ruin", ok, os.str());
}

void criterion_5() {
  double worst_binom = 0, worst_bessel = 0;
  std::size_t n_binom = 0, n_bessel = 0;
  for (int m = 1; m <= 4; ++m) {
    for (int k = 0; k <= 16; ++k) {
      for (std::int64_t d2 = -4 * m; d2 <= 4 * m; ++d2) {
        const auto d = HalfInteger::from_doubled(d2);
        BigCount exact = 0;
        // j ranges over the residue class d + 2m Z with |j| <= k/2.
        for (std::int64_t j2 = d2 - 4 * m * (k + 2); j2 <= d2 + 4 * m * (k + 2); j2 += 4 * m)
          exact += half_binomial(k, j2);
        const double e = exact.convert_to<double>();
        worst_binom = std::max(worst_binom, std::abs(periodic_binomial_sum(d, k, m) - e));
        ++n_binom;
      }
    }
    for (int s = 0; s < 2 * m; ++s) {
      const auto f = periodic_bessel_expoly(s, m);
      for (int k = 0; k <= 16; ++k) {
        BigCount exact = 0;
        for (std::int64_t j = s - 2 * m * (k + 1); j <= s + 2 * m * (k + 1); j += 2 * m)
          exact += free_coordinate(LatticePoint::integer({j}), k);
        const double e = exact.convert_to<double>();
        worst_bessel = std::max(worst_bessel, std::abs(expoly_extract(f, k) - e) / std::max(1.0, e));
        ++n_bessel;
      }
    }
  }
  std::ostringstream os;
  os << n_binom << " binomial residue sums (max abs error " << worst_binom << "), " << n_bessel
     << " Bessel residue sums (max rel error " << worst_bessel << ")";
  report(5, "periodic binomial and Bessel identities", worst_binom < 1e-9 && worst_bessel < 1e-9, os.str());
}

void criterion_6() {
  std::mt19937 rng(2024);
  double worst = 0;
  int done = 0;
  std::ostringstream kinds;
  int per_kind[5] = {0, 0, 0, 0, 0};
  while (done < 100) {
    const int kind = static_cast<int>(rng() % 5);
    const int n = kind == 2 ? 2 + static_cast<int>(rng() % 2) : 1 + static_cast<int>(rng() % 3);
    const int m = 2 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % 9);
    const bool half_m = kind <= 2 && rng() % 2;
    const std::int64_t m2 = half_m ? 2 * m + 1 : 2 * m;
    Family fam = Family::AffineC;
    if (kind == 1)
      fam = Family::AffineB;
    if (kind == 2)
      fam = Family::AffineD;
    const StepSet s(StepKind::Diagonal, n);
    std::vector<LatticePoint> pts;
    if (kind <= 2) {
      const ChamberSpec c{fam, n, HalfInteger::from_doubled(m2)};
      const auto [lo, hi] = interior_box(c);
      pts = interior_points(c, s, lo, hi);
    } else {
      const ChamberSpec sorted{Family::FiniteA, n, HalfInteger::integer(1)};
      pts = interior_points(sorted, s, 0, 2 * m - 1);
    }
    if (pts.size() < 2 || (kind >= 3 && n < 2))
      continue;
    const auto& eta = pts[rng() % pts.size()];
    const auto& lambda = pts[rng() % pts.size()];
    bool impossible = false;
    for (int i = 0; i < n; ++i)
      impossible = impossible || ((lambda.doubled(i) - eta.doubled(i) - k) % 2 != 0);
    if (!impossible)
      continue;
    double v = 0;
    switch (kind) {
    case 0:
      v = tcn_diag_count(eta, lambda, k, HalfInteger::from_doubled(m2));
      break;
    case 1:
      v = bn_dn_diag_count(Family::AffineB, eta, lambda, k, HalfInteger::from_doubled(m2));
      break;
    case 2:
      v = bn_dn_diag_count(Family::AffineD, eta, lambda, k, HalfInteger::from_doubled(m2));
      break;
    case 3:
      v = circle_diag_count(eta, lambda, k, m);
      break;
    default:
      v = tan_hyperplane_diag_count(eta, lambda, k, m);
      break;
    }
    worst = std::max(worst, std::abs(v));
    ++per_kind[kind];
    ++done;
  }
  std::ostringstream os;
  os << "100 instances (C " << per_kind[0] << ", B " << per_kind[1] << ", D " << per_kind[2] << ", circle "
     << per_kind[3] << ", hyperplane " << per_kind[4] << "), max |value| " << worst;
  report(6, "diagonal closed forms vanish on parity-impossible instances", worst < 1e-9, os.str());
}

void criterion_7() {
  cli::GridSpec g;
  g.families = {"dtilde"};
  g.n_values = {2};
  g.m_values = {HalfInteger::integer(2)};
  g.k_min = 0;
  g.k_max = 10;
  g.steps = {StepKind::Coordinate, StepKind::Diagonal};
  const auto uniform = cli::run_grid(g);
  g.scale = DnOddCosineScale::DoubledEntries;
  const auto doubled = cli::run_grid(g);
  std::ostringstream os;
  os << "uniform 1/2m prefactor: " << (uniform.closed_passed() ? "matches" : "fails") << " on "
     << uniform.closed_checks() << " checks; 1/m on the odd-harmonic cosine determinant: "
     << (doubled.closed_passed() ? "matches" : "fails") << " (" << first_failure(doubled, true) << ")";
  report(7, "D alcove constant is resolved by the oracle", uniform.passed() && !doubled.closed_passed(), os.str());
}

} // namespace

int main() {
  criteria_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  std::cout << (failures == 0 ? "all acceptance criteria pass" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
