#ifndef ALCOVE_EXP_POLY_HPP
#define ALCOVE_EXP_POLY_HPP

// Finite sums f(x) = sum_j c_j exp(a_j x) with real frequencies a_j and
// real or complex coefficients. These form a ring, which is all the
// generating-function determinants need.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "alcove/lattice.hpp"

namespace alcove {

template <class Scalar>
class ExpPoly {
public:
  struct Term {
    Scalar coefficient;
    double frequency;
  };

  /// Frequencies closer than this are merged.
  static constexpr double coalesce_tolerance = 1e-9;

  ExpPoly() = default;
  explicit ExpPoly(Scalar constant) {
    if (constant != Scalar(0))
      terms_.push_back({constant, 0.0});
  }
  explicit ExpPoly(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

  static ExpPoly exponential(Scalar coefficient, double frequency) {
    ExpPoly p;
    p.terms_.push_back({coefficient, frequency});
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(Scalar coefficient, double frequency) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), frequency - coalesce_tolerance,
                               [](const Term& t, double f) { return t.frequency < f; });
    if (it != terms_.end() && std::abs(it->frequency - frequency) <= coalesce_tolerance)
      it->coefficient += coefficient;
    else
      terms_.insert(it, Term{coefficient, frequency});
  }

  ExpPoly& operator+=(const ExpPoly& other) {
    for (const auto& t : other.terms_)
      add_term(t.coefficient, t.frequency);
    return *this;
  }
  ExpPoly& operator-=(const ExpPoly& other) {
    for (const auto& t : other.terms_)
      add_term(-t.coefficient, t.frequency);
    return *this;
  }
  ExpPoly& operator*=(Scalar s) {
    for (auto& t : terms_)
      t.coefficient *= s;
    return *this;
  }

  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(ExpPoly a, Scalar s) { return a *= s; }
  friend ExpPoly operator*(Scalar s, ExpPoly a) { return a *= s; }

  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly out;
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_)
        out.terms_.push_back({x.coefficient * y.coefficient, x.frequency + y.frequency});
    out.normalize();
    return out;
  }

  /// k! [x^k] f = sum_j c_j a_j^k, with 0^0 = 1.
  Scalar extract(int k) const {
    Scalar sum(0);
    for (const auto& t : terms_)
      sum += t.coefficient * (k == 0 ? 1.0 : std::pow(t.frequency, k));
    return sum;
  }

  /// Largest coefficient magnitude.
  double max_abs_coefficient() const {
    double m = 0;
    for (const auto& t : terms_)
      m = std::max(m, static_cast<double>(std::abs(t.coefficient)));
    return m;
  }

private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.frequency < b.frequency; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!merged.empty() && t.frequency - merged.back().frequency <= coalesce_tolerance)
        merged.back().coefficient += t.coefficient;
      else
        merged.push_back(t);
    }
    terms_ = std::move(merged);
  }

  std::vector<Term> terms_;
};

using RealExpPoly = ExpPoly<double>;
using ComplexExpPoly = ExpPoly<std::complex<double>>;

template <class Scalar>
Scalar expoly_extract(const ExpPoly<Scalar>& f, int k) {
  if (k < 0)
    throw InvalidInput("step count must be nonnegative");
  return f.extract(k);
}

/// Square matrix of ring elements, row-major.
template <class Ring>
struct RingMatrix {
  int n = 0;
  std::vector<Ring> entries;

  RingMatrix() = default;
  explicit RingMatrix(int size) : n(size), entries(static_cast<std::size_t>(size * size)) {}
  Ring& operator()(int i, int j) { return entries[static_cast<std::size_t>(i * n + j)]; }
  const Ring& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * n + j)]; }
};

inline constexpr int max_leibniz_size = 8;

/// Leibniz expansion over all permutations; products are coalesced as they
/// are formed. Rejects n > 8.
template <class Scalar>
ExpPoly<Scalar> leibniz_determinant(const RingMatrix<ExpPoly<Scalar>>& a) {
  if (a.n > max_leibniz_size)
    throw InvalidInput("determinant expansion limited to n <= 8");
  std::vector<int> sigma(static_cast<std::size_t>(a.n));
  std::iota(sigma.begin(), sigma.end(), 0);
  ExpPoly<Scalar> det;
  if (a.n == 0)
    return ExpPoly<Scalar>(Scalar(1));
  do {
    int inversions = 0;
    for (int i = 0; i < a.n; ++i)
      for (int j = i + 1; j < a.n; ++j)
        inversions += sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(j)];
    ExpPoly<Scalar> term = a(0, sigma[0]);
    for (int i = 1; i < a.n && !term.empty(); ++i)
      term = term * a(i, sigma[static_cast<std::size_t>(i)]);
    if (inversions % 2)
      det -= term;
    else
      det += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return det;
}

} // namespace alcove

#endif
