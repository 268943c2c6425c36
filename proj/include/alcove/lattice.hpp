#ifndef ALCOVE_LATTICE_HPP
#define ALCOVE_LATTICE_HPP

// Basic value types shared by every module: half-integer scalars, lattice
// points stored with doubled coordinates, step sets and chamber specs.

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace alcove {

using BigCount = boost::multiprecision::cpp_int;

/// Integer vector holding doubled coordinates (2x the true value).
using Coords = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A number in (1/2)Z, stored exactly as its double.
class HalfInteger {
public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_doubled(std::int64_t doubled) {
    HalfInteger h;
    h.doubled_ = doubled;
    return h;
  }
  static constexpr HalfInteger integer(std::int64_t value) { return from_doubled(2 * value); }

  /// Accepts "3", "-2", "5/2", "2.5", "-0.5".
  static HalfInteger parse(std::string_view text);

  constexpr std::int64_t doubled() const { return doubled_; }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }
  constexpr double value() const { return static_cast<double>(doubled_) / 2.0; }
  /// Requires is_integer().
  std::int64_t as_integer() const;

  std::string to_string() const;

  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
  friend constexpr auto operator<=>(HalfInteger a, HalfInteger b) { return a.doubled_ <=> b.doubled_; }

private:
  std::int64_t doubled_ = 0;
};

class LatticePoint {
public:
  LatticePoint() = default;
  explicit LatticePoint(Coords doubled) : doubled_(std::move(doubled)) {}

  static LatticePoint from_doubled(std::initializer_list<std::int64_t> doubled);
  static LatticePoint integer(std::initializer_list<std::int64_t> values);
  static LatticePoint integer(const std::vector<std::int64_t>& values);
  static LatticePoint from_halves(const std::vector<HalfInteger>& values);
  /// Comma separated list of half-integers, e.g. "1,0" or "3/2,1/2".
  static LatticePoint parse(std::string_view csv);

  int n() const { return static_cast<int>(doubled_.size()); }
  const Coords& doubled() const { return doubled_; }
  std::int64_t doubled(int i) const { return doubled_[i]; }
  HalfInteger operator[](int i) const { return HalfInteger::from_doubled(doubled_[i]); }
  double value(int i) const { return static_cast<double>(doubled_[i]) / 2.0; }

  bool all_integer() const;
  /// True when every coordinate is an integer or every coordinate is a half-odd-integer.
  bool uniform_parity() const;

  std::string to_string() const;

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    return a.doubled_.size() == b.doubled_.size() && a.doubled_ == b.doubled_;
  }

private:
  Coords doubled_;
};

enum class StepKind { Coordinate, Diagonal, Forward };

class StepSet {
public:
  StepSet(StepKind kind, int n, bool include_zero_step = false);

  StepKind kind() const { return kind_; }
  int n() const { return n_; }
  bool include_zero_step() const { return include_zero_step_; }

  /// Every step as a doubled-coordinate vector, zero step last when present.
  const std::vector<Coords>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  /// Largest |coordinate| of any step, doubled (2 for unit steps, 1 for diagonals).
  std::int64_t max_doubled_magnitude() const { return kind_ == StepKind::Diagonal ? 1 : 2; }
  /// Whether points reached by this step set may carry half-odd-integer coordinates.
  bool allows_half_lattice() const { return kind_ == StepKind::Diagonal; }

private:
  StepKind kind_;
  int n_;
  bool include_zero_step_;
  std::vector<Coords> steps_;
};

enum class Family { AffineA, AffineB, AffineC, AffineD, FiniteA };

struct ChamberSpec {
  Family family = Family::AffineC;
  int n = 1;
  HalfInteger m = HalfInteger::integer(1);

  /// Throws InvalidInput for n < 1, m <= 0 on affine families, or D with n < 2.
  void validate() const;
  /// Translation unit T (2m for B/C/D, m for A, 0 for the finite chamber), doubled.
  std::int64_t translation_doubled() const;
};

std::string_view to_string(StepKind kind);
std::string_view to_string(Family family);
StepKind parse_step_kind(std::string_view text);

} // namespace alcove

#endif
