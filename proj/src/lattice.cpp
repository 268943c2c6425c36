#include "alcove/lattice.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace alcove {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw InvalidInput("not a half-integer: '" + std::string(whole) + "'");
  return v;
}

} // namespace

HalfInteger HalfInteger::parse(std::string_view text) {
  auto s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(s.substr(0, slash), text);
    const auto den = parse_int(s.substr(slash + 1), text);
    if (den == 1)
      return integer(num);
    if (den == 2)
      return from_doubled(num);
    throw InvalidInput("not a half-integer: '" + std::string(text) + "'");
  }
  if (s.find('.') != std::string_view::npos || s.find('e') != std::string_view::npos) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw InvalidInput("not a half-integer: '" + std::string(text) + "'");
    const double twice = 2.0 * v;
    if (std::nearbyint(twice) != twice || std::abs(twice) > 1e15)
      throw InvalidInput("not a half-integer: '" + std::string(text) + "'");
    return from_doubled(static_cast<std::int64_t>(twice));
  }
  return integer(parse_int(s, text));
}

std::int64_t HalfInteger::as_integer() const {
  if (!is_integer())
    throw InvalidInput("expected an integer, got " + to_string());
  return doubled_ / 2;
}

std::string HalfInteger::to_string() const {
  if (is_integer())
    return std::to_string(doubled_ / 2);
  return std::to_string(doubled_) + "/2";
}

LatticePoint LatticePoint::from_doubled(std::initializer_list<std::int64_t> doubled) {
  Coords c(static_cast<Eigen::Index>(doubled.size()));
  Eigen::Index i = 0;
  for (auto v : doubled)
    c[i++] = v;
  return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::integer(std::initializer_list<std::int64_t> values) {
  return integer(std::vector<std::int64_t>(values));
}

LatticePoint LatticePoint::integer(const std::vector<std::int64_t>& values) {
  Coords c(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    c[static_cast<Eigen::Index>(i)] = 2 * values[i];
  return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::from_halves(const std::vector<HalfInteger>& values) {
  Coords c(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    c[static_cast<Eigen::Index>(i)] = values[i].doubled();
  return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::parse(std::string_view csv) {
  std::vector<HalfInteger> values;
  auto s = trim(csv);
  if (s.empty())
    throw InvalidInput("empty coordinate list");
  while (true) {
    const auto comma = s.find(',');
    values.push_back(HalfInteger::parse(s.substr(0, comma)));
    if (comma == std::string_view::npos)
      break;
    s.remove_prefix(comma + 1);
  }
  return from_halves(values);
}

bool LatticePoint::all_integer() const {
  return doubled_.unaryExpr([](std::int64_t v) { return v & 1; }).isZero();
}

bool LatticePoint::uniform_parity() const {
  if (doubled_.size() == 0)
    return true;
  const auto p = doubled_[0] & 1;
  return (doubled_.unaryExpr([](std::int64_t v) { return v & 1; }).array() == p).all();
}

std::string LatticePoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < doubled_.size(); ++i) {
    if (i)
      os << ',';
    os << HalfInteger::from_doubled(doubled_[i]).to_string();
  }
  os << ')';
  return os.str();
}

StepSet::StepSet(StepKind kind, int n, bool include_zero_step)
    : kind_(kind), n_(n), include_zero_step_(include_zero_step) {
  if (n < 1)
    throw InvalidInput("step set dimension must be positive");
  switch (kind) {
  case StepKind::Coordinate:
    for (int i = 0; i < n; ++i)
      for (int sgn : {+2, -2}) {
        Coords s = Coords::Zero(n);
        s[i] = sgn;
        steps_.push_back(std::move(s));
      }
    break;
  case StepKind::Forward:
    for (int i = 0; i < n; ++i) {
      Coords s = Coords::Zero(n);
      s[i] = 2;
      steps_.push_back(std::move(s));
    }
    break;
  case StepKind::Diagonal:
    if (n > 20)
      throw InvalidInput("diagonal step set too large");
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Coords s(n);
      for (int i = 0; i < n; ++i)
        s[i] = (mask >> i) & 1u ? -1 : 1;
      steps_.push_back(std::move(s));
    }
    break;
  }
  if (include_zero_step)
    steps_.push_back(Coords::Zero(n));
}

void ChamberSpec::validate() const {
  if (n < 1)
    throw InvalidInput("chamber rank must be positive");
  if (family != Family::FiniteA && m.doubled() <= 0)
    throw InvalidInput("chamber scale m must be positive");
  if (family == Family::AffineD && n < 2)
    throw InvalidInput("the D family needs n >= 2");
}

std::int64_t ChamberSpec::translation_doubled() const {
  switch (family) {
  case Family::AffineB:
  case Family::AffineC:
  case Family::AffineD:
    return 2 * m.doubled();
  case Family::AffineA:
    return m.doubled();
  case Family::FiniteA:
    return 0;
  }
  return 0;
}

std::string_view to_string(StepKind kind) {
  switch (kind) {
  case StepKind::Coordinate:
    return "coord";
  case StepKind::Diagonal:
    return "diag";
  case StepKind::Forward:
    return "forward";
  }
  return "?";
}

std::string_view to_string(Family family) {
  switch (family) {
  case Family::AffineA:
    return "atilde";
  case Family::AffineB:
    return "btilde";
  case Family::AffineC:
    return "ctilde";
  case Family::AffineD:
    return "dtilde";
  case Family::FiniteA:
    return "finite-a";
  }
  return "?";
}

StepKind parse_step_kind(std::string_view text) {
  if (text == "coord")
    return StepKind::Coordinate;
  if (text == "diag")
    return StepKind::Diagonal;
  if (text == "forward")
    return StepKind::Forward;
  throw InvalidInput("unknown step set '" + std::string(text) + "'");
}

} // namespace alcove
