#ifndef ALCOVE_CLI_HPP
#define ALCOVE_CLI_HPP

// Library side of the command-line tool: the count query, the verification
// grid, and gambler's-ruin tables. The executable only parses flags.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alcove/closed_forms.hpp"

namespace alcove::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_disagree = 3;

enum class Method { Reflection, Dp, Closed, All };

Method parse_method(std::string_view text);
std::string_view to_string(Method method);

/// "circle" is not a Family; everything else maps onto one.
bool is_circle_family(std::string_view name);
Family parse_family(std::string_view name);

struct CountQuery {
  std::string family;
  int n = 1;
  std::optional<HalfInteger> m;  // not needed for finite-a
  StepKind steps = StepKind::Coordinate;
  LatticePoint eta;
  LatticePoint lambda;
  int k = 0;
  Method method = Method::All;
  bool zero_step = false;
};

/// Builds a query from flag text; throws InvalidInput on malformed values.
CountQuery make_count_query(std::string_view family, int n, std::string_view m, std::string_view steps,
                            std::string_view eta, std::string_view lambda, int k, std::string_view method,
                            bool zero_step = false);

struct CountOutcome {
  std::string json;
  bool agree = true;
  int exit_code = exit_ok;
};

/// Runs the requested methods. Counts are decimal strings; a method that
/// cannot handle the instance reports "unavailable". Throws InvalidInput or
/// PreconditionError for bad instances.
CountOutcome run_count(const CountQuery& query);

/// Rebuilds a query from a document emitted by run_count.
CountQuery query_from_json(std::string_view json);

struct GridSpec {
  std::vector<std::string> families;
  std::vector<int> n_values{1, 2, 3};
  std::vector<HalfInteger> m_values{HalfInteger::integer(2), HalfInteger::integer(3), HalfInteger::integer(4)};
  int k_min = 0;
  int k_max = 10;
  std::vector<StepKind> steps{StepKind::Coordinate, StepKind::Diagonal, StepKind::Forward};
  DnOddCosineScale scale = DnOddCosineScale::Simplified;
  bool check_closed = true;
};

/// key = value lines; '#' starts a comment. Keys: families, n, m, k, steps,
/// closed (yes|no), corrupt (dtilde-constant). Lists are comma separated and
/// integer ranges are written a..b. Throws InvalidInput.
GridSpec parse_grid(std::string_view text);

struct InstanceResult {
  std::string key;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t closed_checks = 0;
  std::size_t reflection_failures = 0;  // reflection vs DP
  std::size_t closed_failures = 0;      // closed form vs DP
  std::string failure;                  // first failure, for the report
};

struct GridReport {
  std::vector<InstanceResult> instances;
  std::size_t skipped = 0;  // non-reflectable or invalid combinations
  bool passed() const;
  bool reflection_passed() const;
  bool closed_passed() const;
  std::size_t checks() const;
  std::size_t closed_checks() const;
};

/// One instance per (family, n, m, steps, start): reflection against the DP
/// for every interior end point and k in range, and the closed form where
/// one exists and the count is below 1e12.
GridReport run_grid(const GridSpec& grid);

void print_report(const GridReport& report, std::ostream& out);

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err);

struct RuinRow {
  int index;
  double probability;
};

struct RuinTable {
  int N = 0;
  int eta = 0;
  int k_max = 0;
  std::vector<RuinRow> first_passage;  // k = 1..k_max
  std::vector<RuinRow> survival;       // lambda = 1..N-1 after k_max bets
};

RuinTable ruin_table(int N, int eta, int k_max);
std::string format_ruin_csv(const RuinTable& table);
std::string format_ruin_json(const RuinTable& table);

} // namespace alcove::cli

#endif
