#include "alcove/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "alcove/oracle.hpp"

namespace alcove::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr double closed_count_limit = 1e12;
constexpr double closed_exact_limit = 9007199254740992.0;  // 2^53

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = s.find(',');
    auto item = trim(s.substr(0, comma));
    if (!item.empty())
      out.push_back(std::move(item));
    if (comma == std::string_view::npos)
      break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

int parse_int(std::string_view s) {
  const auto t = trim(s);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw InvalidInput("not an integer: '" + t + "'");
  return value;
}

/// "a..b" or a single integer.
std::pair<int, int> parse_range(std::string_view s) {
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) {
    const int v = parse_int(s);
    return {v, v};
  }
  const int a = parse_int(s.substr(0, dots));
  const int b = parse_int(s.substr(dots + 2));
  if (b < a)
    throw InvalidInput("empty range '" + std::string(s) + "'");
  return {a, b};
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) {
    const auto [a, b] = parse_range(item);
    for (int v = a; v <= b; ++v)
      out.push_back(v);
  }
  return out;
}

Json point_json(const LatticePoint& p) {
  Json a = Json::array();
  for (int i = 0; i < p.n(); ++i)
    a.push_back(p[i].to_string());
  return a;
}

LatticePoint point_from_json(const Json& a) {
  std::vector<HalfInteger> v;
  for (const auto& x : a)
    v.push_back(x.is_string() ? HalfInteger::parse(x.get<std::string>())
                              : HalfInteger::integer(x.get<std::int64_t>()));
  return LatticePoint::from_halves(v);
}

std::string closed_string(std::optional<double> value, int n, bool& inconsistent) {
  if (!value || n > max_leibniz_size || std::abs(*value) >= closed_exact_limit)
    return "unavailable";
  try {
    return round_count(*value).str();
  } catch (const ConsistencyError&) {
    inconsistent = true;
    std::ostringstream os;
    os << std::setprecision(17) << "inconsistent:" << *value;
    return os.str();
  }
}

ChamberSpec chamber_for(const std::string& family, int n, std::optional<HalfInteger> m) {
  ChamberSpec c;
  c.family = parse_family(family);
  c.n = n;
  if (c.family != Family::FiniteA) {
    if (!m)
      throw InvalidInput("--m is required for family " + family);
    c.m = *m;
  }
  c.validate();
  return c;
}

std::string key_of(std::string_view family, int n, std::optional<HalfInteger> m, StepKind steps,
                   const LatticePoint& eta) {
  std::ostringstream os;
  os << family << " n=" << n << " m=" << (m ? m->to_string() : "-") << " steps=" << alcove::to_string(steps)
     << " eta=" << eta.to_string();
  return os.str();
}

/// Starts with the last coordinate at 0 (or 1/2 on the half lattice) for the
/// chambers that are invariant under shifting along (1, ..., 1).
std::vector<LatticePoint> anchored_starts(const ChamberSpec& chamber, const StepSet& steps) {
  const std::int64_t hi = chamber.family == Family::FiniteA ? 2 * chamber.n : chamber.m.doubled();
  std::vector<LatticePoint> out;
  for (auto& p : interior_points(chamber, steps, 0, hi))
    if (p.doubled(chamber.n - 1) <= 1)
      out.push_back(std::move(p));
  return out;
}

/// Integer configurations strictly decreasing inside [0, m).
std::vector<LatticePoint> circle_starts(int n, HalfInteger m) {
  const ChamberSpec sorted{Family::FiniteA, n, HalfInteger::integer(1)};
  return interior_points(sorted, StepSet(StepKind::Coordinate, n), 0, m.doubled() - 2);
}

bool check_closed(double value, const BigCount& exact, std::string& why) {
  const double e = exact.convert_to<double>();
  const double err = std::abs(value - e) / std::max(1.0, e);
  if (err >= 1e-6) {
    std::ostringstream os;
    os << std::setprecision(12) << "closed form " << value << " vs " << exact << " (relative error " << err << ")";
    why = os.str();
    return false;
  }
  try {
    if (round_count(value) != exact) {
      why = "closed form rounds to a different count than " + exact.str();
      return false;
    }
  } catch (const ConsistencyError& ex) {
    why = ex.what();
    return false;
  }
  return true;
}

void record_failure(InstanceResult& r, const LatticePoint& lambda, int k, const std::string& what, bool closed) {
  ++(closed ? r.closed_failures : r.reflection_failures);
  if (!r.passed)
    return;
  r.passed = false;
  r.failure = "lambda=" + lambda.to_string() + " k=" + std::to_string(k) + ": " + what;
}

InstanceResult run_alcove_instance(const GridSpec& grid, const ChamberSpec& chamber, const StepSet& steps,
                                   const std::string& family, const LatticePoint& eta,
                                   const std::vector<LatticePoint>& bounded_ends) {
  InstanceResult r;
  r.key = key_of(family, chamber.n,
                 chamber.family == Family::FiniteA ? std::nullopt : std::optional<HalfInteger>(chamber.m),
                 steps.kind(), eta);
  try {
    const auto dist = oracle::dp_distributions(chamber, steps, eta, grid.k_max);
    std::vector<LatticePoint> ends = bounded_ends;
    if (ends.empty()) {
      std::set<std::vector<std::int64_t>> seen;
      for (const auto& layer : dist)
        for (const auto& [p, c] : layer)
          seen.insert(std::vector<std::int64_t>(p.data(), p.data() + p.size()));
      for (const auto& v : seen)
        ends.push_back(LatticePoint(Eigen::Map<const Coords>(v.data(), static_cast<Eigen::Index>(v.size()))));
    }
    for (const auto& lambda : ends) {
      const auto refl = count_alcove_series(chamber, steps, eta, lambda, grid.k_max);
      std::optional<std::vector<double>> closed;
      if (grid.check_closed)
        closed = closed_form_alcove_series(chamber, steps, eta, lambda, grid.k_max, grid.scale);
      for (int k = grid.k_min; k <= grid.k_max; ++k) {
        const auto& layer = dist[static_cast<std::size_t>(k)];
        const auto it = layer.find(lambda.doubled());
        const BigCount dp = it == layer.end() ? BigCount(0) : it->second;
        ++r.checks;
        if (refl[static_cast<std::size_t>(k)] != dp)
          record_failure(r, lambda, k, "reflection " + refl[static_cast<std::size_t>(k)].str() + " vs dp " + dp.str(), false);
        if (closed && dp < BigCount(static_cast<long long>(closed_count_limit))) {
          ++r.closed_checks;
          std::string why;
          if (!check_closed((*closed)[static_cast<std::size_t>(k)], dp, why))
            record_failure(r, lambda, k, why, true);
        }
      }
    }
  } catch (const std::exception& ex) {
    r.passed = false;
    ++r.reflection_failures;
    r.failure = ex.what();
  }
  return r;
}

InstanceResult run_circle_instance(const GridSpec& grid, HalfInteger m, const StepSet& steps,
                                   const LatticePoint& eta) {
  InstanceResult r;
  r.key = key_of("circle", eta.n(), m, steps.kind(), eta);
  try {
    const auto dist = oracle::circle_dp_distributions(m, steps, eta, grid.k_max);
    std::set<std::vector<std::int64_t>> seen;
    for (const auto& layer : dist)
      for (const auto& [p, c] : layer)
        seen.insert(std::vector<std::int64_t>(p.data(), p.data() + p.size()));
    for (const auto& v : seen) {
      const LatticePoint lambda(Eigen::Map<const Coords>(v.data(), static_cast<Eigen::Index>(v.size())));
      std::optional<std::vector<double>> closed;
      if (grid.check_closed)
        closed = closed_form_circle_series(m, steps, eta, lambda, grid.k_max);
      for (int k = grid.k_min; k <= grid.k_max; ++k) {
        const auto& layer = dist[static_cast<std::size_t>(k)];
        const auto it = layer.find(lambda.doubled());
        const BigCount dp = it == layer.end() ? BigCount(0) : it->second;
        const BigCount refl = count_circle(m, eta.n(), steps, eta, lambda, k);
        ++r.checks;
        if (refl != dp)
          record_failure(r, lambda, k, "reflection " + refl.str() + " vs dp " + dp.str(), false);
        if (closed && dp < BigCount(static_cast<long long>(closed_count_limit))) {
          ++r.closed_checks;
          std::string why;
          if (!check_closed((*closed)[static_cast<std::size_t>(k)], dp, why))
            record_failure(r, lambda, k, why, true);
        }
      }
    }
  } catch (const std::exception& ex) {
    r.passed = false;
    ++r.reflection_failures;
    r.failure = ex.what();
  }
  return r;
}

} // namespace

Method parse_method(std::string_view text) {
  if (text == "reflection")
    return Method::Reflection;
  if (text == "dp")
    return Method::Dp;
  if (text == "closed")
    return Method::Closed;
  if (text == "all")
    return Method::All;
  throw InvalidInput("unknown method '" + std::string(text) + "'");
}

std::string_view to_string(Method method) {
  switch (method) {
  case Method::Reflection:
    return "reflection";
  case Method::Dp:
    return "dp";
  case Method::Closed:
    return "closed";
  case Method::All:
    return "all";
  }
  return "all";
}

bool is_circle_family(std::string_view name) { return name == "circle"; }

Family parse_family(std::string_view name) {
  if (name == "atilde")
    return Family::AffineA;
  if (name == "btilde")
    return Family::AffineB;
  if (name == "ctilde")
    return Family::AffineC;
  if (name == "dtilde")
    return Family::AffineD;
  if (name == "finite-a")
    return Family::FiniteA;
  throw InvalidInput("unknown family '" + std::string(name) + "'");
}

CountQuery make_count_query(std::string_view family, int n, std::string_view m, std::string_view steps,
                            std::string_view eta, std::string_view lambda, int k, std::string_view method,
                            bool zero_step) {
  CountQuery q;
  q.family = std::string(family);
  if (!is_circle_family(family))
    parse_family(family);
  q.n = n;
  if (!trim(m).empty())
    q.m = HalfInteger::parse(trim(m));
  q.steps = parse_step_kind(steps);
  q.eta = LatticePoint::parse(eta);
  q.lambda = LatticePoint::parse(lambda);
  q.k = k;
  q.method = parse_method(method);
  q.zero_step = zero_step;
  if (n < 1)
    throw InvalidInput("--n must be positive");
  if (k < 0)
    throw InvalidInput("--k must be nonnegative");
  if (q.eta.n() != n || q.lambda.n() != n)
    throw InvalidInput("--eta and --lambda need exactly n coordinates");
  return q;
}

CountOutcome run_count(const CountQuery& q) {
  const StepSet steps(q.steps, q.n, q.zero_step);
  const bool all = q.method == Method::All;
  const bool want_refl = all || q.method == Method::Reflection;
  const bool want_dp = all || q.method == Method::Dp;
  const bool want_closed = all || q.method == Method::Closed;

  Json results = Json::object();
  bool inconsistent = false;
  if (is_circle_family(q.family)) {
    if (!q.m)
      throw InvalidInput("--m is required for the circle");
    if (want_refl)
      results["reflection"] = count_circle(*q.m, q.n, steps, q.eta, q.lambda, q.k).str();
    if (want_dp) {
      try {
        results["dp"] = oracle::circle_dp_count(*q.m, q.n, steps, q.eta, q.lambda, q.k).str();
      } catch (const ResourceError&) {
        results["dp"] = "unavailable";
      }
    }
    if (want_closed)
      results["closed"] =
          closed_string(closed_form_circle(*q.m, steps, q.eta, q.lambda, q.k), q.n, inconsistent);
  } else {
    const ChamberSpec chamber = chamber_for(q.family, q.n, q.m);
    if (want_refl)
      results["reflection"] = count_alcove(chamber, steps, q.eta, q.lambda, q.k).str();
    if (want_dp) {
      try {
        results["dp"] = oracle::dp_count(chamber, steps, q.eta, q.lambda, q.k).str();
      } catch (const ResourceError&) {
        results["dp"] = "unavailable";
      }
    }
    if (want_closed) {
      if (!is_reflectable(steps, chamber, &q.eta))
        results["closed"] = "unavailable";
      else
        results["closed"] =
            closed_string(closed_form_alcove(chamber, steps, q.eta, q.lambda, q.k), q.n, inconsistent);
    }
  }

  std::optional<std::string> first;
  bool agree = !inconsistent;
  for (const auto& [name, value] : results.items()) {
    const auto s = value.get<std::string>();
    if (s == "unavailable" || s.starts_with("inconsistent"))
      continue;
    if (!first)
      first = s;
    else if (*first != s)
      agree = false;
  }

  Json doc;
  doc["family"] = q.family;
  doc["n"] = q.n;
  doc["m"] = q.m ? Json(q.m->to_string()) : Json(nullptr);
  doc["steps"] = std::string(alcove::to_string(q.steps));
  doc["eta"] = point_json(q.eta);
  doc["lambda"] = point_json(q.lambda);
  doc["k"] = q.k;
  if (q.zero_step)
    doc["zero_step"] = true;
  doc["results"] = results;
  doc["agree"] = agree;

  CountOutcome out;
  out.json = doc.dump(2);
  out.agree = agree;
  out.exit_code = agree ? exit_ok : exit_disagree;
  return out;
}

CountQuery query_from_json(std::string_view json) {
  const Json doc = Json::parse(json);
  CountQuery q;
  q.family = doc.at("family").get<std::string>();
  q.n = doc.at("n").get<int>();
  if (!doc.at("m").is_null())
    q.m = HalfInteger::parse(doc.at("m").get<std::string>());
  q.steps = parse_step_kind(doc.at("steps").get<std::string>());
  q.eta = point_from_json(doc.at("eta"));
  q.lambda = point_from_json(doc.at("lambda"));
  q.k = doc.at("k").get<int>();
  q.zero_step = doc.value("zero_step", false);
  const auto& results = doc.at("results");
  if (results.size() == 1)
    q.method = parse_method(results.begin().key());
  else
    q.method = Method::All;
  return q;
}

GridSpec parse_grid(std::string_view text) {
  GridSpec g;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto body = trim(line);
    if (body.empty())
      continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(std::string_view(body).substr(0, eq));
    const auto value = trim(std::string_view(body).substr(eq + 1));
    if (key == "families") {
      g.families = split_list(value);
      for (const auto& f : g.families)
        if (!is_circle_family(f))
          parse_family(f);
    } else if (key == "n") {
      g.n_values = parse_int_list(value);
    } else if (key == "m") {
      g.m_values.clear();
      for (const auto& item : split_list(value)) {
        if (item.find("..") != std::string::npos) {
          const auto [a, b] = parse_range(item);
          for (int v = a; v <= b; ++v)
            g.m_values.push_back(HalfInteger::integer(v));
        } else {
          g.m_values.push_back(HalfInteger::parse(item));
        }
      }
    } else if (key == "k") {
      std::tie(g.k_min, g.k_max) = parse_range(value);
      if (g.k_min < 0)
        throw InvalidInput("k must be nonnegative");
    } else if (key == "steps") {
      g.steps.clear();
      for (const auto& item : split_list(value))
        g.steps.push_back(parse_step_kind(item));
    } else if (key == "closed") {
      if (value != "yes" && value != "no")
        throw InvalidInput("closed must be yes or no");
      g.check_closed = value == "yes";
    } else if (key == "corrupt") {
      if (value == "dtilde-constant")
        g.scale = DnOddCosineScale::DoubledEntries;
      else if (value != "none")
        throw InvalidInput("unknown corruption '" + value + "'");
    } else {
      throw InvalidInput("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return g;
}

bool GridReport::passed() const {
  return std::all_of(instances.begin(), instances.end(), [](const InstanceResult& r) { return r.passed; });
}

bool GridReport::reflection_passed() const {
  return std::all_of(instances.begin(), instances.end(),
                     [](const InstanceResult& r) { return r.reflection_failures == 0; });
}

bool GridReport::closed_passed() const {
  return std::all_of(instances.begin(), instances.end(),
                     [](const InstanceResult& r) { return r.closed_failures == 0; });
}

std::size_t GridReport::checks() const {
  std::size_t s = 0;
  for (const auto& r : instances)
    s += r.checks;
  return s;
}

std::size_t GridReport::closed_checks() const {
  std::size_t s = 0;
  for (const auto& r : instances)
    s += r.closed_checks;
  return s;
}

GridReport run_grid(const GridSpec& grid) {
  GridReport report;
  for (const auto& family : grid.families) {
    for (const int n : grid.n_values) {
      for (const auto step_kind : grid.steps) {
        const StepSet steps(step_kind, n);
        if (is_circle_family(family)) {
          for (const auto m : grid.m_values) {
            if (!m.is_integer() || m.doubled() <= 0) {
              ++report.skipped;
              continue;
            }
            for (const auto& eta : circle_starts(n, m))
              report.instances.push_back(run_circle_instance(grid, m, steps, eta));
          }
          continue;
        }
        const Family f = parse_family(family);
        // The finite chamber has no scale, so it runs once per n.
        std::vector<HalfInteger> ms = f == Family::FiniteA ? std::vector<HalfInteger>{HalfInteger::integer(1)}
                                                           : grid.m_values;
        for (const auto m : ms) {
          const ChamberSpec chamber{f, n, m};
          try {
            chamber.validate();
          } catch (const InvalidInput&) {
            ++report.skipped;
            continue;
          }
          const bool bounded = f == Family::AffineB || f == Family::AffineC || f == Family::AffineD;
          std::vector<LatticePoint> starts;
          if (bounded) {
            const auto [lo, hi] = interior_box(chamber);
            starts = interior_points(chamber, steps, lo, hi);
          } else {
            starts = anchored_starts(chamber, steps);
          }
          const std::vector<LatticePoint> ends = bounded ? starts : std::vector<LatticePoint>{};
          bool any = false;
          for (const auto& eta : starts) {
            if (!is_reflectable(steps, chamber, &eta))
              continue;
            any = true;
            report.instances.push_back(run_alcove_instance(grid, chamber, steps, family, eta, ends));
          }
          if (!any)
            ++report.skipped;
        }
      }
    }
  }
  std::stable_sort(report.instances.begin(), report.instances.end(),
                   [](const InstanceResult& a, const InstanceResult& b) { return a.key < b.key; });
  return report;
}

void print_report(const GridReport& report, std::ostream& out) {
  std::size_t failed = 0;
  for (const auto& r : report.instances) {
    out << (r.passed ? "PASS " : "FAIL ") << r.key << "  [" << r.checks << " checks, " << r.closed_checks
        << " closed]";
    if (!r.passed) {
      out << "  " << r.failure;
      ++failed;
    }
    out << '\n';
  }
  out << report.instances.size() << " instances, " << failed << " failed, " << report.checks() << " checks, "
      << report.closed_checks() << " closed-form checks, " << report.skipped << " combinations skipped\n";
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "cannot read grid file " << path << '\n';
    return exit_usage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  GridSpec grid;
  try {
    grid = parse_grid(buffer.str());
  } catch (const InvalidInput& ex) {
    err << path << ": " << ex.what() << '\n';
    return exit_usage;
  }
  const auto report = run_grid(grid);
  print_report(report, out);
  return report.passed() ? exit_ok : exit_disagree;
}

RuinTable ruin_table(int N, int eta, int k_max) {
  if (N < 2 || eta <= 0 || eta >= N)
    throw InvalidInput("need 0 < eta < N");
  if (k_max < 1)
    throw InvalidInput("kmax must be at least 1");
  const auto clean = [](double p) { return std::abs(p) < 1e-15 ? 0.0 : p; };
  RuinTable t;
  t.N = N;
  t.eta = eta;
  t.k_max = k_max;
  for (int k = 1; k <= k_max; ++k)
    t.first_passage.push_back({k, clean(gambler_first_passage(N, eta, k))});
  for (int lambda = 1; lambda < N; ++lambda)
    t.survival.push_back({lambda, clean(gambler_position(N, eta, lambda, k_max))});
  return t;
}

std::string format_ruin_csv(const RuinTable& table) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "k,probability\n";
  for (const auto& r : table.first_passage)
    os << r.index << ',' << r.probability << '\n';
  os << '\n' << "lambda,probability\n";
  for (const auto& r : table.survival)
    os << r.index << ',' << r.probability << '\n';
  return os.str();
}

std::string format_ruin_json(const RuinTable& table) {
  const auto round12 = [](double p) {
    std::ostringstream os;
    os << std::setprecision(12) << p;
    return std::stod(os.str());
  };
  Json doc;
  doc["N"] = table.N;
  doc["eta"] = table.eta;
  doc["kmax"] = table.k_max;
  Json fp = Json::array();
  for (const auto& r : table.first_passage)
    fp.push_back({{"k", r.index}, {"probability", round12(r.probability)}});
  Json surv = Json::array();
  for (const auto& r : table.survival)
    surv.push_back({{"lambda", r.index}, {"probability", round12(r.probability)}});
  doc["first_passage"] = fp;
  doc["survival"] = surv;
  return doc.dump(2) + "\n";
}

} // namespace alcove::cli
