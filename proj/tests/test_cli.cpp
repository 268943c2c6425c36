#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "alcove/cli.hpp"

using namespace alcove;
using namespace alcove::cli;

namespace {

int run_binary(const std::string& args) {
  const std::string cmd = std::string(ALCOVE_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string grid(const std::string& name) { return std::string(ALCOVE_GRIDS) + "/" + name; }

} // namespace

TEST_CASE("count examples") {
  const auto a = run_count(make_count_query("ctilde", 1, "3", "coord", "1", "1", 2, "all"));
  const auto doc = nlohmann::json::parse(a.json);
  CHECK(doc["results"]["reflection"] == "1");
  CHECK(doc["results"]["dp"] == "1");
  CHECK(doc["results"]["closed"] == "1");
  CHECK(doc["agree"] == true);
  CHECK(a.exit_code == exit_ok);

  const auto b = run_count(make_count_query("circle", 2, "4", "forward", "1,0", "2,1", 2, "all"));
  CHECK(nlohmann::json::parse(b.json)["results"]["reflection"] == "1");
  CHECK(b.agree);

  for (const char* fam : {"ctilde", "btilde", "dtilde", "atilde", "finite-a"}) {
    const auto c = run_count(make_count_query(fam, 2, "3", "coord", "2,1", "2,1", 0, "all"));
    const auto d = nlohmann::json::parse(c.json);
    CHECK(d["results"]["reflection"] == "1");
    CHECK(d["results"]["dp"] == "1");
  }
}

TEST_CASE("count document layout") {
  const auto out = run_count(make_count_query("btilde", 2, "5/2", "diag", "3/2,1/2", "3/2,1/2", 4, "reflection"));
  const auto doc = nlohmann::json::parse(out.json);
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it)
    keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  CHECK(keys == std::vector<std::string>{"agree", "eta", "family", "k", "lambda", "m", "n", "results", "steps"});
  CHECK(doc["m"] == "5/2");
  CHECK(doc["eta"][0] == "3/2");
  CHECK(doc["results"].size() == 1);
  CHECK(doc["results"]["reflection"].is_string());
}

TEST_CASE("count documents round-trip") {
  const std::vector<CountQuery> queries = {
      make_count_query("ctilde", 2, "4", "coord", "2,1", "3,1", 5, "all"),
      make_count_query("dtilde", 3, "5/2", "diag", "5/2,3/2,1/2", "5/2,3/2,-1/2", 2, "all"),
      make_count_query("circle", 3, "5", "diag", "4,2,0", "3,1,4", 6, "closed"),
      make_count_query("finite-a", 2, "", "diag", "1,0", "1,0", 2, "dp"),
      make_count_query("atilde", 3, "4", "forward", "2,1,0", "3,2,1", 3, "all", true),
  };
  for (const auto& q : queries) {
    const auto first = run_count(q);
    const auto again = run_count(query_from_json(first.json));
    CHECK(first.json == again.json);
  }
}

TEST_CASE("large counts stay exact strings") {
  const auto out = run_count(make_count_query("ctilde", 3, "12", "coord", "7,5,3", "7,5,3", 40, "reflection"));
  const auto s = nlohmann::json::parse(out.json)["results"]["reflection"].get<std::string>();
  CHECK(s.size() > 17);
  const auto closed = run_count(make_count_query("ctilde", 3, "12", "coord", "7,5,3", "7,5,3", 40, "closed"));
  CHECK(nlohmann::json::parse(closed.json)["results"]["closed"] == "unavailable");
}

TEST_CASE("bad queries") {
  CHECK_THROWS_AS(make_count_query("etilde", 2, "3", "coord", "2,1", "2,1", 0, "all"), InvalidInput);
  CHECK_THROWS_AS(make_count_query("ctilde", 2, "3", "coord", "2,1", "2", 0, "all"), InvalidInput);
  CHECK_THROWS_AS(make_count_query("ctilde", 2, "3", "hop", "2,1", "2,1", 0, "all"), InvalidInput);
  CHECK_THROWS_AS(make_count_query("ctilde", 2, "3", "coord", "2,1", "2,1", -1, "all"), InvalidInput);
  CHECK_THROWS_AS(run_count(make_count_query("ctilde", 2, "3", "forward", "2,1", "2,1", 2, "all")),
                  PreconditionError);
  CHECK_THROWS_AS(run_count(make_count_query("ctilde", 2, "3", "coord", "3,1", "2,1", 2, "all")),
                  PreconditionError);
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("# comment\nfamilies = ctilde, circle\nn = 1..2, 4\nm = 2, 5/2\nk = 3..5\n"
                            "steps = diag\nclosed = no\ncorrupt = dtilde-constant\n");
  CHECK(g.families == std::vector<std::string>{"ctilde", "circle"});
  CHECK(g.n_values == std::vector<int>{1, 2, 4});
  CHECK(g.m_values == std::vector<HalfInteger>{HalfInteger::integer(2), HalfInteger::from_doubled(5)});
  CHECK(g.k_min == 3);
  CHECK(g.k_max == 5);
  CHECK(g.steps == std::vector<StepKind>{StepKind::Diagonal});
  CHECK_FALSE(g.check_closed);
  CHECK(g.scale == DnOddCosineScale::DoubledEntries);
  CHECK(parse_grid("").families.empty());
  CHECK_THROWS_AS(parse_grid("colour = red\n"), InvalidInput);
  CHECK_THROWS_AS(parse_grid("families = etilde\n"), InvalidInput);
  CHECK_THROWS_AS(parse_grid("n = 3..1\n"), InvalidInput);
  CHECK_THROWS_AS(parse_grid("just words\n"), InvalidInput);
}

TEST_CASE("verify reports every instance") {
  std::ostringstream out, err;
  CHECK(cmd_verify(grid("empty.grid"), out, err) == exit_ok);
  CHECK(out.str().find("0 instances") != std::string::npos);

  std::ostringstream out2, err2;
  CHECK(cmd_verify(grid("corrupt.grid"), out2, err2) == exit_disagree);
  CHECK(out2.str().find("FAIL dtilde n=2 m=2") != std::string::npos);

  std::ostringstream out3, err3;
  CHECK(cmd_verify(grid("does-not-exist.grid"), out3, err3) == exit_usage);

  const auto report = run_grid(parse_grid("families = ctilde, btilde\nn = 2\nm = 3\nk = 0..6\nsteps = coord, forward\n"));
  CHECK(report.passed());
  CHECK(report.skipped == 2);
  CHECK(!report.instances.empty());
  CHECK(std::is_sorted(report.instances.begin(), report.instances.end(),
                       [](const InstanceResult& a, const InstanceResult& b) { return a.key < b.key; }));
}

TEST_CASE("ruin tables") {
  const auto t = ruin_table(3, 1, 3);
  REQUIRE(t.first_passage.size() == 3);
  CHECK(t.first_passage[2].probability == doctest::Approx(0.125).epsilon(1e-12));
  const auto csv = format_ruin_csv(t);
  CHECK(csv.rfind("k,probability\n", 0) == 0);
  CHECK(csv.find("\n3,0.125\n") != std::string::npos);
  CHECK(csv.find("lambda,probability\n") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
  const auto t2 = ruin_table(2, 1, 1);
  CHECK(t2.first_passage[0].probability == doctest::Approx(0.5));
  const auto j = nlohmann::json::parse(format_ruin_json(t2));
  CHECK(j["first_passage"][0]["probability"] == 0.5);
  CHECK_THROWS_AS(ruin_table(3, 3, 2), InvalidInput);
  for (int N = 2; N <= 7; ++N)
    for (int eta = 1; eta < N; ++eta) {
      double total = 0;
      for (const auto& r : ruin_table(N, eta, 25).first_passage) {
        CHECK(r.probability >= 0.0);
        total += r.probability;
      }
      CHECK(total <= 1.0 + 1e-12);
    }
}

TEST_CASE("command-line exit codes") {
  CHECK(run_binary("count --family ctilde --n 1 --m 3 --steps coord --eta 1 --lambda 1 --k 2 --method all") == 0);
  CHECK(run_binary("count --family circle --n 2 --m 4 --steps forward --eta 1,0 --lambda 2,1 --k 2") == 0);
  CHECK(run_binary("count --family ctilde --n 2 --m 3 --eta 1 --lambda 1 --k 2") == exit_usage);
  CHECK(run_binary("count --family nope --n 1 --m 3 --eta 1 --lambda 1 --k 2") == exit_usage);
  CHECK(run_binary("count --family ctilde --n 1 --m 3 --eta 1 --lambda 1") == exit_usage);
  CHECK(run_binary("frobnicate") == exit_usage);
  CHECK(run_binary("verify " + grid("empty.grid")) == 0);
  CHECK(run_binary("verify " + grid("corrupt.grid")) == exit_disagree);
  CHECK(run_binary("verify /nonexistent/grid") == exit_usage);
  CHECK(run_binary("ruin --N 3 --eta 1 --kmax 3") == 0);
  CHECK(run_binary("ruin --N 3 --eta 1 --kmax 3 --format json") == 0);
  CHECK(run_binary("ruin --N 3 --eta 5 --kmax 3") == exit_usage);
}
