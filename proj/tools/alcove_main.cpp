#include <iostream>

#include <CLI11.hpp>

#include "alcove/cli.hpp"

int main(int argc, char** argv) {
  using namespace alcove;

  CLI::App app{"Exact counts of lattice walks in affine Weyl alcoves"};
  app.require_subcommand(1);

  std::string family, m, steps = "coord", eta, lambda, method = "all";
  int n = 1, k = 0;
  bool zero_step = false;
  auto* count = app.add_subcommand("count", "Count confined walks between two points");
  count->add_option("--family", family, "ctilde|btilde|dtilde|atilde|circle|finite-a")
      ->required()
      ->check(CLI::IsMember({"ctilde", "btilde", "dtilde", "atilde", "circle", "finite-a"}));
  count->add_option("--n", n, "Dimension or number of particles")->required();
  count->add_option("--m", m, "Alcove scale or circle size (half-integers as 5/2)");
  count->add_option("--steps", steps, "coord|diag|forward")->check(CLI::IsMember({"coord", "diag", "forward"}));
  count->add_option("--eta", eta, "Start point, comma separated")->required();
  count->add_option("--lambda", lambda, "End point, comma separated")->required();
  count->add_option("--k", k, "Number of steps")->required();
  count->add_option("--method", method, "reflection|dp|closed|all")
      ->check(CLI::IsMember({"reflection", "dp", "closed", "all"}));
  count->add_flag("--zero-step", zero_step, "Allow standing still");

  std::string grid_path;
  auto* verify = app.add_subcommand("verify", "Cross-check every method over a grid file");
  verify->add_option("grid", grid_path, "Grid file")->required();

  int N = 0, start = 0, kmax = 0;
  std::string format = "csv";
  auto* ruin = app.add_subcommand("ruin", "Gambler's ruin first-passage and survival table");
  ruin->add_option("--N", N, "Total chips")->required();
  ruin->add_option("--eta", start, "Starting chips")->required();
  ruin->add_option("--kmax", kmax, "Last bet")->required();
  ruin->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_usage;
  }

  try {
    if (*count) {
      const auto query = cli::make_count_query(family, n, m, steps, eta, lambda, k, method, zero_step);
      const auto outcome = cli::run_count(query);
      std::cout << outcome.json << '\n';
      return outcome.exit_code;
    }
    if (*verify)
      return cli::cmd_verify(grid_path, std::cout, std::cerr);
    if (*ruin) {
      const auto table = cli::ruin_table(N, start, kmax);
      std::cout << (format == "json" ? cli::format_ruin_json(table) : cli::format_ruin_csv(table));
      return cli::exit_ok;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_usage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_usage;
  } catch (const ConsistencyError& e) {
    std::cerr << "inconsistent: " << e.what() << '\n';
    return cli::exit_disagree;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return cli::exit_usage;
}
