#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "infharm/classify/search.hpp"
#include "infharm/cli/commands.hpp"

namespace {

std::string suite_help() {
  std::string s = "Theorem suites:\n";
  for (const auto& id : infharm::classify::suite_ids()) {
    s += "  " + id + std::string(8 - std::min<std::size_t>(id.size(), 7), ' ') +
         infharm::classify::suite_statement(id) + "\n";
  }
  return s;
}

void add_map_flags(CLI::App* cmd, infharm::cli::MapArgs& args, std::optional<std::uint64_t>& seed) {
  cmd->add_option("--domain", args.domain, "Domain space, e.g. euclid:3, nil, sphere:2")->required();
  cmd->add_option("--codomain", args.codomain, "Codomain space")->required();
  cmd->add_option("--map", args.map_path, "Map document (JSON); - reads stdin")->required();
  cmd->add_option("--json", args.json_path, "Write the JSON report here; - prints it instead of text");
  cmd->add_option("--seed", seed, "Seed for numeric sampling (default $IH_SEED or 1)");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = infharm::cli;

  CLI::App app{"Exact infinity-harmonicity checks for maps between model spaces."};
  app.require_subcommand(1);
  app.footer("Exit status: 0 harmonic/verified, 1 not harmonic/counterexample, 2 usage or input error.\n\n" +
             suite_help());

  std::string echo;
  for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);

  cli::MapArgs map_args;
  std::optional<std::uint64_t> map_seed;

  auto* check = app.add_subcommand("check", "Decide whether a map is infinity-harmonic");
  add_map_flags(check, map_args, map_seed);
  check->add_option("--mode", map_args.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));

  auto* energy = app.add_subcommand("energy", "Print the energy density |d phi|^2");
  add_map_flags(energy, map_args, map_seed);

  auto* tension = app.add_subcommand("tension", "Print the infinity-tension components");
  add_map_flags(tension, map_args, map_seed);
  tension->add_option("--mode", map_args.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));

  cli::SuiteArgs suite_args;
  auto* suite = app.add_subcommand("suite", "Cross-validate theorem criteria on random maps");
  suite->add_option("--theorem", suite_args.theorem, "all or one suite id (see below)");
  suite->add_option("--trials", suite_args.trials, "Trials per suite")->check(CLI::PositiveNumber);
  suite->add_option("--seed", suite_args.seed, "Campaign seed (default $IH_SEED or 1)");
  suite->add_option("--workers", suite_args.workers, "Worker threads")->check(CLI::PositiveNumber);
  suite->add_option("--json", suite_args.json_path, "Write the JSON report here; - prints it instead of text");

  cli::SearchArgs search_args;
  auto* search = app.add_subcommand("search", "Search for maps where a criterion and direct computation disagree");
  search->add_option("--family", search_args.family, "linear, quadratic or holomorphic")->required();
  search->add_option("--domain", search_args.domain, "Domain space")->required();
  search->add_option("--codomain", search_args.codomain, "Codomain space")->required();
  search->add_option("--trials", search_args.trials, "Number of random maps")->check(CLI::PositiveNumber);
  search->add_option("--seed", search_args.seed, "Campaign seed (default $IH_SEED or 1)");
  search->add_option("--workers", search_args.workers, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("--json", search_args.json_path, "Write the JSON report here; - prints it instead of text");

  auto* spaces = app.add_subcommand("spaces", "List the supported space labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kInputError;
  }

  map_args.seed = map_seed;
  if (check->parsed()) return cli::cmd_check(map_args, echo, std::cout, std::cerr);
  if (energy->parsed()) return cli::cmd_energy(map_args, echo, std::cout, std::cerr);
  if (tension->parsed()) return cli::cmd_tension(map_args, echo, std::cout, std::cerr);
  if (suite->parsed()) return cli::cmd_suite(suite_args, echo, std::cout, std::cerr);
  if (search->parsed()) return cli::cmd_search(search_args, echo, std::cout, std::cerr);
  if (spaces->parsed()) return cli::cmd_spaces(std::cout);
  return cli::kInputError;
}
