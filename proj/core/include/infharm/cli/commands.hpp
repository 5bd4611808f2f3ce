#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "infharm/calculus/tension.hpp"
#include "infharm/cli/report.hpp"

namespace infharm::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,          // harmonic, verified, or a plain query succeeded
  kNegative = 1,    // not harmonic, or a counterexample/disagreement was found
  kInputError = 2,  // usage error, bad space label, malformed map, unsupported pair
};

constexpr std::uint64_t kDefaultSeed = 1;

/// --seed if given, else $IH_SEED, else kDefaultSeed. Throws ValidationError
/// on an unparsable IH_SEED.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

struct MapArgs {
  std::string domain;
  std::string codomain;
  /// Path of a map document; "-" reads standard input.
  std::string map_path;
  std::string mode = "exact";
  /// Where to write the JSON report; "-" writes it to `out` instead of text.
  std::optional<std::string> json_path;
  std::optional<std::uint64_t> seed;
};

struct SuiteArgs {
  std::string theorem = "all";
  std::size_t trials = 200;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::optional<std::string> json_path;
};

struct SearchArgs {
  std::string family;
  std::string domain;
  std::string codomain;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::optional<std::string> json_path;
};

/// Direct verdict, energy, tension and (when a theorem covers the pair) the
/// predicted verdict for one map.
RunReport build_report(const spaces::ModelSpace& domain, const spaces::ModelSpace& codomain,
                       const mapspec::MapSpec& phi, calculus::Mode mode, std::uint64_t seed);

/// Each command writes its result to `out` and diagnostics to `err`, and
/// returns one of the Exit codes. `echo` is recorded as the report's command.
int cmd_check(const MapArgs& args, const std::string& echo, std::ostream& out, std::ostream& err);
int cmd_energy(const MapArgs& args, const std::string& echo, std::ostream& out, std::ostream& err);
int cmd_tension(const MapArgs& args, const std::string& echo, std::ostream& out, std::ostream& err);
int cmd_suite(const SuiteArgs& args, const std::string& echo, std::ostream& out, std::ostream& err);
int cmd_search(const SearchArgs& args, const std::string& echo, std::ostream& out, std::ostream& err);
int cmd_spaces(std::ostream& out);

}  // namespace infharm::cli
