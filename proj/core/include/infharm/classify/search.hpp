#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infharm/mapspec/map_spec.hpp"
#include "infharm/spaces/model_space.hpp"

namespace infharm::classify {

using expr::Rational;
using mapspec::MapSpec;
using spaces::ModelSpace;

enum class Family { Linear, Quadratic, Holomorphic };

std::string to_string(Family f);
/// "linear", "quadratic" or "holomorphic"; throws ValidationError otherwise.
Family parse_family(const std::string& text);

/// A map on which the prediction and the direct computation disagree.
struct Counterexample {
  std::size_t trial = 0;
  std::string domain;
  std::string codomain;
  MapSpec map;
  bool predicted_harmonic = false;
  bool direct_zero = false;
  std::optional<std::vector<Rational>> witness;
  std::string detail;
};

/// A trial map whose direct infinity tension vanished symbolically.
struct ZeroMap {
  std::size_t trial = 0;
  std::string domain;
  std::string codomain;
  MapSpec map;
};

struct SearchOutcome {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  /// Trials the predictor called harmonic.
  std::size_t harmonic = 0;
  /// Harmonic holomorphic maps outside the literal lambda z_i + z0 form.
  std::size_t flagged = 0;
  std::vector<Counterexample> counterexamples;
  /// Exact Zero verdicts in trial order, for re-checking by sampling.
  std::vector<ZeroMap> zero_maps;
  std::uint64_t seed = 0;
};

/// Random maps of the family between the two spaces, each cross-validated.
/// Trial i draws from its own stream derived from (seed, i), so the outcome
/// does not depend on `workers`. Throws UnsupportedPair when no predictor
/// covers the family on this pair.
SearchOutcome falsify_search(Family family, const ModelSpace& domain, const ModelSpace& codomain, std::size_t trials,
                             std::uint64_t seed, unsigned workers = 1);

struct SuiteResult {
  std::string id;
  std::string statement;
  SearchOutcome outcome;

  bool passed() const { return outcome.counterexamples.empty() && outcome.agreements == outcome.trials; }
};

/// L2.1 T2.2 T2.3 L3.1 T3.2 T3.3 T4.1 T5.1 T5.2 T6.1 T6.2 T7.1 T7.2 T8.1 T8.3 PHM LEM1.1
const std::vector<std::string>& suite_ids();
/// One-line statement of what the suite checks.
std::string suite_statement(const std::string& id);
/// Throws ValidationError for an unknown id.
SuiteResult run_suite(const std::string& id, std::size_t trials, std::uint64_t seed, unsigned workers = 1);

}  // namespace infharm::classify
