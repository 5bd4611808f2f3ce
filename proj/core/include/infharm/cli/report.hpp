#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infharm/classify/search.hpp"
#include "infharm/expr/rational.hpp"

namespace infharm::cli {

using expr::Rational;

/// Wall-clock data. Excluded when reports are compared for determinism.
struct Timing {
  double elapsed_ms = 0.0;
  std::string timestamp;
  friend bool operator==(const Timing&, const Timing&) = default;
};

struct ReportWitness {
  std::vector<Rational> point;
  /// 1-based codomain component.
  std::size_t component = 0;
  double value = 0.0;
  friend bool operator==(const ReportWitness&, const ReportWitness&) = default;
};

struct Prediction {
  bool harmonic = false;
  /// Tag with arguments, e.g. "ProjectionThenLinear({2,3})".
  std::string form;
  bool agreement = true;
  bool literal_form = true;
  std::string note;
  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Result of check, energy or tension on one map.
struct RunReport {
  std::string command;
  std::string domain;
  std::string codomain;
  std::string map_digest;
  std::string mode;
  /// Absent when only the numeric route was available.
  std::optional<std::string> energy_density;
  /// Rendered infinity-tension components (empty in numeric mode).
  std::vector<std::string> tension;
  bool harmonic = false;
  std::optional<ReportWitness> witness;
  std::optional<Prediction> prediction;
  std::string note;
  std::uint64_t seed = 0;
  Timing timing;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json serialize(const RunReport& r);
/// Throws ParseError naming the offending field.
RunReport parse_report(const nlohmann::json& doc);

nlohmann::json serialize(const classify::Counterexample& c);
nlohmann::json serialize(const classify::SearchOutcome& o);
nlohmann::json serialize(const classify::SuiteResult& s);

/// The document without its "timing" member, for determinism comparisons.
nlohmann::json comparable(nlohmann::json doc);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace infharm::cli
