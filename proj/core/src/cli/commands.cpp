#include "infharm/cli/commands.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <vector>

#include "infharm/classify/predict.hpp"
#include "infharm/classify/verdict.hpp"
#include "infharm/errors.hpp"
#include "infharm/expr/format.hpp"

namespace infharm::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read map file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

calculus::Mode parse_mode(const std::string& text) {
  if (text == "exact") return calculus::Mode::Exact;
  if (text == "numeric") return calculus::Mode::NumericSampled;
  throw ValidationError("unknown mode '" + text + "' (expected exact or numeric)");
}

struct Loaded {
  spaces::ModelSpace domain;
  spaces::ModelSpace codomain;
  mapspec::MapSpec phi;
};

Loaded load(const MapArgs& args) {
  Loaded l{spaces::build_space(args.domain), spaces::build_space(args.codomain), {}};
  const std::string text = read_source(args.map_path);
  try {
    l.phi = mapspec::parse_mapspec_text(text, l.domain.dim());
  } catch (const ParseError& e) {
    throw ParseError(args.map_path, e.what());
  }
  return l;
}

void write_json(const json& doc, const std::string& path, std::ostream& out) {
  if (path == "-") {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(path);
  if (!file) throw ValidationError("cannot write report file '" + path + "'");
  file << doc.dump(2) << '\n';
}

bool text_output(const std::optional<std::string>& json_path) { return !json_path || *json_path != "-"; }

std::string render_point(const std::vector<Rational>& point) {
  std::string s = "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) s += ", ";
    s += point[i].to_string();
  }
  return s + ")";
}

void print_report(const RunReport& r, std::ostream& out) {
  out << "domain     " << r.domain << '\n';
  out << "codomain   " << r.codomain << '\n';
  out << "map        " << r.map_digest << '\n';
  out << "mode       " << r.mode << '\n';
  out << "energy     " << r.energy_density.value_or("(not available)") << '\n';
  for (std::size_t a = 0; a < r.tension.size(); ++a) out << "tension[" << a + 1 << "] " << r.tension[a] << '\n';
  out << "verdict    " << (r.harmonic ? "Zero" : "NonZero") << '\n';
  if (r.witness) {
    out << "witness    " << render_point(r.witness->point) << " component " << r.witness->component << " value "
        << r.witness->value << '\n';
  }
  if (r.prediction) {
    out << "predicted  " << (r.prediction->harmonic ? "Zero" : "NonZero") << ' ' << r.prediction->form
        << (r.prediction->agreement ? " (agrees)" : " (DISAGREES)") << '\n';
    if (!r.prediction->note.empty()) out << "           " << r.prediction->note << '\n';
  }
  if (!r.note.empty()) out << "note       " << r.note << '\n';
}

std::string outcome_line(const std::string& label, const classify::SearchOutcome& o) {
  std::ostringstream s;
  s << label << "  trials " << o.trials << "  agree " << o.agreements << "  harmonic " << o.harmonic
    << "  disagreements " << o.trials - o.agreements;
  if (o.flagged) s << "  flagged " << o.flagged;
  return s.str();
}

}  // namespace

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  const char* env = std::getenv("IH_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  const std::string text(env);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("IH_SEED must be an unsigned integer, got '" + text + "'");
  }
  return value;
}

RunReport build_report(const spaces::ModelSpace& domain, const spaces::ModelSpace& codomain,
                       const mapspec::MapSpec& phi, calculus::Mode mode, std::uint64_t seed) {
  const auto start = Clock::now();
  calculus::SamplingOptions options;
  options.seed = seed;
  const auto direct = calculus::infinity_tension(domain, codomain, phi, mode, options);

  RunReport r;
  r.domain = domain.name();
  r.codomain = codomain.name();
  r.map_digest = mapspec::digest(phi);
  r.mode = calculus::to_string(direct.mode);
  if (direct.energy_density) r.energy_density = expr::to_string(*direct.energy_density);
  for (const auto& c : direct.infinity_tension) r.tension.push_back(expr::to_string(c));
  r.harmonic = direct.zero;
  if (direct.witness) {
    r.witness = ReportWitness{direct.witness->point, direct.witness->component + 1, direct.witness->value};
  }
  if (const auto predicted = classify::predict(domain, codomain, phi)) {
    r.prediction = Prediction{predicted->harmonic, classify::describe(*predicted), predicted->harmonic == direct.zero,
                              predicted->literal_form, predicted->note};
  }
  r.note = direct.note;
  r.seed = seed;
  r.timing = {elapsed_ms(start), utc_timestamp()};
  return r;
}

int cmd_check(const MapArgs& args, const std::string& echo, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto mode = parse_mode(args.mode);
    const std::uint64_t seed = resolve_seed(args.seed);
    const Loaded l = load(args);
    RunReport r = build_report(l.domain, l.codomain, l.phi, mode, seed);
    r.command = echo;
    if (text_output(args.json_path)) print_report(r, out);
    if (args.json_path) write_json(serialize(r), *args.json_path, out);
    return r.harmonic ? kOk : kNegative;
  });
}

int cmd_energy(const MapArgs& args, const std::string& echo, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::uint64_t seed = resolve_seed(args.seed);
    const Loaded l = load(args);
    const auto start = Clock::now();
    const auto energy = calculus::energy_density(l.domain, l.codomain, l.phi);
    RunReport r;
    r.command = echo;
    r.domain = l.domain.name();
    r.codomain = l.codomain.name();
    r.map_digest = mapspec::digest(l.phi);
    r.mode = calculus::to_string(calculus::Mode::Exact);
    r.energy_density = expr::to_string(energy);
    r.seed = seed;
    r.timing = {elapsed_ms(start), utc_timestamp()};
    if (text_output(args.json_path)) out << *r.energy_density << '\n';
    if (args.json_path) write_json(serialize(r), *args.json_path, out);
    return kOk;
  });
}

int cmd_tension(const MapArgs& args, const std::string& echo, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto mode = parse_mode(args.mode);
    const std::uint64_t seed = resolve_seed(args.seed);
    const Loaded l = load(args);
    RunReport r = build_report(l.domain, l.codomain, l.phi, mode, seed);
    r.command = echo;
    if (text_output(args.json_path)) {
      for (const auto& c : r.tension) out << c << '\n';
      if (r.tension.empty()) out << (r.harmonic ? "Zero" : "NonZero") << " (sampled)\n";
    }
    if (args.json_path) write_json(serialize(r), *args.json_path, out);
    return r.harmonic ? kOk : kNegative;
  });
}

int cmd_suite(const SuiteArgs& args, const std::string& echo, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::uint64_t seed = resolve_seed(args.seed);
    std::vector<std::string> ids;
    if (args.theorem == "all") {
      ids = classify::suite_ids();
    } else {
      classify::suite_statement(args.theorem);
      ids.push_back(args.theorem);
    }
    if (args.trials == 0) throw ValidationError("--trials must be positive");

    const auto start = Clock::now();
    json theorems = json::array();
    bool passed = true;
    for (const auto& id : ids) {
      const auto result = classify::run_suite(id, args.trials, seed, args.workers);
      passed = passed && result.passed();
      if (text_output(args.json_path)) {
        out << outcome_line(id, result.outcome) << "  " << (result.passed() ? "PASS" : "FAIL") << '\n';
      }
      theorems.push_back(serialize(result));
    }
    if (args.json_path) {
      json doc{{"command", echo},
               {"seed", seed},
               {"trials", args.trials},
               {"theorems", std::move(theorems)},
               {"passed", passed},
               {"timing", {{"elapsed_ms", elapsed_ms(start)}, {"timestamp", utc_timestamp()}}}};
      write_json(doc, *args.json_path, out);
    }
    return passed ? kOk : kNegative;
  });
}

int cmd_search(const SearchArgs& args, const std::string& echo, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::uint64_t seed = resolve_seed(args.seed);
    const auto family = classify::parse_family(args.family);
    const auto domain = spaces::build_space(args.domain);
    const auto codomain = spaces::build_space(args.codomain);
    if (args.trials == 0) throw ValidationError("--trials must be positive");

    const auto start = Clock::now();
    const auto outcome = classify::falsify_search(family, domain, codomain, args.trials, seed, args.workers);
    json doc = serialize(outcome);
    doc["command"] = echo;
    doc["family"] = classify::to_string(family);
    doc["domain"] = domain.name();
    doc["codomain"] = codomain.name();
    doc["timing"] = {{"elapsed_ms", elapsed_ms(start)}, {"timestamp", utc_timestamp()}};

    if (text_output(args.json_path)) {
      out << outcome_line(classify::to_string(family) + " " + domain.name() + " -> " + codomain.name(), outcome)
          << '\n';
      if (!outcome.counterexamples.empty()) out << doc["counterexamples"].dump(2) << '\n';
    }
    if (args.json_path) write_json(doc, *args.json_path, out);
    return outcome.counterexamples.empty() ? kOk : kNegative;
  });
}

int cmd_spaces(std::ostream& out) {
  for (const auto& line : spaces::catalog_descriptions()) out << line << '\n';
  return kOk;
}

}  // namespace infharm::cli
