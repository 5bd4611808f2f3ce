#include "infharm/cli/report.hpp"

#include <chrono>
#include <ctime>

#include "infharm/errors.hpp"
#include "infharm/mapspec/map_spec.hpp"

namespace infharm::cli {

using nlohmann::json;

namespace {

const char* verdict_name(bool zero) { return zero ? "Zero" : "NonZero"; }

json write_point(const std::vector<Rational>& point) {
  json out = json::array();
  for (const auto& r : point) out.push_back(r.to_string());
  return out;
}

const json& field(const json& doc, const std::string& path, const char* key) {
  if (!doc.is_object()) throw ParseError(path, "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

template <typename T>
T get(const json& doc, const std::string& path, const char* key) {
  const json& v = field(doc, path, key);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError(join(path, key), "wrong type");
  }
}

bool parse_verdict(const json& doc, const std::string& path) {
  const auto text = get<std::string>(doc, path, "verdict");
  if (text == "Zero") return true;
  if (text == "NonZero") return false;
  throw ParseError(join(path, "verdict"), "expected \"Zero\" or \"NonZero\"");
}

std::vector<Rational> parse_point(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_string()) throw ParseError(at, "expected a rational string");
    try {
      out.push_back(Rational::parse(v[i].get<std::string>()));
    } catch (const Error& e) {
      throw ParseError(at, e.what());
    }
  }
  return out;
}

}  // namespace

json serialize(const RunReport& r) {
  json doc;
  doc["command"] = r.command;
  doc["domain"] = r.domain;
  doc["codomain"] = r.codomain;
  doc["map_digest"] = r.map_digest;
  doc["mode"] = r.mode;
  doc["energy_density"] = r.energy_density ? json(*r.energy_density) : json(nullptr);
  doc["tension"] = r.tension;
  doc["verdict"] = verdict_name(r.harmonic);
  if (r.witness) {
    doc["witness"] = {{"point", write_point(r.witness->point)},
                      {"component", r.witness->component},
                      {"value", r.witness->value}};
  } else {
    doc["witness"] = nullptr;
  }
  if (r.prediction) {
    doc["prediction"] = {{"verdict", verdict_name(r.prediction->harmonic)},
                         {"form", r.prediction->form},
                         {"agreement", r.prediction->agreement},
                         {"literal_form", r.prediction->literal_form},
                         {"note", r.prediction->note}};
  } else {
    doc["prediction"] = nullptr;
  }
  doc["note"] = r.note;
  doc["seed"] = r.seed;
  doc["timing"] = {{"elapsed_ms", r.timing.elapsed_ms}, {"timestamp", r.timing.timestamp}};
  return doc;
}

RunReport parse_report(const json& doc) {
  if (!doc.is_object()) throw ParseError("", "report must be a JSON object");
  RunReport r;
  r.command = get<std::string>(doc, "", "command");
  r.domain = get<std::string>(doc, "", "domain");
  r.codomain = get<std::string>(doc, "", "codomain");
  r.map_digest = get<std::string>(doc, "", "map_digest");
  r.mode = get<std::string>(doc, "", "mode");
  const json& energy = field(doc, "", "energy_density");
  if (!energy.is_null()) r.energy_density = get<std::string>(doc, "", "energy_density");
  r.tension = get<std::vector<std::string>>(doc, "", "tension");
  r.harmonic = parse_verdict(doc, "");
  const json& witness = field(doc, "", "witness");
  if (!witness.is_null()) {
    ReportWitness w;
    w.point = parse_point(field(witness, "witness", "point"), "witness.point");
    w.component = get<std::size_t>(witness, "witness", "component");
    w.value = get<double>(witness, "witness", "value");
    r.witness = std::move(w);
  }
  const json& prediction = field(doc, "", "prediction");
  if (!prediction.is_null()) {
    Prediction p;
    p.harmonic = parse_verdict(prediction, "prediction");
    p.form = get<std::string>(prediction, "prediction", "form");
    p.agreement = get<bool>(prediction, "prediction", "agreement");
    p.literal_form = get<bool>(prediction, "prediction", "literal_form");
    p.note = get<std::string>(prediction, "prediction", "note");
    r.prediction = std::move(p);
  }
  r.note = get<std::string>(doc, "", "note");
  r.seed = get<std::uint64_t>(doc, "", "seed");
  const json& timing = field(doc, "", "timing");
  r.timing.elapsed_ms = get<double>(timing, "timing", "elapsed_ms");
  r.timing.timestamp = get<std::string>(timing, "timing", "timestamp");
  return r;
}

json serialize(const classify::Counterexample& c) {
  return {{"trial", c.trial},
          {"domain", c.domain},
          {"codomain", c.codomain},
          {"map", mapspec::serialize(c.map)},
          {"predicted", verdict_name(c.predicted_harmonic)},
          {"direct", verdict_name(c.direct_zero)},
          {"witness", c.witness ? write_point(*c.witness) : json(nullptr)},
          {"detail", c.detail}};
}

json serialize(const classify::SearchOutcome& o) {
  json counterexamples = json::array();
  for (const auto& c : o.counterexamples) counterexamples.push_back(serialize(c));
  return {{"trials", o.trials},
          {"agreements", o.agreements},
          {"harmonic", o.harmonic},
          {"flagged", o.flagged},
          {"disagreements", o.trials - o.agreements},
          {"counterexamples", std::move(counterexamples)},
          {"seed", o.seed}};
}

json serialize(const classify::SuiteResult& s) {
  json doc = serialize(s.outcome);
  doc["id"] = s.id;
  doc["statement"] = s.statement;
  doc["passed"] = s.passed();
  return doc;
}

json comparable(json doc) {
  if (doc.is_object()) doc.erase("timing");
  return doc;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace infharm::cli
