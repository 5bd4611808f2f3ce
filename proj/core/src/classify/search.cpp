#include "infharm/classify/search.hpp"

#include <exception>
#include <functional>
#include <map>
#include <thread>

#include "infharm/calculus/operators.hpp"
#include "infharm/calculus/tension.hpp"
#include "infharm/classify/predict.hpp"
#include "infharm/classify/sampling.hpp"
#include "infharm/errors.hpp"
#include "infharm/random.hpp"

namespace infharm::classify {
namespace {

using spaces::build_space;
using spaces::SpaceKind;
using spaces::SpaceLabel;

struct TrialResult {
  bool agree = true;
  bool harmonic = false;
  bool flagged = false;
  std::optional<Counterexample> counterexample;
  std::optional<ZeroMap> zero_map;
};

using TrialFn = std::function<TrialResult(Rng&, std::size_t)>;

SearchOutcome run_trials(std::size_t trials, std::uint64_t seed, unsigned workers, const TrialFn& fn) {
  std::vector<TrialResult> results(trials);
  const unsigned count = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < trials; i += count) {
        Rng rng(stream_seed(seed, i));
        results[i] = fn(rng, i);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (count == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SearchOutcome out;
  out.trials = trials;
  out.seed = seed;
  for (auto& r : results) {
    out.agreements += r.agree ? 1 : 0;
    out.harmonic += r.harmonic ? 1 : 0;
    out.flagged += r.flagged ? 1 : 0;
    if (r.counterexample) out.counterexamples.push_back(std::move(*r.counterexample));
    if (r.zero_map) out.zero_maps.push_back(std::move(*r.zero_map));
  }
  return out;
}

std::size_t pick(Rng& rng, std::size_t size) { return static_cast<std::size_t>(rng.uniform(0, static_cast<long>(size) - 1)); }

TrialResult compare(std::size_t trial, const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi,
                    const Verdict& predicted, const calculus::TensionReport& direct, bool agree) {
  TrialResult r;
  r.agree = agree;
  r.harmonic = predicted.harmonic;
  r.flagged = predicted.harmonic && !predicted.literal_form;
  if (direct.zero && direct.mode == calculus::Mode::Exact) r.zero_map = ZeroMap{trial, domain.name(), codomain.name(), phi};
  if (!agree) {
    Counterexample c{trial, domain.name(), codomain.name(), phi, predicted.harmonic, direct.zero, std::nullopt, describe(predicted)};
    if (direct.witness) c.witness = direct.witness->point;
    r.counterexample = std::move(c);
  }
  return r;
}

TrialResult validate(std::size_t trial, const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi) {
  const CrossValidation cv = cross_validate(domain, codomain, phi);
  if (!cv.predicted) throw UnsupportedPair("no predictor for " + domain.name() + " -> " + codomain.name());
  return compare(trial, domain, codomain, phi, *cv.predicted, cv.direct, cv.agree);
}

using Pair = std::pair<ModelSpace, ModelSpace>;
using Generator = std::function<MapSpec(Rng&, const ModelSpace&, const ModelSpace&)>;

std::vector<Pair> pairs(const std::vector<std::string>& domains, const std::vector<std::string>& codomains) {
  std::vector<Pair> out;
  for (const auto& d : domains) {
    for (const auto& c : codomains) out.emplace_back(build_space(d), build_space(c));
  }
  return out;
}

std::vector<std::string> euclid(std::size_t lo, std::size_t hi) {
  std::vector<std::string> out;
  for (std::size_t k = lo; k <= hi; ++k) out.push_back("euclid:" + std::to_string(k));
  return out;
}

std::vector<std::string> spheres(std::size_t lo, std::size_t hi) {
  std::vector<std::string> out;
  for (std::size_t k = lo; k <= hi; ++k) out.push_back("sphere:" + std::to_string(k));
  return out;
}

MapSpec pure_quadratic(Rng& rng, const ModelSpace& domain, const ModelSpace& codomain) {
  std::vector<RationalMatrix> quad;
  for (std::size_t k = 0; k < codomain.dim(); ++k) quad.push_back(random_symmetric(rng, domain.dim()));
  return MapSpec::quadratic(std::move(quad), RationalMatrix(codomain.dim(), domain.dim()), {});
}

MapSpec family_map(Family family, Rng& rng, const ModelSpace& domain, const ModelSpace& codomain) {
  switch (family) {
    case Family::Linear: return random_linear_map(rng, domain, codomain);
    case Family::Quadratic: return random_quadratic_map(rng, domain, codomain);
    case Family::Holomorphic: return MapSpec::holomorphic(random_holomorphic(rng, domain.dim() / 2, codomain.dim() / 2));
  }
  throw ValidationError("unknown family");
}

TrialFn cross_validated(std::vector<Pair> pool, Generator gen) {
  return [pool = std::move(pool), gen = std::move(gen)](Rng& rng, std::size_t trial) {
    const auto& [d, c] = pool[pick(rng, pool.size())];
    return validate(trial, d, c, gen(rng, d, c));
  };
}

TrialResult lemma_trial(Rng& rng, std::size_t trial) {
  const auto m = static_cast<std::size_t>(rng.uniform(1, 4));
  const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
  std::vector<RationalMatrix> quad;
  for (std::size_t k = 0; k < n; ++k) quad.push_back(random_symmetric(rng, m));
  const LemmaCheck check = matrix_lemma_condition(quad);
  bool all_zero = true;
  for (const auto& q : quad) all_zero = all_zero && q.is_zero();
  TrialResult r;
  r.agree = check.holds == all_zero;
  r.harmonic = check.holds;
  if (!r.agree) {
    r.counterexample = Counterexample{trial, "euclid:" + std::to_string(m), "euclid:" + std::to_string(n),
                                      MapSpec::quadratic(quad, RationalMatrix(n, m), {}), check.holds, all_zero,
                                      std::nullopt, "anticommutator condition holds for nonzero matrices"};
  }
  return r;
}

TrialFn conformal_trials() {
  const std::vector<std::string> domains = {"euclid:2", "sphere:2", "conformal:2:1 + y^2", "conformal:2:1 + x^2 + y^2"};
  std::vector<std::string> codomains = {"euclid:1", "euclid:2", "sphere:2", "sphere:3", "conformal:2:1 + x^2 + y^2"};
  return [pool = pairs(domains, codomains)](Rng& rng, std::size_t trial) {
    const auto& [d, c] = pool[pick(rng, pool.size())];
    MapSpec phi = random_linear_map(rng, d, c);
    if (c.kind() != SpaceKind::Euclidean && rng.chance(1, 3)) phi = MapSpec::affine(phi.linear(), random_offset(rng, c.dim()));
    const Verdict v = predict_conformal_linear(d.label(), c.label(), phi.linear(), phi.offset());
    const auto direct = calculus::infinity_tension(d, c, phi);
    return compare(trial, d, c, phi, v, direct, v.harmonic == direct.zero);
  };
}

TrialFn split_trials() {
  std::vector<Pair> pool = pairs({"complex:1", "complex:2"}, {"complex:1", "complex:2"});
  return [pool = std::move(pool)](Rng& rng, std::size_t trial) {
    const auto& [d, c] = pool[pick(rng, pool.size())];
    const ComplexPolyMap src = random_holomorphic(rng, d.dim() / 2, c.dim() / 2);
    const MapSpec phi = MapSpec::holomorphic(src);
    const Verdict v = predict_holomorphic_split(src);
    const auto direct = calculus::infinity_tension(d, c, phi);
    const bool re = v.residuals[0].vanishes();
    const bool im = v.residuals[1].vanishes();
    return compare(trial, d, c, phi, v, direct, direct.zero == re && re == im);
  };
}

TrialResult phm_trial(Rng& rng, std::size_t trial) {
  const auto m = static_cast<std::size_t>(rng.uniform(1, 3));
  const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
  const ModelSpace d = build_space(SpaceLabel::euclidean(m));
  const ModelSpace c = build_space(SpaceLabel::euclidean(n));
  MapSpec phi = random_quadratic_map(rng, d, c);
  if (rng.chance(1, 2)) {
    std::vector<Expr> comps;
    for (std::size_t k = 0; k < n; ++k) comps.push_back(random_polynomial(rng, m, 3));
    phi = MapSpec::custom(m, std::move(comps));
  }
  const Quotient e = calculus::energy_density(d, c, phi);
  const auto t2 = calculus::tension_field(d, c, phi);
  const auto tinf = calculus::infinity_tension_components(d, c, phi);
  const auto t4 = calculus::p_tension(d, c, phi, 4);
  TrialResult r;
  r.harmonic = true;
  for (std::size_t a = 0; a < n; ++a) {
    // tinf here is d phi(grad |d phi|^2), twice the infinity tension.
    r.agree = r.agree && (t4[a] - (e * t2[a] + tinf[a])).is_zero();
    r.harmonic = r.harmonic && tinf[a].is_zero();
  }
  if (!r.agree) r.counterexample = Counterexample{trial, d.name(), c.name(), phi, true, false, std::nullopt, "identity fails"};
  if (r.harmonic) r.zero_map = ZeroMap{trial, d.name(), c.name(), phi};
  return r;
}

TrialFn scalar_trials() {
  const std::vector<std::string> names = {"euclid:1",  "euclid:2", "euclid:3", "semi-euclid:2:-+", "sphere:2",
                                          "sphere:3",  "nil",      "sol",      "conformal:2:1 + x^2"};
  std::vector<ModelSpace> pool;
  for (const auto& n : names) pool.push_back(build_space(n));
  return [pool = std::move(pool)](Rng& rng, std::size_t trial) {
    const ModelSpace& s = pool[pick(rng, pool.size())];
    const Quotient u(random_polynomial(rng, s.dim(), 3));
    const Quotient inner = calculus::infinity_laplacian(s, u);
    TrialResult r;
    r.agree = (inner - calculus::hessian_form(s, u)).is_zero() && (inner - calculus::coordinate_form(s, u)).is_zero();
    r.harmonic = inner.is_zero();
    if (r.harmonic) r.zero_map = ZeroMap{trial, s.name(), "euclid:1", MapSpec::custom(s.dim(), {u.core()})};
    if (!r.agree) {
      r.counterexample = Counterexample{trial, s.name(), "euclid:1", MapSpec::custom(s.dim(), {u.core()}), true, false,
                                        std::nullopt, "scalar forms differ"};
    }
    return r;
  };
}

struct SuiteDef {
  std::string statement;
  std::function<TrialFn()> make;
};

const std::map<std::string, SuiteDef>& suites() {
  static const std::map<std::string, SuiteDef> table = [] {
    std::map<std::string, SuiteDef> t;
    const auto linear = [](const std::vector<std::string>& d, const std::vector<std::string>& c) {
      return [d, c] { return cross_validated(pairs(d, c), random_linear_map); };
    };
    const auto quadratic = [](const std::vector<std::string>& d, const std::vector<std::string>& c, Generator g) {
      return [d, c, g] { return cross_validated(pairs(d, c), g); };
    };
    const auto concat = [](std::vector<Pair> a, const std::vector<Pair>& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    };
    t["L2.1"] = {"symmetric A_i with (sum_j A_j^2) A_i + A_i (sum_j A_j^2) = 0 for every i are all zero",
                 [] { return TrialFn(lemma_trial); }};
    t["T2.2"] = {"quadratic forms R^m -> R^n are infinity-harmonic only when constant",
                 quadratic(euclid(1, 3), euclid(1, 3), pure_quadratic)};
    t["T2.3"] = {"quadratic-plus-affine maps R^m -> R^n are infinity-harmonic iff the quadratic part vanishes",
                 quadratic(euclid(1, 3), euclid(1, 3), random_quadratic_map)};
    t["L3.1"] = {"linear maps between conformally flat charts: A = 0 or <A^a, grad(F / lambda o phi)> = 0",
                 conformal_trials};
    t["T3.2"] = {"linear maps between spheres are infinity-harmonic iff A = 0 or A^t A = I",
                 linear(spheres(1, 3), spheres(1, 3))};
    t["T3.3"] = {"linear maps between a Euclidean space and a sphere are infinity-harmonic only when constant",
                 [concat] {
                   return cross_validated(concat(pairs(euclid(1, 3), spheres(1, 3)), pairs(spheres(1, 3), euclid(1, 3))),
                                          random_linear_map);
                 }};
    t["T4.1"] = {"quadratic forms between a Euclidean space and a sphere are infinity-harmonic only when constant",
                 [concat] {
                   return cross_validated(concat(pairs(euclid(1, 3), spheres(1, 3)), pairs(spheres(1, 3), euclid(1, 3))),
                                          pure_quadratic);
                 }};
    t["T5.1"] = {"linear maps Nil -> R^n: the first or the third column of A vanishes", linear({"nil"}, euclid(1, 4))};
    t["T5.2"] = {"linear maps R^m -> Nil: the first or the second row of A vanishes", linear(euclid(1, 4), {"nil"})};
    t["T6.1"] = {"linear maps Sol -> R^n: the third column, or the first two columns, of A vanish",
                 linear({"sol"}, euclid(1, 4))};
    t["T6.2"] = {"linear maps R^m -> Sol: the third row, or the first two rows, of A vanish", linear(euclid(1, 4), {"sol"})};
    t["T7.1"] = {"quadratic forms R^m -> Sol are infinity-harmonic only when constant",
                 quadratic(euclid(1, 3), {"sol"}, pure_quadratic)};
    t["T7.2"] = {"quadratic forms R^m -> Nil are infinity-harmonic only when constant",
                 quadratic(euclid(1, 3), {"nil"}, pure_quadratic)};
    t["T8.1"] = {"a holomorphic map is infinity-harmonic iff its real part is, iff its imaginary part is", split_trials};
    t["T8.3"] = {"holomorphic polynomial maps C^m -> C are infinity-harmonic iff affine",
                 [] {
                   return cross_validated(pairs({"complex:1", "complex:2", "complex:3"}, {"complex:1"}),
                                          [](Rng& rng, const ModelSpace& d, const ModelSpace& c) {
                                            return family_map(Family::Holomorphic, rng, d, c);
                                          });
                 }};
    t["PHM"] = {"tau_4 = |d phi|^2 tau_2 + 2 tau_inf for polynomial maps between Euclidean spaces",
                [] { return TrialFn(phm_trial); }};
    t["LEM1.1"] = {"inner-product, Hessian and coordinate forms of the infinity-Laplacian agree", scalar_trials};
    return t;
  }();
  return table;
}

void check_supported(Family family, const ModelSpace& domain, const ModelSpace& codomain) {
  const SpaceLabel& d = domain.label();
  const SpaceLabel& c = codomain.label();
  switch (family) {
    case Family::Linear:
      predict_linear(d, c, RationalMatrix(c.dim, d.dim), {});
      return;
    case Family::Quadratic: {
      std::vector<RationalMatrix> quad(c.dim, RationalMatrix(d.dim, d.dim));
      quad[0](0, 0) = 1;
      predict_quadratic(d, c, MapSpec::quadratic(std::move(quad), RationalMatrix(c.dim, d.dim), {}));
      return;
    }
    case Family::Holomorphic:
      if (d.kind != SpaceKind::Euclidean || c.kind != SpaceKind::Euclidean || d.dim % 2 != 0 || c.dim % 2 != 0) {
        throw UnsupportedPair("holomorphic maps need complex:m -> complex:n");
      }
      return;
  }
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Linear: return "linear";
    case Family::Quadratic: return "quadratic";
    case Family::Holomorphic: return "holomorphic";
  }
  return "linear";
}

Family parse_family(const std::string& text) {
  if (text == "linear") return Family::Linear;
  if (text == "quadratic") return Family::Quadratic;
  if (text == "holomorphic") return Family::Holomorphic;
  throw ValidationError("unknown family '" + text + "' (expected linear, quadratic or holomorphic)");
}

SearchOutcome falsify_search(Family family, const ModelSpace& domain, const ModelSpace& codomain, std::size_t trials,
                             std::uint64_t seed, unsigned workers) {
  check_supported(family, domain, codomain);
  return run_trials(trials, seed, workers, [&](Rng& rng, std::size_t trial) {
    return validate(trial, domain, codomain, family_map(family, rng, domain, codomain));
  });
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {"L2.1", "T2.2", "T2.3", "L3.1", "T3.2", "T3.3", "T4.1", "T5.1", "T5.2",
                                               "T6.1", "T6.2", "T7.1", "T7.2", "T8.1", "T8.3", "PHM",  "LEM1.1"};
  return ids;
}

std::string suite_statement(const std::string& id) {
  const auto it = suites().find(id);
  if (it == suites().end()) throw ValidationError("unknown theorem id '" + id + "'");
  return it->second.statement;
}

SuiteResult run_suite(const std::string& id, std::size_t trials, std::uint64_t seed, unsigned workers) {
  const auto it = suites().find(id);
  if (it == suites().end()) throw ValidationError("unknown theorem id '" + id + "'");
  return {id, it->second.statement, run_trials(trials, seed, workers, it->second.make())};
}

}  // namespace infharm::classify
