// Acceptance criteria AC1-AC10. Prints one [PASS]/[FAIL] line per criterion
// and exits nonzero if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "infharm/calculus/operators.hpp"
#include "infharm/calculus/tension.hpp"
#include "infharm/classify/predict.hpp"
#include "infharm/classify/sampling.hpp"
#include "infharm/classify/search.hpp"
#include "infharm/expr/format.hpp"
#include "infharm/expr/parse.hpp"
#include "infharm/random.hpp"

namespace {

namespace calc = infharm::calculus;
namespace cls = infharm::classify;
namespace ex = infharm::expr;
using ex::Expr;
using ex::Quotient;
using ex::Rational;
using ex::RationalMatrix;
using infharm::Rng;
using infharm::mapspec::MapSpec;
using infharm::spaces::build_space;
using infharm::spaces::ModelSpace;

constexpr std::uint64_t kSeed = 20240229;
constexpr std::size_t kLemmaTrials = 10000;
constexpr std::size_t kSuiteTrials = 200;
constexpr int kFlipsPerFamily = 50;
constexpr int kPolynomialsPerSpace = 100;
constexpr int kPhmMaps = 50;
constexpr int kFdPoints = 5;
constexpr double kFdRelTol = 1e-6;
constexpr std::size_t kSamplePoints = 64;
constexpr double kSampleTol = 1e-9;

struct Result {
  bool passed = true;
  std::string detail;
};

/// Every exact Zero verdict met in AC1-AC9, re-checked by AC10.
struct ZeroCase {
  std::string origin;
  std::string domain;
  std::string codomain;
  MapSpec map;
};
std::vector<ZeroCase> zero_cases;

void record_zero(const std::string& origin, const ModelSpace& d, const ModelSpace& c, const MapSpec& phi) {
  zero_cases.push_back({origin, d.name(), c.name(), phi});
}

MapSpec custom(std::size_t m, const std::vector<std::string>& components) {
  std::vector<Expr> out;
  for (const auto& c : components) out.push_back(ex::parse_expr(c, m));
  return MapSpec::custom(m, std::move(out));
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

/// Exact verdict, recording it when Zero.
bool exact_zero(const std::string& origin, const ModelSpace& d, const ModelSpace& c, const MapSpec& phi) {
  const auto r = calc::infinity_tension(d, c, phi);
  const bool zero = r.zero && r.mode == calc::Mode::Exact;
  if (zero) record_zero(origin, d, c, phi);
  return zero;
}

Result ac1() {
  const ModelSpace d = build_space("euclid:3");
  const ModelSpace c = build_space("euclid:2");
  const MapSpec phi = custom(3, {"cos(x) + cos(y) + cos(z)", "sin(x) + sin(y) + sin(z)"});
  const Quotient e = calc::energy_density(d, c, phi);
  const bool zero = exact_zero("AC1", d, c, phi);
  return {e == Quotient::constant(3, 3) && zero,
          "energy " + ex::to_string(e) + ", verdict " + (zero ? "Zero" : "NonZero")};
}

Result ac2() {
  const ModelSpace d = build_space("nil");
  const ModelSpace c = build_space("euclid:2");
  const MapSpec phi = custom(3, {"z - x*y/2", "2*z - x*y"});
  const Quotient e = calc::energy_density(d, c, phi);
  const bool zero = exact_zero("AC2", d, c, phi);
  const bool match = (e - ex::parse_quotient("5*(1 + (x^2 + y^2)/4)", 3)).is_zero() &&
                     ex::to_string(e) == "5 + (5/4)*x^2 + (5/4)*y^2";
  return {match && zero, "energy " + ex::to_string(e) + ", verdict " + (zero ? "Zero" : "NonZero")};
}

Result ac3() {
  const ModelSpace s = build_space("semi-euclid:2:-+");
  const MapSpec phi = custom(2, {"12*x^2 + 12*y^2", "13*x^2 + 10*x*y + 13*y^2"});
  const Quotient e = calc::energy_density(s, s, phi);
  const bool zero = exact_zero("AC3", s, s, phi);
  return {e.is_zero() && zero, "energy " + ex::to_string(e) + ", verdict " + (zero ? "Zero" : "NonZero")};
}

Result ac4() {
  const auto r = cls::run_suite("L2.1", kLemmaTrials, kSeed);
  const auto& o = r.outcome;
  return {r.passed() && o.trials == kLemmaTrials,
          fmt("%zu tuples, %zu satisfy the condition (all zero), %zu counterexamples", o.trials, o.harmonic,
              o.counterexamples.size())};
}

Result ac5() {
  const std::vector<std::string> ids = {"T2.2", "T2.3", "T3.2", "T3.3", "T4.1", "T5.1", "T5.2",
                                        "T6.1", "T6.2", "T7.1", "T7.2", "T8.1", "T8.3"};
  Result res;
  std::size_t total = 0;
  std::size_t agree = 0;
  std::string failing;
  for (const auto& id : ids) {
    const auto r = cls::run_suite(id, kSuiteTrials, kSeed);
    total += r.outcome.trials;
    agree += r.outcome.agreements;
    if (!r.passed() || r.outcome.trials < kSuiteTrials) {
      res.passed = false;
      failing += " " + id;
    }
    for (const auto& z : r.outcome.zero_maps) {
      zero_cases.push_back({"AC5 " + id, z.domain, z.codomain, z.map});
    }
  }
  res.detail = fmt("%zu suites x %zu trials, agreement %zu/%zu", ids.size(), kSuiteTrials, agree, total);
  if (!failing.empty()) res.detail += ", failing:" + failing;
  return res;
}

/// A matrix whose listed entries are zero and all others nonzero.
struct PatternFamily {
  const char* domain;
  const char* codomain;
  std::size_t rows;
  std::size_t cols;
  std::vector<std::pair<std::size_t, std::size_t>> zeros;
};

Result ac6() {
  const std::vector<PatternFamily> families = {
      {"nil", "euclid:2", 2, 3, {{0, 0}, {1, 0}}},          // first column zero
      {"nil", "euclid:3", 3, 3, {{0, 2}, {1, 2}, {2, 2}}},  // third column zero
      {"euclid:2", "nil", 3, 2, {{0, 0}, {0, 1}}},          // first row zero
      {"euclid:3", "nil", 3, 3, {{1, 0}, {1, 1}, {1, 2}}},  // second row zero
      {"sol", "euclid:2", 2, 3, {{0, 2}, {1, 2}}},          // third column zero
      {"sol", "euclid:2", 2, 3, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}},
      {"euclid:2", "sol", 3, 2, {{2, 0}, {2, 1}}},  // third row zero
      {"euclid:2", "sol", 3, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}},
  };
  Rng rng(infharm::stream_seed(kSeed, 6));
  int base_zero = 0;
  int flips = 0;
  int trials = 0;
  for (const auto& f : families) {
    const ModelSpace d = build_space(f.domain);
    const ModelSpace c = build_space(f.codomain);
    for (int t = 0; t < kFlipsPerFamily; ++t, ++trials) {
      RationalMatrix a(f.rows, f.cols);
      for (std::size_t r = 0; r < f.rows; ++r) {
        for (std::size_t k = 0; k < f.cols; ++k) a(r, k) = rng.nonzero_rational();
      }
      for (const auto& [r, k] : f.zeros) a(r, k) = 0;
      const auto b = cls::random_offset(rng, c.dim());
      if (exact_zero("AC6 pattern", d, c, MapSpec::affine(a, b))) ++base_zero;
      const auto& [r, k] = f.zeros[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(f.zeros.size()) - 1))];
      a(r, k) = rng.nonzero_rational();
      if (!calc::infinity_tension(d, c, MapSpec::affine(a, b)).zero) ++flips;
    }
  }
  // Cayley maps between spheres; a perturbed entry a' avoids {0, a, -a}, the
  // values that can land back on A = 0 or on another orthogonal column.
  for (int t = 0; t < kFlipsPerFamily; ++t, ++trials) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto m = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    RationalMatrix a = cls::cayley_orthogonal(cls::random_skew(rng, n), m);
    const ModelSpace d = build_space("sphere:" + std::to_string(m));
    const ModelSpace c = build_space("sphere:" + std::to_string(n));
    if (exact_zero("AC6 Cayley", d, c, MapSpec::affine(a, {}))) ++base_zero;
    const auto r = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    const auto k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(m) - 1));
    Rational next;
    do {
      next = rng.nonzero_rational();
    } while (next == a(r, k) || next == -a(r, k));
    a(r, k) = next;
    if (!calc::infinity_tension(d, c, MapSpec::affine(a, {})).zero) ++flips;
  }
  const int families_total = static_cast<int>(families.size()) + 1;
  return {base_zero == trials && flips == trials,
          fmt("%d families: %d/%d constructions Zero, %d/%d single-entry flips NonZero", families_total, base_zero,
              trials, flips, trials)};
}

Result ac7() {
  const std::vector<std::string> names = {"euclid:1", "euclid:3", "semi-euclid:3:-++", "sphere:2", "sphere:3",
                                          "conformal:2:1 + x^2",  "nil", "sol"};
  Result res;
  int checked = 0;
  int harmonic = 0;
  for (std::size_t s = 0; s < names.size(); ++s) {
    const ModelSpace space = build_space(names[s]);
    for (int t = 0; t < kPolynomialsPerSpace; ++t) {
      Rng rng(infharm::stream_seed(kSeed + 7, s * 1000 + static_cast<std::size_t>(t)));
      const Expr poly = cls::random_polynomial(rng, space.dim(), 3);
      const Quotient u(poly);
      const Quotient inner = calc::infinity_laplacian(space, u);
      const bool agree =
          (inner - calc::coordinate_form(space, u)).is_zero() && (inner - calc::hessian_form(space, u)).is_zero();
      ++checked;
      if (!agree) {
        res.passed = false;
        res.detail = "forms differ on " + names[s] + " for u = " + ex::to_string(poly) + "; ";
      }
      if (inner.is_zero()) {
        ++harmonic;
        record_zero("AC7 " + names[s], space, build_space("euclid:1"), MapSpec::custom(space.dim(), {poly}));
      }
    }
  }
  res.detail += fmt("%d polynomials on %zu spaces, three forms agree symbolically (%d infinity-harmonic)", checked,
                    names.size(), harmonic);
  return res;
}

double five_point(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// sum_i d_i(|d phi|^2 d_i phi^c) at `p`, every derivative by finite differences
/// of the component values alone.
double fd_p4_tension(const MapSpec& phi, std::size_t c, const std::vector<double>& p) {
  const double h = 1e-3;
  const std::size_t m = phi.domain_dim();
  const std::size_t n = phi.codomain_dim();
  const auto value = [&](std::size_t a, const std::vector<double>& x) { return ex::evaluate(phi.components()[a], x); };
  const auto partial = [&](std::size_t a, std::size_t i, const std::vector<double>& x) {
    return five_point([&](double s) { auto y = x; y[i] = s; return value(a, y); }, x[i], h);
  };
  const auto flux = [&](std::size_t i, const std::vector<double>& x) {
    double e = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t j = 0; j < m; ++j) e += std::pow(partial(a, j, x), 2);
    }
    return e * partial(c, i, x);
  };
  double div = 0;
  for (std::size_t i = 0; i < m; ++i) {
    div += five_point([&](double s) { auto y = p; y[i] = s; return flux(i, y); }, p[i], h);
  }
  return div;
}

Result ac8() {
  Rng rng(infharm::stream_seed(kSeed, 8));
  int identity_ok = 0;
  int fd_ok = 0;
  int fd_total = 0;
  double worst = 0;
  for (int t = 0; t < kPhmMaps; ++t) {
    const auto m = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<Expr> comps;
    for (std::size_t a = 0; a < n; ++a) comps.push_back(cls::random_polynomial(rng, m, 3));
    const MapSpec phi = MapSpec::custom(m, std::move(comps));
    const ModelSpace d = build_space("euclid:" + std::to_string(m));
    const ModelSpace c = build_space("euclid:" + std::to_string(n));
    const Quotient e = calc::energy_density(d, c, phi);
    const auto t2 = calc::tension_field(d, c, phi);
    const auto tinf = calc::infinity_tension_components(d, c, phi);
    const auto t4 = calc::p_tension(d, c, phi, 4);
    bool holds = true;
    bool zero = true;
    for (std::size_t a = 0; a < n; ++a) {
      holds = holds && (t4[a] - (e * t2[a] + tinf[a])).is_zero();
      zero = zero && tinf[a].is_zero();
    }
    if (holds) ++identity_ok;
    if (zero) record_zero("AC8", d, c, phi);

    for (int k = 0; k < kFdPoints; ++k) {
      std::vector<double> p;
      for (std::size_t i = 0; i < m; ++i) p.push_back(rng.unit_rational(64).to_double());
      for (std::size_t a = 0; a < n; ++a) {
        const double exact = ex::evaluate(t4[a], p);
        const double err = std::fabs(exact - fd_p4_tension(phi, a, p)) / std::max(1.0, std::fabs(exact));
        worst = std::max(worst, err);
        ++fd_total;
        if (err <= kFdRelTol) ++fd_ok;
      }
    }
  }
  return {identity_ok == kPhmMaps && fd_ok == fd_total,
          fmt("identity tau_4 = |d phi|^2 tau_2 + tau_inf on %d/%d maps; finite differences %d/%d within %.0e "
              "(worst %.2e, relative to max(1, |tau_4|))",
              identity_ok, kPhmMaps, fd_ok, fd_total, kFdRelTol, worst)};
}

Result ac9() {
  const ModelSpace nil = build_space("nil");
  const ModelSpace sol = build_space("sol");
  const ModelSpace line = build_space("euclid:1");
  std::vector<std::array<Rational, 3>> triples;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      for (int c = -1; c <= 1; ++c) triples.push_back({Rational(a), Rational(b), Rational(c)});
    }
  }
  Rng rng(infharm::stream_seed(kSeed, 9));
  for (int t = 0; t < 100; ++t) {
    std::array<Rational, 3> abc;
    for (auto& v : abc) v = rng.chance(1, 3) ? Rational(0) : rng.nonzero_rational();
    triples.push_back(abc);
  }
  int matches = 0;
  int total = 0;
  for (const auto& [a, b, c] : triples) {
    const MapSpec f = MapSpec::affine(RationalMatrix{{a, b, c}}, {});
    const bool nil_rule = a.is_zero() || c.is_zero();
    const bool sol_rule = c.is_zero() || (a.is_zero() && b.is_zero());
    const bool nil_direct = exact_zero("AC9 nil", nil, line, f);
    const bool sol_direct = exact_zero("AC9 sol", sol, line, f);
    const auto nil_pred = cls::predict(nil, line, f);
    const auto sol_pred = cls::predict(sol, line, f);
    matches += (nil_direct == nil_rule && nil_pred && nil_pred->harmonic == nil_rule) ? 1 : 0;
    matches += (sol_direct == sol_rule && sol_pred && sol_pred->harmonic == sol_rule) ? 1 : 0;
    total += 2;
  }
  return {matches == total,
          fmt("27 sign patterns + 100 random triples on Nil and Sol: %d/%d direct and predicted verdicts match", matches,
              total)};
}

Result ac10() {
  calc::SamplingOptions options;
  options.samples = kSamplePoints;
  options.tolerance = kSampleTol;
  int ok = 0;
  double worst = 0;
  std::string failing;
  for (const auto& z : zero_cases) {
    const auto s = calc::sampled_verdict(build_space(z.domain), build_space(z.codomain), z.map, options);
    worst = std::max(worst, s.worst_normalized);
    if (s.zero && s.points_used == kSamplePoints && s.worst_normalized < kSampleTol) {
      ++ok;
    } else if (failing.empty()) {
      failing = ", first failure from " + z.origin + " (" + z.domain + " -> " + z.codomain + ")";
    }
  }
  return {!zero_cases.empty() && ok == static_cast<int>(zero_cases.size()),
          fmt("%d/%zu exact Zero verdicts pass %zu-point sampling below %.0e (worst %.2e)", ok, zero_cases.size(),
              kSamplePoints, kSampleTol, worst) +
              failing};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"AC1 trig map has constant energy 3 and is infinity-harmonic", ac1},
      {"AC2 Nil example energy 5 + (5/4)(x^2 + y^2), infinity-harmonic", ac2},
      {"AC3 semi-Euclidean quadratic map has zero energy, infinity-harmonic", ac3},
      {"AC4 anticommutator lemma campaign", ac4},
      {"AC5 theorem suites agree with direct computation", ac5},
      {"AC6 positive families are Zero and single-entry flips break them", ac6},
      {"AC7 three forms of the infinity-Laplacian agree", ac7},
      {"AC8 p = 4 tension identity and finite-difference oracle", ac8},
      {"AC9 scalar linear functions on Nil and Sol", ac9},
      {"AC10 exact Zero verdicts survive numeric sampling", ac10},
  };
  int passed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", name, r.detail.c_str(), secs);
    std::fflush(stdout);
    passed += r.passed ? 1 : 0;
  }
  std::printf("%d/%zu acceptance criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
