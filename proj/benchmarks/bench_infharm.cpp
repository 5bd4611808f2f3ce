#include <benchmark/benchmark.h>

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
using infharm::mapspec::MapSpec;
using infharm::spaces::build_space;

MapSpec custom(std::size_t m, std::initializer_list<const char*> components) {
  std::vector<ex::Expr> out;
  for (const char* c : components) out.push_back(ex::parse_expr(c, m));
  return MapSpec::custom(m, std::move(out));
}

void BM_ExprPower(benchmark::State& state) {
  const ex::Expr base = ex::parse_expr("1 + x + 2*y - z/3", 3);
  for (auto _ : state) benchmark::DoNotOptimize(ex::pow(base, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_ExprPower)->Arg(4)->Arg(8)->Arg(12);

void BM_ParseAndRender(benchmark::State& state) {
  for (auto _ : state) {
    const ex::Quotient q = ex::parse_quotient("(x^3 - 2*x*y + cos(z)*exp(x + y)) / (1 + x^2 + y^2)^2", 3);
    benchmark::DoNotOptimize(ex::to_string(q.core()));
  }
}
BENCHMARK(BM_ParseAndRender);

void BM_SphereChristoffel(benchmark::State& state) {
  const std::string label = "sphere:" + std::to_string(state.range(0));
  for (auto _ : state) {
    const auto s = build_space(label);
    benchmark::DoNotOptimize(&s.christoffel());
  }
}
BENCHMARK(BM_SphereChristoffel)->DenseRange(2, 4);

void BM_EnergyNilExample(benchmark::State& state) {
  const auto nil = build_space("nil");
  const auto e2 = build_space("euclid:2");
  const MapSpec phi = custom(3, {"z - x*y/2", "2*z - x*y"});
  for (auto _ : state) benchmark::DoNotOptimize(calc::energy_density(nil, e2, phi));
}
BENCHMARK(BM_EnergyNilExample);

void BM_InfinityTension(benchmark::State& state, const char* domain, const char* codomain) {
  const auto d = build_space(domain);
  const auto c = build_space(codomain);
  infharm::Rng rng(17);
  const MapSpec phi = cls::random_quadratic_map(rng, d, c);
  d.christoffel();
  c.christoffel();
  for (auto _ : state) benchmark::DoNotOptimize(calc::infinity_tension(d, c, phi));
}
BENCHMARK_CAPTURE(BM_InfinityTension, euclid3_euclid3, "euclid:3", "euclid:3");
BENCHMARK_CAPTURE(BM_InfinityTension, nil_euclid2, "nil", "euclid:2");
BENCHMARK_CAPTURE(BM_InfinityTension, euclid2_sol, "euclid:2", "sol");
BENCHMARK_CAPTURE(BM_InfinityTension, euclid2_sphere2, "euclid:2", "sphere:2");

void BM_SampledVerdict(benchmark::State& state) {
  const auto d = build_space("sphere:2");
  const auto c = build_space("sphere:3");
  const MapSpec phi = MapSpec::affine(cls::cayley_orthogonal(ex::RationalMatrix{{0, 1, 2}, {-1, 0, 3}, {-2, -3, 0}}, 2), {});
  for (auto _ : state) benchmark::DoNotOptimize(calc::sampled_verdict(d, c, phi));
}
BENCHMARK(BM_SampledVerdict);

void BM_PTension4(benchmark::State& state) {
  const auto e = build_space("euclid:3");
  const MapSpec phi = custom(3, {"x^2*y - z^3", "x*y*z + y^2", "x - z^2"});
  for (auto _ : state) benchmark::DoNotOptimize(calc::p_tension(e, e, phi, 4));
}
BENCHMARK(BM_PTension4);

void BM_ScalarForms(benchmark::State& state) {
  const auto s = build_space("sphere:3");
  const ex::Quotient u(ex::parse_expr("x^2*y - z^3 + x*z", 3));
  s.christoffel();
  for (auto _ : state) {
    benchmark::DoNotOptimize(calc::infinity_laplacian(s, u));
    benchmark::DoNotOptimize(calc::hessian_form(s, u));
  }
}
BENCHMARK(BM_ScalarForms);

void BM_Suite(benchmark::State& state, const char* id) {
  for (auto _ : state) benchmark::DoNotOptimize(cls::run_suite(id, static_cast<std::size_t>(state.range(0)), 1));
}
BENCHMARK_CAPTURE(BM_Suite, T5_1, "T5.1")->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, T3_2, "T3.2")->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, T8_3, "T8.3")->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
