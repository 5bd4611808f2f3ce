#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <tuple>
#include <vector>

#include "generators.hpp"
#include "map_generators.hpp"
#include "infharm/calculus/operators.hpp"
#include "infharm/calculus/tension.hpp"
#include "infharm/errors.hpp"
#include "infharm/expr/format.hpp"
#include "infharm/expr/parse.hpp"

namespace {

using infharm::calculus::Mode;
using infharm::expr::Expr;
using infharm::expr::Quotient;
using infharm::expr::Rational;
using infharm::expr::RationalMatrix;
using infharm::mapspec::MapSpec;
using infharm::spaces::build_space;
using infharm::spaces::ModelSpace;
namespace calc = infharm::calculus;
namespace ex = infharm::expr;

Quotient Q(const char* text, std::size_t n) { return ex::parse_quotient(text, n); }

MapSpec custom(std::size_t m, const std::vector<std::string>& comps) {
  std::vector<Expr> out;
  for (const auto& c : comps) out.push_back(ex::parse_expr(c, m));
  return MapSpec::custom(m, std::move(out));
}

std::vector<double> to_doubles(const std::vector<Rational>& p) {
  std::vector<double> out;
  for (const auto& r : p) out.push_back(r.to_double());
  return out;
}

TEST(MetricGradient, Examples) {
  const auto e = calc::metric_gradient(build_space("euclid:2"), ex::parse_expr("x^2 + y^2", 2));
  EXPECT_EQ(e, (std::vector<Quotient>{Q("2*x", 2), Q("2*y", 2)}));
  const auto nil = calc::metric_gradient(build_space("nil"), ex::parse_expr("z", 3));
  EXPECT_EQ(nil, (std::vector<Quotient>{Q("0", 3), Q("x", 3), Q("1 + x^2", 3)}));
  const auto sol = calc::metric_gradient(build_space("sol"), ex::parse_expr("x", 3));
  EXPECT_EQ(sol, (std::vector<Quotient>{Q("exp(-2*z)", 3), Q("0", 3), Q("0", 3)}));
}

TEST(EnergyDensity, IdentityIsTrace) {
  for (std::size_t m = 1; m <= 4; ++m) {
    const ModelSpace e = build_space("euclid:" + std::to_string(m));
    const MapSpec id = MapSpec::affine(RationalMatrix::identity(m), {});
    EXPECT_EQ(calc::energy_density(e, e, id), Quotient::constant(m, static_cast<long>(m)));
  }
}

TEST(EnergyDensity, TrigMapIsThree) {
  const MapSpec trig = custom(3, {"cos(x)+cos(y)+cos(z)", "sin(x)+sin(y)+sin(z)"});
  EXPECT_EQ(calc::energy_density(build_space("euclid:3"), build_space("euclid:2"), trig), Quotient::constant(3, 3));
}

TEST(EnergyDensity, NilExample) {
  const MapSpec phi = custom(3, {"z - x*y/2", "2*z - x*y"});
  const Quotient e = calc::energy_density(build_space("nil"), build_space("euclid:2"), phi);
  EXPECT_EQ(e, Q("5*(1 + (x^2 + y^2)/4)", 3));
  EXPECT_EQ(ex::to_string(e), "5 + (5/4)*x^2 + (5/4)*y^2");
}

TEST(EnergyDensity, SemiEuclideanQuadraticVanishes) {
  const ModelSpace r21 = build_space("semi-euclid:2:-+");
  const MapSpec phi = custom(2, {"12*x^2 + 12*y^2", "13*x^2 + 10*x*y + 13*y^2"});
  EXPECT_TRUE(calc::energy_density(r21, r21, phi).is_zero());
  // Oracle: (phi1_x)^2 - (phi1_y)^2 - (phi2_x)^2 + (phi2_y)^2 by hand.
  const Expr hand = ex::parse_expr("(24*x)^2 - (24*y)^2 - (26*x + 10*y)^2 + (10*x + 26*y)^2", 2);
  EXPECT_TRUE(hand.is_zero());
  EXPECT_TRUE(calc::infinity_tension(r21, r21, phi).zero);
}

TEST(InfinityTension, AffineEuclideanIsZero) {
  infharm::testing::Gen gen(401);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = static_cast<std::size_t>(gen.integer(1, 4));
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
    const MapSpec phi = MapSpec::affine(gen.matrix(n, m), std::vector<Rational>(n, gen.rational()));
    const auto r = calc::infinity_tension(build_space("euclid:" + std::to_string(m)), build_space("euclid:" + std::to_string(n)), phi);
    EXPECT_TRUE(r.zero);
    EXPECT_EQ(r.mode, Mode::Exact);
  }
}

TEST(InfinityTension, SquareMap) {
  const ModelSpace e1 = build_space("euclid:1");
  const auto r = calc::infinity_tension(e1, e1, custom(1, {"x^2"}));
  ASSERT_EQ(r.infinity_tension.size(), 1U);
  // |phi'|^2 = 4x^2, so <phi', (4x^2)'> = 2x * 8x = 16x^2.
  EXPECT_EQ(r.infinity_tension[0], Q("16*x^2", 1));
  EXPECT_FALSE(r.zero);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->point, std::vector<Rational>{Rational(1)});
  EXPECT_DOUBLE_EQ(r.witness->value, 16.0);
}

TEST(InfinityTension, NilProjection) {
  const MapSpec proj = MapSpec::affine(RationalMatrix{{0, 1, 0}, {0, 0, 1}}, {});
  const auto r = calc::infinity_tension(build_space("nil"), build_space("euclid:2"), proj);
  EXPECT_TRUE(r.zero);
  EXPECT_EQ(*r.energy_density, Q("x^2 + 2", 3));
}

TEST(InfinityTension, PaddedQuadraticIntoSol) {
  const MapSpec q = MapSpec::quadratic({RationalMatrix{{1}}}, RationalMatrix{}, {}).padded(3);
  const auto r = calc::infinity_tension(build_space("euclid:1"), build_space("sol"), q);
  EXPECT_FALSE(r.zero);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(std::fabs(r.witness->value), 1e-9);
  // Independent confirmation through the numeric chain-rule route.
  const calc::NumericTension numeric(build_space("euclid:1"), build_space("sol"), q);
  const auto s = numeric.at(to_doubles(r.witness->point));
  ASSERT_TRUE(s.has_value());
  EXPECT_NEAR(s->tension[r.witness->component], r.witness->value, 1e-9 * (1 + std::fabs(r.witness->value)));
}

TEST(InfinityTension, FallsBackToSamplingOutsideTheDecidableClass) {
  const MapSpec phi = custom(1, {"0", "0", "cos(x)"});
  const auto r = calc::infinity_tension(build_space("euclid:1"), build_space("sol"), phi);
  EXPECT_EQ(r.mode, Mode::NumericSampled);
  EXPECT_FALSE(r.note.empty());
  EXPECT_FALSE(r.zero);
  ASSERT_TRUE(r.witness.has_value());
}

TEST(InfinityTension, NumericModeOnRequest) {
  const MapSpec proj = MapSpec::affine(RationalMatrix{{0, 1, 0}, {0, 0, 1}}, {});
  const auto r = calc::infinity_tension(build_space("nil"), build_space("euclid:2"), proj, Mode::NumericSampled);
  EXPECT_EQ(r.mode, Mode::NumericSampled);
  EXPECT_TRUE(r.zero);
  EXPECT_TRUE(r.energy_density.has_value());
}

TEST(InfinityTension, DimensionMismatch) {
  EXPECT_THROW(calc::energy_density(build_space("euclid:2"), build_space("euclid:2"), custom(1, {"x", "x"})),
               infharm::DimensionError);
}

TEST(EnergyDensity, NumericRouteAgreesWithSymbolic) {
  infharm::testing::Gen gen(402);
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"euclid:2", "sphere:2"}, {"sphere:2", "sphere:3"}, {"nil", "euclid:2"}, {"euclid:2", "nil"},
      {"sol", "euclid:2"},      {"euclid:3", "sol"},      {"sphere:3", "nil"}};
  for (const auto& [d, c] : pairs) {
    const ModelSpace dom = build_space(d);
    const ModelSpace cod = build_space(c);
    for (int t = 0; t < 5; ++t) {
      const MapSpec phi = infharm::testing::random_quadratic(gen, dom.dim(), cod.dim(), 0.5);
      const Quotient e = calc::energy_density(dom, cod, phi);
      const auto tau = calc::infinity_tension_components(dom, cod, phi);
      const calc::NumericTension numeric(dom, cod, phi);
      const auto p = gen.unit_point(dom.dim());
      const auto s = numeric.at(p);
      ASSERT_TRUE(s.has_value());
      EXPECT_NEAR(s->energy, ex::evaluate(e, p), 1e-9 * (1 + std::fabs(s->energy))) << d << "->" << c;
      for (std::size_t a = 0; a < tau.size(); ++a) {
        EXPECT_NEAR(s->tension[a], ex::evaluate(tau[a], p), 1e-8 * (1 + s->scale[a])) << d << "->" << c;
      }
    }
  }
}

TEST(ScalarOperators, Examples) {
  const ModelSpace e3 = build_space("euclid:3");
  EXPECT_TRUE(calc::infinity_laplacian(e3, Q("2*x - y + (1/3)*z", 3)).is_zero());
  const ModelSpace e1 = build_space("euclid:1");
  EXPECT_EQ(calc::infinity_laplacian(e1, Q("x^2", 1)), Q("8*x^2", 1));
  EXPECT_EQ(calc::coordinate_form(e1, Q("x^2", 1)), Q("8*x^2", 1));
  const ModelSpace nil = build_space("nil");
  EXPECT_TRUE(calc::infinity_laplacian(nil, Q("2*y - 3*z", 3)).is_zero());
  EXPECT_FALSE(calc::infinity_laplacian(nil, Q("x + z", 3)).is_zero());
}

TEST(ScalarOperators, PLaplacian) {
  EXPECT_EQ(calc::p_laplacian(build_space("euclid:2"), Q("x^2 + y^2", 2), 2), Quotient::constant(2, 4));
  EXPECT_TRUE(calc::p_laplacian(build_space("euclid:3"), Q("x - 2*y + z", 3), 4).is_zero());
  // |u'|^2 u'' + 2 u'^2 u'' with u = x^2: 4x^2 * 2 + 2 * 8x^2.
  EXPECT_EQ(calc::p_laplacian(build_space("euclid:1"), Q("x^2", 1), 4), Q("24*x^2", 1));
  EXPECT_THROW(calc::p_laplacian(build_space("euclid:1"), Q("x^2", 1), 3), infharm::UnsupportedExpression);
  const std::vector<double> p{0.5};
  EXPECT_NEAR(calc::p_laplacian_at(build_space("euclid:1"), Q("x^2", 1), 4.0, p), 6.0, 1e-12);
  // d/dx(|2x|^(p-2) 2x) = (p-1) 2^(p-1) |x|^(p-2) at x = 1/2, p = 3.
  EXPECT_NEAR(calc::p_laplacian_at(build_space("euclid:1"), Q("x^2", 1), 3.0, p), 2 * 4 * std::pow(0.5, 1.0), 1e-12);
}

TEST(ScalarOperators, ThreeFormsAgree) {
  infharm::testing::Gen gen(403);
  for (const std::string name : {"euclid:3", "nil", "sol", "sphere:2", "semi-euclid:2:-+", "conformal:2:1 + x^2"}) {
    const ModelSpace s = build_space(name);
    for (int t = 0; t < 15; ++t) {
      const Quotient u(gen.polynomial(s.dim(), 3));
      const Quotient inner = calc::infinity_laplacian(s, u);
      EXPECT_TRUE((inner - calc::hessian_form(s, u)).is_zero()) << name;
      EXPECT_TRUE((inner - calc::coordinate_form(s, u)).is_zero()) << name;
    }
  }
}

TEST(Tension, AffineIsTotallyGeodesic) {
  const ModelSpace e2 = build_space("euclid:2");
  const ModelSpace e3 = build_space("euclid:3");
  const MapSpec phi = MapSpec::affine(RationalMatrix{{1, 2}, {3, 4}, {5, 6}}, {1, 1, 1});
  for (const auto& c : calc::tension_field(e2, e3, phi)) EXPECT_TRUE(c.is_zero());
  for (const auto& c : calc::p_tension(e2, e3, phi, 4)) EXPECT_TRUE(c.is_zero());
}

TEST(Tension, SquareMapAtFour) {
  const ModelSpace e1 = build_space("euclid:1");
  // d/dx (|2x|^2 * 2x) = 24x^2.
  EXPECT_EQ(calc::p_tension(e1, e1, custom(1, {"x^2"}), 4), std::vector<Quotient>{Q("24*x^2", 1)});
  EXPECT_EQ(calc::tension_field(e1, e1, custom(1, {"x^2"})), std::vector<Quotient>{Q("2", 1)});
}

TEST(Tension, HarmonicButNotInfinityHarmonic) {
  const ModelSpace e2 = build_space("euclid:2");
  const ModelSpace e1 = build_space("euclid:1");
  const MapSpec u = custom(2, {"x^2 - y^2"});
  EXPECT_TRUE(calc::tension_field(e2, e1, u)[0].is_zero());
  const auto tinf = calc::infinity_tension_components(e2, e1, u);
  EXPECT_EQ(tinf[0], Q("16*x^2 - 16*y^2", 2));
  // With tau_2 = 0 the p = 4 tension is (p - 2) * (1/2) * tinf.
  EXPECT_EQ(calc::p_tension(e2, e1, u, 4)[0], tinf[0]);
}

TEST(Tension, SphereIdentityIsHarmonic) {
  const ModelSpace s2 = build_space("sphere:2");
  const MapSpec id = MapSpec::affine(RationalMatrix::identity(2), {});
  for (const auto& c : calc::tension_field(s2, s2, id)) EXPECT_TRUE(c.is_zero());
}

TEST(Tension, PhmIdentityOnCurvedSpaces) {
  infharm::testing::Gen gen(404);
  for (const auto& [d, c] : std::vector<std::pair<std::string, std::string>>{{"nil", "euclid:2"}, {"euclid:2", "sphere:2"}, {"sol", "euclid:1"}}) {
    const ModelSpace dom = build_space(d);
    const ModelSpace cod = build_space(c);
    for (int t = 0; t < 3; ++t) {
      const MapSpec phi = infharm::testing::random_quadratic(gen, dom.dim(), cod.dim(), 0.5);
      const Quotient e = calc::energy_density(dom, cod, phi);
      const auto t2 = calc::tension_field(dom, cod, phi);
      const auto tinf = calc::infinity_tension_components(dom, cod, phi);
      const auto t4 = calc::p_tension(dom, cod, phi, 4);
      for (std::size_t a = 0; a < t4.size(); ++a) {
        EXPECT_TRUE((t4[a] - (e * t2[a] + tinf[a])).is_zero()) << d << "->" << c;
      }
    }
  }
}

TEST(Tension, PTensionMatchesFiniteDifferenceDivergence) {
  // Oracle: tau_p^c = sum_i d_i(|d phi|^(p-2) d_i phi^c) by nested five-point stencils.
  infharm::testing::Gen gen(405);
  const auto d5 = [](const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
  };
  for (int t = 0; t < 5; ++t) {
    const std::size_t m = 2;
    const std::size_t n = 2;
    const MapSpec phi = infharm::testing::random_quadratic(gen, m, n, 0.3);
    const ModelSpace dom = build_space("euclid:2");
    const ModelSpace cod = build_space("euclid:2");
    const auto t4 = calc::p_tension(dom, cod, phi, 4);
    const auto p = gen.unit_point(m);
    const double h = 1e-2;
    auto component = [&](std::size_t c, std::vector<double> x) { return ex::evaluate(phi.components()[c], x); };
    auto grad = [&](std::size_t c, std::size_t i, std::vector<double> x) {
      return d5([&](double s) { auto y = x; y[i] = s; return component(c, y); }, x[i], h);
    };
    auto energy = [&](const std::vector<double>& x) {
      double e = 0;
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < m; ++i) e += std::pow(grad(c, i, x), 2);
      }
      return e;
    };
    for (std::size_t c = 0; c < n; ++c) {
      double fd = 0;
      for (std::size_t i = 0; i < m; ++i) {
        fd += d5([&](double s) { auto y = p; y[i] = s; return energy(y) * grad(c, i, y); }, p[i], h);
      }
      const double exact = ex::evaluate(t4[c], p);
      EXPECT_LE(std::fabs(exact - fd), 1e-6 * std::max(1.0, std::fabs(exact)));
    }
  }
}

TEST(Properties, EnergyIsNonnegativeOnRiemannianSpaces) {
  infharm::testing::Gen gen(406);
  for (const auto& [d, c] : std::vector<std::pair<std::string, std::string>>{
           {"euclid:2", "euclid:3"}, {"nil", "sphere:2"}, {"sol", "nil"}, {"sphere:2", "sol"}}) {
    const ModelSpace dom = build_space(d);
    const ModelSpace cod = build_space(c);
    const MapSpec phi = infharm::testing::random_quadratic(gen, dom.dim(), cod.dim(), 0.2);
    const Quotient e = calc::energy_density(dom, cod, phi);
    for (int t = 0; t < 25; ++t) EXPECT_GE(ex::evaluate(e, gen.unit_point(dom.dim())), -1e-12);
  }
}

TEST(Properties, HolomorphicEnergyDoubling) {
  infharm::testing::Gen gen(407);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = static_cast<std::size_t>(gen.integer(1, 2));
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 2));
    const MapSpec phi = MapSpec::holomorphic(infharm::testing::random_complex_map(gen, m, n, 3));
    const ModelSpace dom = build_space("complex:" + std::to_string(m));
    const ModelSpace cod = build_space("complex:" + std::to_string(n));
    Quotient twice = Quotient::constant(2 * m, 0);
    for (std::size_t a = 0; a < n; ++a) twice += calc::gradient_norm_squared(dom, Quotient(phi.components()[a])) * Rational(2);
    EXPECT_TRUE((calc::energy_density(dom, cod, phi) - twice).is_zero());
  }
}

TEST(Properties, ExactZeroSurvivesSampling) {
  const std::vector<std::tuple<std::string, std::string, MapSpec>> cases = {
      {"nil", "euclid:2", MapSpec::affine(RationalMatrix{{0, 1, 0}, {0, 0, 1}}, {})},
      {"sol", "euclid:2", MapSpec::affine(RationalMatrix{{1, 2, 0}, {3, 4, 0}}, {})},
      {"euclid:2", "nil", MapSpec::affine(RationalMatrix{{0, 0}, {1, 2}, {3, 4}}, {})},
      {"sphere:2", "sphere:2", MapSpec::affine(RationalMatrix{{Rational(3, 5), Rational(-4, 5)}, {Rational(4, 5), Rational(3, 5)}}, {})},
      {"euclid:3", "euclid:2", custom(3, {"cos(x)+cos(y)+cos(z)", "sin(x)+sin(y)+sin(z)"})}};
  for (const auto& [d, c, phi] : cases) {
    const auto r = calc::infinity_tension(build_space(d), build_space(c), phi);
    ASSERT_TRUE(r.zero) << d << "->" << c;
    const auto s = calc::sampled_verdict(build_space(d), build_space(c), phi);
    EXPECT_TRUE(s.zero) << d << "->" << c;
    EXPECT_EQ(s.points_used, 64U);
    EXPECT_LT(s.worst_normalized, 1e-9);
  }
}

}  // namespace
