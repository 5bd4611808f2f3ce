#include <gtest/gtest.h>

#include <complex>

#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "map_generators.hpp"
#include "infharm/errors.hpp"
#include "infharm/expr/format.hpp"
#include "infharm/expr/parse.hpp"
#include "infharm/mapspec/map_spec.hpp"

namespace {

using infharm::expr::Expr;
using infharm::expr::Rational;
using infharm::expr::RationalMatrix;
using infharm::mapspec::ComplexPoly;
using infharm::mapspec::ComplexPolyMap;
using infharm::mapspec::MapKind;
using infharm::mapspec::MapSpec;
using nlohmann::json;
namespace ex = infharm::expr;
namespace ms = infharm::mapspec;

std::vector<Expr> parse_all(const std::vector<std::string>& texts, std::size_t m) {
  std::vector<Expr> out;
  for (const auto& t : texts) out.push_back(ex::parse_expr(t, m));
  return out;
}

TEST(MapSpec, AffineIdentity) {
  const MapSpec s = MapSpec::affine(RationalMatrix::identity(2), {0, 0});
  EXPECT_EQ(s.components(), ex::coordinates(2));
}

TEST(MapSpec, SingleSquare) {
  const MapSpec s = MapSpec::quadratic({RationalMatrix{{1}}}, RationalMatrix{}, {});
  EXPECT_EQ(s.components(), parse_all({"x^2"}, 1));
}

TEST(MapSpec, TrigCustomMap) {
  const MapSpec s = ms::parse_mapspec(
      json{{"kind", "custom"}, {"components", {"cos(x)+cos(y)+cos(z)", "sin(x)+sin(y)+sin(z)"}}});
  EXPECT_EQ(s.domain_dim(), 3U);
  EXPECT_EQ(s.codomain_dim(), 2U);
  EXPECT_EQ(s.components()[0], Expr::cos(3, 0) + Expr::cos(3, 1) + Expr::cos(3, 2));
  EXPECT_EQ(s.components()[1], Expr::sin(3, 0) + Expr::sin(3, 1) + Expr::sin(3, 2));
}

TEST(MapSpec, RejectsAsymmetricQuad) {
  EXPECT_THROW(MapSpec::quadratic({RationalMatrix{{0, 1}, {0, 0}}}, RationalMatrix{}, {}), infharm::ValidationError);
  try {
    ms::parse_mapspec(json::parse(R"({"kind":"quadratic","quad":[[[0,1],[0,0]]]})"));
    FAIL() << "expected a parse error";
  } catch (const infharm::ParseError& e) {
    EXPECT_EQ(e.path(), "quad[0]");
  }
}

TEST(MapSpec, ParsesDocuments) {
  const MapSpec id = ms::parse_mapspec(json::parse(R"({"kind":"affine","A":[[1,0],[0,1]],"b":[0,0]})"));
  EXPECT_EQ(id, MapSpec::affine(RationalMatrix::identity(2), {0, 0}));
  const MapSpec q = ms::parse_mapspec(
      json::parse(R"({"kind":"quadratic","quad":[[["1/2","0"],["0","1/2"]]],"A":[[0,0]],"b":[0]})"));
  EXPECT_EQ(q.quad()[0], RationalMatrix::identity(2) * Rational(1, 2));
  const MapSpec dec = ms::parse_mapspec(json::parse(R"({"kind":"affine","A":[["0.25","-1.5e1"]]})"));
  EXPECT_EQ(dec.linear()(0, 0), Rational(1, 4));
  EXPECT_EQ(dec.linear()(0, 1), Rational(-15));
}

TEST(MapSpec, ErrorsNameTheField) {
  auto path_of = [](const char* text) -> std::string {
    try {
      ms::parse_mapspec(json::parse(text));
    } catch (const infharm::ParseError& e) {
      return e.path();
    }
    return "<no error>";
  };
  EXPECT_EQ(path_of(R"({"kind":"affine","A":[[1,"1/0"]]})"), "A[0][1]");
  EXPECT_EQ(path_of(R"({"kind":"affine","A":[[1,0.5]]})"), "A[0][1]");
  EXPECT_EQ(path_of(R"({"kind":"affine","A":[[1,0],[1]]})"), "A[1]");
  EXPECT_EQ(path_of(R"({"kind":"affine","A":[[1,0]],"b":[1,2]})"), "b");
  EXPECT_EQ(path_of(R"({"kind":"affine"})"), "A");
  EXPECT_EQ(path_of(R"({"kind":"spline"})"), "kind");
  EXPECT_EQ(path_of(R"({"kind":"custom","components":["x +* y"]})"), "components[0]");
  EXPECT_EQ(path_of(R"J({"kind":"holomorphic","complex":["exp(z)"]})J"), "complex[0]");
  EXPECT_EQ(path_of(R"({"kind":"quadratic","quad":[[[1,0],[0,1]]],"A":[[1]]})"), "A");
  EXPECT_THROW(ms::parse_mapspec_text("{not json"), infharm::ParseError);
}

TEST(MapSpec, DomainHintFixesCustomDimension) {
  const MapSpec s = ms::parse_mapspec(json{{"kind", "custom"}, {"components", {"y"}}}, 3);
  EXPECT_EQ(s.domain_dim(), 3U);
  EXPECT_THROW(ms::parse_mapspec(json::parse(R"({"kind":"affine","A":[[1,0]]})"), 3), infharm::ParseError);
}

TEST(Realify, Examples) {
  auto realified = [](const char* text) {
    return MapSpec::holomorphic(ComplexPolyMap{1, {ComplexPoly::parse(text, 1)}}).components();
  };
  EXPECT_EQ(realified("z"), parse_all({"x", "y"}, 2));
  // (x - iy)^2 = x^2 - y^2 - 2ixy, and w = u - iv gives v = 2xy.
  EXPECT_EQ(realified("z^2"), parse_all({"x^2 - y^2", "2*x*y"}, 2));
  EXPECT_EQ(realified("2*z + 1"), parse_all({"2*x + 1", "2*y"}, 2));
  // i*z = i x + y, so u = y and v = -x.
  EXPECT_EQ(realified("i*z"), parse_all({"y", "-x"}, 2));
}

TEST(Realify, MultiVariableOrdering) {
  const MapSpec s = ms::parse_mapspec(json{{"kind", "holomorphic"}, {"complex", {"3*z2 + (1+i)"}}});
  EXPECT_EQ(s.domain_dim(), 4U);
  EXPECT_EQ(s.codomain_dim(), 2U);
  // coordinates (x1, x2, y1, y2); u = 3 x2 + 1, v = 3 y2 - 1.
  EXPECT_EQ(s.components(), parse_all({"3*x2 + 1", "3*x4 - 1"}, 4));
}

TEST(Realify, CauchyRiemannAndEqualGradients) {
  infharm::testing::Gen gen(301);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = static_cast<std::size_t>(gen.integer(1, 2));
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 2));
    const MapSpec s = MapSpec::holomorphic(infharm::testing::random_complex_map(gen, m, n, 3));
    for (std::size_t a = 0; a < n; ++a) {
      const Expr& u = s.components()[a];
      const Expr& v = s.components()[n + a];
      Expr grad_u(2 * m);
      Expr grad_v(2 * m);
      for (std::size_t j = 0; j < m; ++j) {
        const auto du_dx = ex::partial_derivative(u, j);
        const auto du_dy = ex::partial_derivative(u, m + j);
        const auto dv_dx = ex::partial_derivative(v, j);
        const auto dv_dy = ex::partial_derivative(v, m + j);
        EXPECT_TRUE((du_dx - dv_dy).is_zero());
        EXPECT_TRUE((du_dy + dv_dx).is_zero());
        grad_u += du_dx * du_dx + du_dy * du_dy;
        grad_v += dv_dx * dv_dx + dv_dy * dv_dy;
      }
      EXPECT_TRUE((grad_u - grad_v).is_zero());
    }
  }
}

TEST(Realify, MatchesComplexEvaluation) {
  // Oracle: evaluate the complex polynomial with std::complex at z = x - iy.
  infharm::testing::Gen gen(302);
  for (int t = 0; t < 50; ++t) {
    const ComplexPoly p = infharm::testing::random_complex_poly(gen, 1, 3);
    const MapSpec s = MapSpec::holomorphic(ComplexPolyMap{1, {p}});
    const auto pt = gen.unit_point(2);
    const std::complex<double> z(pt[0], -pt[1]);
    std::complex<double> w = 0;
    for (const auto& [e, c] : p.terms()) w += std::complex<double>(c.re.to_double(), c.im.to_double()) * std::pow(z, e[0]);
    EXPECT_NEAR(ex::evaluate(s.components()[0], pt), w.real(), 1e-9);
    EXPECT_NEAR(ex::evaluate(s.components()[1], pt), -w.imag(), 1e-9);
  }
}

TEST(MapSpec, QuadraticGradientFormula) {
  infharm::testing::Gen gen(303);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = static_cast<std::size_t>(gen.integer(1, 4));
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 3));
    const MapSpec s = infharm::testing::random_quadratic(gen, m, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t i = 0; i < m; ++i) {
        // (2 X^t A_a + alpha_a)_i built directly from the matrices.
        Expr expected = Expr::constant(m, s.linear()(a, i));
        for (std::size_t j = 0; j < m; ++j) expected += Expr::constant(m, Rational(2) * s.quad()[a](j, i)) * Expr::coordinate(m, j);
        EXPECT_EQ(ex::partial_derivative(s.components()[a], i), expected);
      }
    }
  }
}

TEST(MapSpec, SerializeRoundTrip) {
  infharm::testing::Gen gen(304);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = static_cast<std::size_t>(gen.integer(1, 4));
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 3));
    MapSpec s = MapSpec::affine(gen.matrix(n, m, 0.3), std::vector<Rational>(n, gen.rational()));
    switch (t % 4) {
      case 1: s = infharm::testing::random_quadratic(gen, m, n); break;
      case 2: {
        std::vector<Expr> comps;
        for (std::size_t k = 0; k < n; ++k) comps.push_back(gen.mixed(m, 3));
        s = MapSpec::custom(m, std::move(comps));
        break;
      }
      case 3: s = MapSpec::holomorphic(infharm::testing::random_complex_map(gen, (m + 1) / 2, n, 3)); break;
      default: break;
    }
    const json doc = ms::serialize(s);
    EXPECT_EQ(ms::parse_mapspec(json::parse(doc.dump())), s) << doc.dump();
    EXPECT_EQ(ms::digest(s), ms::digest(ms::parse_mapspec(doc)));
  }
}

TEST(MapSpec, PaddingAddsZeroComponents) {
  const MapSpec q = MapSpec::quadratic({RationalMatrix{{1}}}, RationalMatrix{}, {});
  const MapSpec p = q.padded(3);
  EXPECT_EQ(p.kind(), MapKind::Quadratic);
  EXPECT_EQ(p.components(), parse_all({"x^2", "0", "0"}, 1));
  EXPECT_THROW(q.padded(0), infharm::DimensionError);
}

TEST(ComplexPoly, RendersAndParsesBack) {
  infharm::testing::Gen gen(305);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = static_cast<std::size_t>(gen.integer(1, 3));
    const ComplexPoly p = infharm::testing::random_complex_poly(gen, m, 3);
    EXPECT_EQ(ComplexPoly::parse(p.to_string(), m), p) << p.to_string();
  }
  EXPECT_EQ(ComplexPoly::parse("3*z2 + (1+i)", 2).to_string(), "(1 + i) + 3*z2");
  EXPECT_EQ(ComplexPoly::parse("z/(1+i)", 1).to_string(), "(1/2 - (1/2)*i)*z");
  EXPECT_THROW(ComplexPoly::parse("1/z", 1), infharm::UnsupportedExpression);
  EXPECT_THROW(ComplexPoly::parse("x", 1), infharm::ParseError);
}

}  // namespace
