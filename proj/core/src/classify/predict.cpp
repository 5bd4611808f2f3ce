#include "infharm/classify/predict.hpp"

#include <algorithm>

#include "infharm/calculus/operators.hpp"
#include "infharm/errors.hpp"

namespace infharm::classify {
namespace {

using expr::Expr;
using spaces::SpaceKind;

Quotient scalar(const Rational& r) { return Quotient::constant(0, r); }

std::vector<Quotient> entries(const RationalMatrix& a) {
  std::vector<Quotient> out;
  out.reserve(a.rows() * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.push_back(scalar(a(r, c)));
  }
  return out;
}

/// Every product u_i v_j; all vanish iff u = 0 or v = 0.
Residual products(std::string name, const std::vector<Rational>& u, const std::vector<Rational>& v) {
  Residual r{std::move(name), {}};
  for (const auto& x : u) {
    for (const auto& y : v) r.values.push_back(scalar(x * y));
  }
  return r;
}

std::vector<Rational> concat(std::vector<Rational> a, const std::vector<Rational>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool all_vanish(const std::vector<Residual>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const Residual& r) { return r.vanishes(); });
}

bool is_conformal_chart(const SpaceLabel& s) {
  return s.kind == SpaceKind::Euclidean || s.kind == SpaceKind::ConformallyFlat ||
         s.kind == SpaceKind::SphereStereographic;
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

Verdict finish(Verdict v) {
  v.harmonic = all_vanish(v.residuals);
  return v;
}

// Nil -> R^n: the first or the third column of A vanishes.
Verdict from_nil(const RationalMatrix& a) {
  Verdict v;
  v.tag = Tag::ProjectionThenLinear;
  v.residuals.push_back(products("column1*column3", a.col(0), a.col(2)));
  v = finish(v);
  if (v.harmonic && a.is_zero()) v.tag = Tag::ConstantMap;
  else if (v.harmonic) v.indices = a.col_is_zero(0) ? std::vector<std::size_t>{2, 3} : std::vector<std::size_t>{1, 2};
  return v;
}

// Sol -> R^n: the third column vanishes, or the first two do.
Verdict from_sol(const RationalMatrix& a) {
  Verdict v;
  v.tag = Tag::ProjectionThenLinear;
  v.residuals.push_back(products("column3*(column1,column2)", a.col(2), concat(a.col(0), a.col(1))));
  v = finish(v);
  if (v.harmonic && a.is_zero()) v.tag = Tag::ConstantMap;
  else if (v.harmonic) v.indices = a.col_is_zero(2) ? std::vector<std::size_t>{1, 2} : std::vector<std::size_t>{3};
  return v;
}

// R^m -> Nil: the first or the second row vanishes.
Verdict into_nil(const RationalMatrix& a) {
  Verdict v;
  v.tag = Tag::InclusionForm;
  v.residuals.push_back(products("row1*row2", a.row(0), a.row(1)));
  v = finish(v);
  if (v.harmonic && a.is_zero()) v.tag = Tag::ConstantMap;
  else if (v.harmonic) v.indices = a.row_is_zero(0) ? std::vector<std::size_t>{2, 3} : std::vector<std::size_t>{1, 3};
  return v;
}

// R^m -> Sol: the third row vanishes, or the first two do.
Verdict into_sol(const RationalMatrix& a) {
  Verdict v;
  v.tag = Tag::InclusionForm;
  v.residuals.push_back(products("row3*(row1,row2)", a.row(2), concat(a.row(0), a.row(1))));
  v = finish(v);
  if (v.harmonic && a.is_zero()) v.tag = Tag::ConstantMap;
  else if (v.harmonic) v.indices = a.row_is_zero(2) ? std::vector<std::size_t>{1, 2} : std::vector<std::size_t>{3};
  return v;
}

// Sphere -> sphere: A = 0 or A^t A = I.
Verdict sphere_to_sphere(const RationalMatrix& a) {
  const RationalMatrix defect = a.transpose() * a - RationalMatrix::identity(a.cols());
  Verdict v;
  v.tag = Tag::IsometricImmersion;
  Residual r{"A*(A^tA-I)", {}};
  for (const auto& x : entries(a)) {
    for (const auto& y : entries(defect)) r.values.push_back(x * y);
  }
  v.residuals.push_back(std::move(r));
  v = finish(v);
  if (v.harmonic && a.is_zero()) v.tag = Tag::ConstantMap;
  return v;
}

Verdict constant_only(const RationalMatrix& a) {
  Verdict v;
  v.tag = Tag::ConstantMap;
  v.residuals.push_back({"A", entries(a)});
  return finish(v);
}

Verdict conformal_criterion(const SpaceLabel& domain, const SpaceLabel& codomain, const RationalMatrix& a,
                       const std::vector<Rational>& b) {
  const std::size_t m = domain.dim;
  const std::size_t n = codomain.dim;
  const Quotient f = domain.conformal_factor.value_or(Quotient::constant(m, 1));
  const Quotient lambda = codomain.conformal_factor.value_or(Quotient::constant(n, 1));
  std::vector<Expr> images;
  for (std::size_t r = 0; r < n; ++r) {
    Expr e = Expr::constant(m, b.empty() ? Rational(0) : b[r]);
    for (std::size_t c = 0; c < m; ++c) e += Expr::coordinate(m, c) * a(r, c);
    images.push_back(std::move(e));
  }
  const Quotient ratio = f / expr::substitute(lambda, images);
  Rational norm;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) norm += a(r, c) * a(r, c);
  }
  std::vector<Quotient> grad;
  for (std::size_t c = 0; c < m; ++c) grad.push_back(expr::partial_derivative(ratio, c));
  Residual res{"|A|^2*<A^a,grad(F/lambda(phi))>", {}};
  for (std::size_t r = 0; r < n; ++r) {
    Quotient s = Quotient::constant(m, 0);
    for (std::size_t c = 0; c < m; ++c) s += grad[c] * a(r, c);
    res.values.push_back(s * norm);
  }
  Verdict v;
  v.tag = Tag::Unconstrained;
  v.residuals.push_back(std::move(res));
  v = finish(v);
  if (a.is_zero()) v.tag = Tag::ConstantMap;
  return v;
}

void check_shape(const SpaceLabel& domain, const SpaceLabel& codomain, const RationalMatrix& a,
                 const std::vector<Rational>& b) {
  if (a.rows() != codomain.dim || a.cols() != domain.dim) {
    throw DimensionError("linear part is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " but the pair needs " +
                         std::to_string(codomain.dim) + "x" + std::to_string(domain.dim));
  }
  if (!b.empty() && b.size() != codomain.dim) throw DimensionError("offset length does not match the codomain");
}

std::string pair_name(const SpaceLabel& domain, const SpaceLabel& codomain) {
  return domain.to_string() + " -> " + codomain.to_string();
}

}  // namespace

Verdict predict_conformal_linear(const SpaceLabel& domain, const SpaceLabel& codomain, const RationalMatrix& a,
                                 const std::vector<Rational>& b) {
  if (!is_conformal_chart(domain) || !is_conformal_chart(codomain)) {
    throw UnsupportedPair("not a pair of conformally flat charts: " + pair_name(domain, codomain));
  }
  check_shape(domain, codomain, a, b);
  return conformal_criterion(domain, codomain, a, b);
}

LemmaCheck matrix_lemma_condition(const std::vector<RationalMatrix>& quad) {
  LemmaCheck out;
  if (quad.empty()) {
    out.holds = true;
    return out;
  }
  const std::size_t m = quad.front().rows();
  for (const auto& q : quad) {
    if (q.rows() != m || q.cols() != m) throw ValidationError("matrices must all be " + std::to_string(m) + "x" + std::to_string(m));
    if (!q.is_symmetric()) throw ValidationError("matrix is not symmetric");
  }
  RationalMatrix s(m, m);
  for (const auto& q : quad) s += q * q;
  out.holds = true;
  for (const auto& q : quad) {
    out.anticommutators.push_back(s * q + q * s);
    if (!out.anticommutators.back().is_zero()) out.holds = false;
  }
  return out;
}

Verdict predict_linear(const SpaceLabel& domain, const SpaceLabel& codomain, const RationalMatrix& a,
                       const std::vector<Rational>& b) {
  check_shape(domain, codomain, a, b);
  const auto dk = domain.kind;
  const auto ck = codomain.kind;
  const bool offset_free = all_zero(b);
  if (dk == SpaceKind::Euclidean && ck == SpaceKind::Euclidean) {
    Verdict v;
    v.harmonic = true;
    v.tag = a.is_zero() ? Tag::ConstantMap : Tag::AffineOnly;
    return v;
  }
  if (dk == SpaceKind::Nil && ck == SpaceKind::Euclidean) return from_nil(a);
  if (dk == SpaceKind::Sol && ck == SpaceKind::Euclidean) return from_sol(a);
  if (dk == SpaceKind::Euclidean && ck == SpaceKind::Nil) return into_nil(a);
  if (dk == SpaceKind::Euclidean && ck == SpaceKind::Sol) return into_sol(a);
  if (dk == SpaceKind::SphereStereographic && ck == SpaceKind::SphereStereographic && offset_free) return sphere_to_sphere(a);
  if (dk == SpaceKind::Euclidean && ck == SpaceKind::SphereStereographic && offset_free) return constant_only(a);
  if (dk == SpaceKind::SphereStereographic && ck == SpaceKind::Euclidean) return constant_only(a);
  if (is_conformal_chart(domain) && is_conformal_chart(codomain)) return predict_conformal_linear(domain, codomain, a, b);
  throw UnsupportedPair("no linear classification for " + pair_name(domain, codomain));
}

Verdict predict_quadratic(const SpaceLabel& domain, const SpaceLabel& codomain, const MapSpec& phi) {
  if (phi.kind() != mapspec::MapKind::Quadratic) throw ValidationError("predict_quadratic needs a quadratic map");
  check_shape(domain, codomain, phi.linear(), phi.offset());
  const LemmaCheck lemma = matrix_lemma_condition(phi.quad());
  Residual anti{"anticommutators", {}};
  for (const auto& q : lemma.anticommutators) {
    const auto e = entries(q);
    anti.values.insert(anti.values.end(), e.begin(), e.end());
  }
  const bool quad_zero = std::all_of(phi.quad().begin(), phi.quad().end(), [](const RationalMatrix& q) { return q.is_zero(); });
  const auto dk = domain.kind;
  const auto ck = codomain.kind;
  const bool euclid_pair = dk == SpaceKind::Euclidean && ck == SpaceKind::Euclidean;
  if (quad_zero) {
    Verdict v = predict_linear(domain, codomain, phi.linear(), phi.offset());
    if (euclid_pair) v.tag = Tag::AffineOnly;
    v.residuals.insert(v.residuals.begin(), std::move(anti));
    return finish(v);
  }
  const bool affine_zero = phi.linear().is_zero() && all_zero(phi.offset());
  const bool pure_pair = (dk == SpaceKind::Euclidean && (ck == SpaceKind::SphereStereographic || ck == SpaceKind::Nil ||
                                                         ck == SpaceKind::Sol)) ||
                         (dk == SpaceKind::SphereStereographic && ck == SpaceKind::Euclidean);
  if (!euclid_pair && !(pure_pair && affine_zero)) {
    throw UnsupportedPair("no quadratic classification for " + pair_name(domain, codomain) +
                          (pure_pair ? " with an affine part" : ""));
  }
  Verdict v;
  v.tag = euclid_pair && !affine_zero ? Tag::AffineOnly : Tag::ConstantMap;
  v.residuals.push_back(std::move(anti));
  return finish(v);
}

Verdict predict_holomorphic(const ComplexPolyMap& c) {
  if (c.components.size() != 1) return predict_holomorphic_split(c);
  const mapspec::ComplexPoly& p = c.components.front();
  Verdict v;
  v.tag = Tag::HomothetyOfProjection;
  Residual nonlinear{"coefficients of degree >= 2", {}};
  for (const auto& [exponents, coef] : p.terms()) {
    std::uint32_t d = 0;
    for (auto e : exponents) d += e;
    if (d < 2) continue;
    nonlinear.values.push_back(scalar(coef.re));
    nonlinear.values.push_back(scalar(coef.im));
  }
  v.residuals.push_back(std::move(nonlinear));
  v = finish(v);
  if (!v.harmonic) return v;
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < c.m; ++j) {
    if (!p.linear_coefficient(j).is_zero()) active.push_back(j);
  }
  if (active.empty()) {
    v.tag = Tag::ConstantMap;
    return v;
  }
  for (auto j : active) v.indices.push_back(j + 1);
  if (active.size() == 1) {
    v.lambda = p.linear_coefficient(active[0]);
    v.z0 = p.constant_term();
  }
  v.literal_form = active.size() == 1 && v.lambda->im.is_zero();
  if (!v.literal_form) {
    v.note = active.size() == 1 ? "affine with non-real lambda; the literal criterion requires lambda to be real"
                                : "affine in several variables; the literal criterion allows a single z_i";
  }
  return v;
}

Verdict predict_holomorphic_split(const ComplexPolyMap& c) {
  const MapSpec full = MapSpec::holomorphic(c);
  const std::size_t n = c.components.size();
  const std::size_t m2 = 2 * c.m;
  const auto& comps = full.components();
  const MapSpec re = MapSpec::custom(m2, std::vector<Expr>(comps.begin(), comps.begin() + static_cast<long>(n)));
  const MapSpec im = MapSpec::custom(m2, std::vector<Expr>(comps.begin() + static_cast<long>(n), comps.end()));
  const ModelSpace domain = spaces::build_space(SpaceLabel::euclidean(m2));
  const ModelSpace codomain = spaces::build_space(SpaceLabel::euclidean(n));
  Verdict v;
  v.tag = Tag::SplitsRealImag;
  v.residuals.push_back({"real part tension", calculus::infinity_tension_components(domain, codomain, re)});
  v.residuals.push_back({"imaginary part tension", calculus::infinity_tension_components(domain, codomain, im)});
  return finish(v);
}

namespace {

/// A custom map whose components are polynomials of degree <= 2, rebuilt as
/// an affine or quadratic map.
std::optional<MapSpec> as_quadratic_family(const MapSpec& phi) {
  const std::size_t m = phi.domain_dim();
  const std::size_t n = phi.codomain_dim();
  std::vector<RationalMatrix> quad(n, RationalMatrix(m, m));
  RationalMatrix a(n, m);
  std::vector<Rational> b(n);
  bool has_quad = false;
  for (std::size_t r = 0; r < n; ++r) {
    const Expr& c = phi.components()[r];
    if (!c.is_polynomial() || c.degree() > 2) return std::nullopt;
    for (const auto& [mono, coeff] : c.terms()) {
      std::vector<std::size_t> vars;
      for (std::size_t i = 0; i < m; ++i) vars.insert(vars.end(), mono.coord[i], i);
      if (vars.empty()) {
        b[r] = coeff;
      } else if (vars.size() == 1) {
        a(r, vars[0]) = coeff;
      } else if (vars[0] == vars[1]) {
        quad[r](vars[0], vars[0]) = coeff;
        has_quad = true;
      } else {
        quad[r](vars[0], vars[1]) = coeff / Rational(2);
        quad[r](vars[1], vars[0]) = coeff / Rational(2);
        has_quad = true;
      }
    }
  }
  if (!has_quad) return MapSpec::affine(std::move(a), std::move(b));
  return MapSpec::quadratic(std::move(quad), std::move(a), std::move(b));
}

}  // namespace

std::optional<Verdict> predict(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi) {
  try {
    switch (phi.kind()) {
      case mapspec::MapKind::Affine:
        return predict_linear(domain.label(), codomain.label(), phi.linear(), phi.offset());
      case mapspec::MapKind::Quadratic:
        return predict_quadratic(domain.label(), codomain.label(), phi);
      case mapspec::MapKind::Holomorphic: {
        const auto& src = *phi.complex_source();
        const bool flat = domain.kind() == SpaceKind::Euclidean && codomain.kind() == SpaceKind::Euclidean;
        if (!flat || domain.dim() != 2 * src.m || codomain.dim() != 2 * src.components.size()) return std::nullopt;
        return predict_holomorphic(src);
      }
      case mapspec::MapKind::Custom: {
        const auto rebuilt = as_quadratic_family(phi);
        if (!rebuilt) return std::nullopt;
        return predict(domain, codomain, *rebuilt);
      }
    }
  } catch (const UnsupportedPair&) {
    return std::nullopt;
  }
  return std::nullopt;
}

CrossValidation cross_validate(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi) {
  CrossValidation out;
  out.direct = calculus::infinity_tension(domain, codomain, phi);
  out.predicted = predict(domain, codomain, phi);
  out.agree = !out.predicted || out.predicted->harmonic == out.direct.zero;
  return out;
}

RationalMatrix cayley_orthogonal(const RationalMatrix& skew, std::size_t m) {
  if (!skew.is_skew_symmetric()) throw ValidationError("Cayley transform needs a skew-symmetric matrix");
  const RationalMatrix id = RationalMatrix::identity(skew.rows());
  return ((id - skew) * (id + skew).inverse()).leading_columns(m);
}

}  // namespace infharm::classify
