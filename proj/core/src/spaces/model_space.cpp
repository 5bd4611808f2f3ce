#include "infharm/spaces/model_space.hpp"

#include <algorithm>
#include <charconv>

#include "infharm/errors.hpp"
#include "infharm/expr/format.hpp"
#include "infharm/expr/parse.hpp"

namespace infharm::spaces {

namespace {

constexpr std::size_t kMaxDim = 16;

std::vector<std::string_view> split(std::string_view text, char sep, std::size_t max_parts) {
  std::vector<std::string_view> parts;
  while (parts.size() + 1 < max_parts) {
    const auto pos = text.find(sep);
    if (pos == std::string_view::npos) break;
    parts.push_back(text.substr(0, pos));
    text.remove_prefix(pos + 1);
  }
  parts.push_back(text);
  return parts;
}

std::size_t parse_dim(std::string_view text, std::string_view label) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0 || value > kMaxDim) {
    throw ParseError("", "invalid dimension '" + std::string(text) + "' in space '" + std::string(label) + "'");
  }
  return value;
}

Quotient sphere_factor(std::size_t m) {
  Expr sum = Expr::constant(m, 1);
  for (std::size_t i = 0; i < m; ++i) sum += Expr::coordinate(m, i) * Expr::coordinate(m, i);
  return Quotient(sum * expr::Rational(1, 2));
}

}  // namespace

SpaceLabel SpaceLabel::euclidean(std::size_t m) {
  SpaceLabel l;
  l.kind = SpaceKind::Euclidean;
  l.dim = m;
  return l;
}

SpaceLabel SpaceLabel::sphere(std::size_t m) {
  SpaceLabel l;
  l.kind = SpaceKind::SphereStereographic;
  l.dim = m;
  l.conformal_factor = sphere_factor(m);
  return l;
}

SpaceLabel SpaceLabel::nil() {
  SpaceLabel l;
  l.kind = SpaceKind::Nil;
  l.dim = 3;
  return l;
}

SpaceLabel SpaceLabel::sol() {
  SpaceLabel l;
  l.kind = SpaceKind::Sol;
  l.dim = 3;
  return l;
}

SpaceLabel SpaceLabel::parse(std::string_view text) {
  const auto parts = split(text, ':', 3);
  const std::string_view head = parts[0];
  auto expect_parts = [&](std::size_t n) {
    if (parts.size() != n) throw ParseError("", "malformed space label '" + std::string(text) + "'");
  };
  if (head == "nil") {
    expect_parts(1);
    return nil();
  }
  if (head == "sol") {
    expect_parts(1);
    return sol();
  }
  if (head == "euclid") {
    expect_parts(2);
    return euclidean(parse_dim(parts[1], text));
  }
  if (head == "complex") {
    expect_parts(2);
    const std::size_t m = parse_dim(parts[1], text);
    if (2 * m > kMaxDim) throw ParseError("", "complex dimension too large in '" + std::string(text) + "'");
    SpaceLabel l = euclidean(2 * m);
    l.complex_dim = m;
    return l;
  }
  if (head == "sphere") {
    expect_parts(2);
    return sphere(parse_dim(parts[1], text));
  }
  if (head == "semi-euclid") {
    expect_parts(3);
    SpaceLabel l;
    l.kind = SpaceKind::SemiEuclidean;
    l.dim = parse_dim(parts[1], text);
    if (parts[2].size() != l.dim) {
      throw ParseError("", "signature '" + std::string(parts[2]) + "' must have one sign per axis");
    }
    for (char c : parts[2]) {
      if (c != '+' && c != '-') throw ParseError("", "signature may contain only '+' and '-'");
      l.signature.push_back(c == '+' ? 1 : -1);
    }
    return l;
  }
  if (head == "conformal") {
    expect_parts(3);
    SpaceLabel l;
    l.kind = SpaceKind::ConformallyFlat;
    l.dim = parse_dim(parts[1], text);
    Quotient f = expr::parse_quotient(parts[2], l.dim);
    if (f.is_zero()) throw ParseError("", "conformal factor must not vanish identically");
    l.conformal_factor = std::move(f);
    return l;
  }
  throw ParseError("", "unknown space '" + std::string(text) + "'");
}

std::string SpaceLabel::to_string() const {
  switch (kind) {
    case SpaceKind::Euclidean:
      if (complex_dim != 0) return "complex:" + std::to_string(complex_dim);
      return "euclid:" + std::to_string(dim);
    case SpaceKind::SemiEuclidean: {
      std::string sig;
      for (int s : signature) sig += s > 0 ? '+' : '-';
      return "semi-euclid:" + std::to_string(dim) + ":" + sig;
    }
    case SpaceKind::SphereStereographic:
      return "sphere:" + std::to_string(dim);
    case SpaceKind::ConformallyFlat:
      return "conformal:" + std::to_string(dim) + ":" + expr::to_string(*conformal_factor);
    case SpaceKind::Nil:
      return "nil";
    case SpaceKind::Sol:
      return "sol";
  }
  return "?";
}

ChristoffelTable::ChristoffelTable(std::size_t dim)
    : dim_(dim), gamma_(dim * dim * dim, Quotient::constant(dim, 0)) {}

bool ChristoffelTable::is_zero() const {
  return std::all_of(gamma_.begin(), gamma_.end(), [](const Quotient& q) { return q.is_zero(); });
}

bool ModelSpace::is_riemannian() const { return kind() != SpaceKind::SemiEuclidean ||
  std::all_of(label().signature.begin(), label().signature.end(), [](int s) { return s > 0; }); }

bool ModelSpace::has_polynomial_metric() const {
  auto poly = [](const Quotient& q) { return q.is_polynomial_form(); };
  return std::all_of(state_->lower.begin(), state_->lower.end(), poly) &&
         std::all_of(state_->upper.begin(), state_->upper.end(), poly);
}

bool ModelSpace::is_flat_chart() const {
  return std::all_of(state_->lower.begin(), state_->lower.end(), [](const Quotient& q) { return q.is_constant(); });
}

const ChristoffelTable& ModelSpace::christoffel() const {
  std::call_once(state_->christoffel_once, [this] {
    state_->christoffel = std::make_unique<ChristoffelTable>(levi_civita(dim(), state_->lower, state_->upper));
  });
  return *state_->christoffel;
}

ChristoffelTable levi_civita(std::size_t dim, const std::vector<Quotient>& lower, const std::vector<Quotient>& upper) {
  // dg[(l * dim + i) * dim + j] = d_l g_ij
  std::vector<Quotient> dg;
  dg.reserve(dim * dim * dim);
  for (std::size_t l = 0; l < dim; ++l) {
    for (std::size_t idx = 0; idx < dim * dim; ++idx) dg.push_back(expr::partial_derivative(lower[idx], l));
  }
  auto d = [&](std::size_t l, std::size_t i, std::size_t j) -> const Quotient& { return dg[(l * dim + i) * dim + j]; };

  ChristoffelTable table(dim);
  const expr::Rational half(1, 2);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      // First-kind symbols [ij, l] = (d_i g_jl + d_j g_il - d_l g_ij) / 2.
      std::vector<Quotient> first;
      first.reserve(dim);
      for (std::size_t l = 0; l < dim; ++l) first.push_back((d(i, j, l) + d(j, i, l) - d(l, i, j)) * half);
      for (std::size_t k = 0; k < dim; ++k) {
        Quotient sum = Quotient::constant(dim, 0);
        for (std::size_t l = 0; l < dim; ++l) {
          if (!first[l].is_zero() && !upper[k * dim + l].is_zero()) sum += upper[k * dim + l] * first[l];
        }
        table(k, i, j) = sum;
        table(k, j, i) = sum;
      }
    }
  }
  return table;
}

ModelSpace build_space(const SpaceLabel& label) {
  const std::size_t m = label.dim;
  if (m == 0 || m > kMaxDim) throw DimensionError("space dimension out of range");
  auto state = std::make_shared<ModelSpace::State>();
  state->label = label;
  const Quotient zero = Quotient::constant(m, 0);
  const Quotient one = Quotient::constant(m, 1);
  state->lower.assign(m * m, zero);
  state->upper.assign(m * m, zero);
  auto set = [&](std::vector<Quotient>& g, std::size_t i, std::size_t j, const Quotient& v) {
    g[i * m + j] = v;
    g[j * m + i] = v;
  };

  switch (label.kind) {
    case SpaceKind::Euclidean:
      for (std::size_t i = 0; i < m; ++i) {
        set(state->lower, i, i, one);
        set(state->upper, i, i, one);
      }
      break;
    case SpaceKind::SemiEuclidean:
      if (label.signature.size() != m) throw ValidationError("signature length must equal the dimension");
      for (std::size_t i = 0; i < m; ++i) {
        const Quotient s = Quotient::constant(m, label.signature[i]);
        set(state->lower, i, i, s);
        set(state->upper, i, i, s);
      }
      break;
    case SpaceKind::SphereStereographic:
    case SpaceKind::ConformallyFlat: {
      if (!label.conformal_factor || label.conformal_factor->nvars() != m || label.conformal_factor->is_zero()) {
        throw ValidationError("conformally flat space needs a nonzero conformal factor in its own coordinates");
      }
      const Quotient f = expr::factor_core(*label.conformal_factor);
      const Quotient inv_sq = expr::pow(f, -2);
      const Quotient sq = f * f;
      for (std::size_t i = 0; i < m; ++i) {
        set(state->lower, i, i, inv_sq);
        set(state->upper, i, i, sq);
      }
      break;
    }
    case SpaceKind::Nil: {
      if (m != 3) throw DimensionError("Nil space is three-dimensional");
      const Expr x = Expr::coordinate(3, 0);
      const Expr c1 = Expr::constant(3, 1);
      set(state->lower, 0, 0, one);
      set(state->lower, 1, 1, Quotient(c1 + x * x));
      set(state->lower, 1, 2, Quotient(-x));
      set(state->lower, 2, 2, one);
      set(state->upper, 0, 0, one);
      set(state->upper, 1, 1, one);
      set(state->upper, 1, 2, Quotient(x));
      set(state->upper, 2, 2, Quotient(c1 + x * x));
      break;
    }
    case SpaceKind::Sol: {
      if (m != 3) throw DimensionError("Sol space is three-dimensional");
      const Expr z = Expr::coordinate(3, 2);
      const Quotient up = Quotient(Expr::exp(z * expr::Rational(2)));
      const Quotient down = Quotient(Expr::exp(z * expr::Rational(-2)));
      set(state->lower, 0, 0, up);
      set(state->lower, 1, 1, down);
      set(state->lower, 2, 2, one);
      set(state->upper, 0, 0, down);
      set(state->upper, 1, 1, up);
      set(state->upper, 2, 2, one);
      break;
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Quotient sum = Quotient::constant(m, i == j ? -1 : 0);
      for (std::size_t k = 0; k < m; ++k) sum += state->lower[i * m + k] * state->upper[k * m + j];
      if (!sum.is_zero()) throw ValidationError("metric of " + label.to_string() + " is not invertible as given");
    }
  }

  ModelSpace space;
  space.state_ = std::move(state);
  return space;
}

ModelSpace build_space(std::string_view text) { return build_space(SpaceLabel::parse(text)); }

std::vector<std::string> catalog_descriptions() {
  return {
      "euclid:m            R^m with the flat metric",
      "semi-euclid:m:<sig> R^m with diagonal metric of signature <sig> (one '+' or '-' per axis)",
      "sphere:m            S^m minus a pole, stereographic chart, metric 4/(1+|x|^2)^2 delta",
      "conformal:m:<F>     R^m with metric F^-2 delta; F a rational expression in the coordinates",
      "nil                 Heisenberg space, metric dx^2 + dy^2 + (dz - x dy)^2",
      "sol                 Sol space, metric exp(2z) dx^2 + exp(-2z) dy^2 + dz^2",
      "complex:m           C^m realified as euclid:2m with coordinates (x1..xm, y1..ym)",
  };
}

}  // namespace infharm::spaces
