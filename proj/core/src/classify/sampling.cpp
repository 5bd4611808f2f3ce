#include "infharm/classify/sampling.hpp"

#include "infharm/classify/predict.hpp"
#include "infharm/errors.hpp"

namespace infharm::classify {
namespace {

using spaces::SpaceKind;

// Probability (in quarters) that an individual entry is zeroed.
long sparsity(Rng& rng) { return rng.uniform(0, 3); }

mapspec::Gaussian random_gaussian(Rng& rng) {
  const long mode = rng.uniform(0, 2);
  return {mode == 1 ? Rational(0) : rng.nonzero_rational(), mode == 0 ? Rational(0) : rng.nonzero_rational()};
}

/// Exponent vectors of total degree d in m variables.
void monomials(std::size_t m, unsigned d, std::vector<std::uint32_t>& current, std::size_t index,
               std::vector<std::vector<std::uint32_t>>& out) {
  if (index + 1 == m) {
    current[index] = d;
    out.push_back(current);
    return;
  }
  for (unsigned k = 0; k <= d; ++k) {
    current[index] = k;
    monomials(m, d - k, current, index + 1, out);
  }
}

std::vector<std::vector<std::uint32_t>> monomials_up_to(std::size_t m, unsigned degree) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> current(m, 0);
  for (unsigned d = 0; d <= degree; ++d) monomials(m, d, current, 0, out);
  return out;
}

}  // namespace

RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  RationalMatrix a(rows, cols);
  if (rng.chance(1, 12)) return a;
  std::vector<bool> zero_row(rows);
  std::vector<bool> zero_col(cols);
  for (std::size_t r = 0; r < rows; ++r) zero_row[r] = rng.chance(1, 4);
  for (std::size_t c = 0; c < cols; ++c) zero_col[c] = rng.chance(1, 4);
  const long q = sparsity(rng);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const bool zero = zero_row[r] || zero_col[c] || rng.chance(q, 4);
      if (!zero) a(r, c) = rng.nonzero_rational();
    }
  }
  return a;
}

RationalMatrix random_pattern(Rng& rng, std::size_t rows, std::size_t cols, const std::vector<bool>& keep_zero) {
  if (keep_zero.size() != rows * cols) throw DimensionError("pattern size mismatch");
  RationalMatrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!keep_zero[r * cols + c]) a(r, c) = rng.nonzero_rational();
    }
  }
  return a;
}

RationalMatrix random_symmetric(Rng& rng, std::size_t m) {
  RationalMatrix a(m, m);
  if (rng.chance(1, 4)) return a;
  const long q = sparsity(rng);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = r; c < m; ++c) {
      if (rng.chance(q, 4)) continue;
      a(r, c) = rng.nonzero_rational();
      a(c, r) = a(r, c);
    }
  }
  return a;
}

RationalMatrix random_skew(Rng& rng, std::size_t n) {
  RationalMatrix s(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      s(r, c) = rng.rational();
      s(c, r) = -s(r, c);
    }
  }
  return s;
}

std::vector<Rational> random_offset(Rng& rng, std::size_t n) {
  std::vector<Rational> b(n);
  if (rng.chance(1, 2)) return b;
  for (auto& x : b) x = rng.rational();
  return b;
}

RationalMatrix perturb_entry(Rng& rng, const RationalMatrix& a, std::size_t r, std::size_t c) {
  RationalMatrix out = a;
  const Rational forbidden = Rational(-2) * a(r, c);
  Rational delta = rng.nonzero_rational();
  while (delta == forbidden) delta = rng.nonzero_rational();
  out(r, c) += delta;
  return out;
}

MapSpec random_linear_map(Rng& rng, const ModelSpace& domain, const ModelSpace& codomain) {
  const std::size_t m = domain.dim();
  const std::size_t n = codomain.dim();
  const bool spheres = domain.kind() == SpaceKind::SphereStereographic && codomain.kind() == SpaceKind::SphereStereographic;
  if (spheres && m <= n && rng.chance(1, 2)) {
    RationalMatrix a = cayley_orthogonal(random_skew(rng, n), m);
    if (rng.chance(1, 3)) {
      a = perturb_entry(rng, a, static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1)),
                        static_cast<std::size_t>(rng.uniform(0, static_cast<long>(m) - 1)));
    }
    return MapSpec::affine(std::move(a), {});
  }
  std::vector<Rational> b;
  if (codomain.kind() != SpaceKind::SphereStereographic) b = random_offset(rng, n);
  return MapSpec::affine(random_matrix(rng, n, m), std::move(b));
}

MapSpec random_quadratic_map(Rng& rng, const ModelSpace& domain, const ModelSpace& codomain) {
  const std::size_t m = domain.dim();
  const std::size_t n = codomain.dim();
  const bool euclid_pair = domain.kind() == SpaceKind::Euclidean && codomain.kind() == SpaceKind::Euclidean;
  std::vector<RationalMatrix> quad;
  if (rng.chance(1, 5)) {
    quad.assign(n, RationalMatrix(m, m));
    MapSpec lin = random_linear_map(rng, domain, codomain);
    return MapSpec::quadratic(std::move(quad), lin.linear(), lin.offset());
  }
  for (std::size_t k = 0; k < n; ++k) quad.push_back(random_symmetric(rng, m));
  if (!euclid_pair) return MapSpec::quadratic(std::move(quad), RationalMatrix(n, m), {});
  return MapSpec::quadratic(std::move(quad), random_matrix(rng, n, m), random_offset(rng, n));
}

ComplexPolyMap random_holomorphic(Rng& rng, std::size_t m, std::size_t n) {
  const unsigned degree = rng.chance(1, 3) ? 1U : static_cast<unsigned>(rng.uniform(2, 3));
  const auto exps = monomials_up_to(m, degree);
  const long q = rng.uniform(1, 3);
  ComplexPolyMap c{m, {}};
  for (std::size_t k = 0; k < n; ++k) {
    mapspec::ComplexPoly p(m);
    for (const auto& e : exps) {
      if (rng.chance(q, 4)) continue;
      mapspec::ComplexPoly term = mapspec::ComplexPoly::constant(m, random_gaussian(rng));
      for (std::size_t j = 0; j < m; ++j) {
        for (std::uint32_t t = 0; t < e[j]; ++t) term = term * mapspec::ComplexPoly::variable(m, j);
      }
      p += term;
    }
    c.components.push_back(std::move(p));
  }
  return c;
}

Expr random_polynomial(Rng& rng, std::size_t nvars, unsigned degree) {
  Expr out(nvars);
  for (const auto& e : monomials_up_to(nvars, degree)) {
    if (rng.chance(1, 2)) continue;
    Expr term = Expr::constant(nvars, rng.nonzero_rational());
    for (std::size_t j = 0; j < nvars; ++j) term = term * expr::pow(Expr::coordinate(nvars, j), e[j]);
    out += term;
  }
  return out;
}

}  // namespace infharm::classify
