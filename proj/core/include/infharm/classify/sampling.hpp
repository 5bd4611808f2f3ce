#pragma once

#include <cstddef>
#include <vector>

#include "infharm/expr/expr.hpp"
#include "infharm/expr/matrix.hpp"
#include "infharm/mapspec/complex_poly.hpp"
#include "infharm/mapspec/map_spec.hpp"
#include "infharm/random.hpp"
#include "infharm/spaces/model_space.hpp"

// Coefficient draws for the falsification campaigns. Every entry is p/q with
// |p| <= 8 and 1 <= q <= 8; sparsity patterns (zero rows, zero columns, zero
// entries) are drawn first so that the positive shapes of each theorem occur
// with useful frequency.
namespace infharm::classify {

using expr::Expr;
using expr::Rational;
using expr::RationalMatrix;
using mapspec::ComplexPolyMap;
using mapspec::MapSpec;
using spaces::ModelSpace;

RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);
/// Nonzero entries everywhere except where `keep_zero` is set.
RationalMatrix random_pattern(Rng& rng, std::size_t rows, std::size_t cols, const std::vector<bool>& keep_zero);
RationalMatrix random_symmetric(Rng& rng, std::size_t m);
RationalMatrix random_skew(Rng& rng, std::size_t n);
std::vector<Rational> random_offset(Rng& rng, std::size_t n);

/// Adds a nonzero delta to entry (r, c), avoiding delta = -2 a_rc (which keeps
/// an orthogonal column at unit length).
RationalMatrix perturb_entry(Rng& rng, const RationalMatrix& a, std::size_t r, std::size_t c);

/// A linear map between the two spaces; offset only where the target allows
/// it, Cayley-orthogonal maps mixed in between spheres.
MapSpec random_linear_map(Rng& rng, const ModelSpace& domain, const ModelSpace& codomain);
/// Quadratic forms plus, between Euclidean spaces, an affine part.
MapSpec random_quadratic_map(Rng& rng, const ModelSpace& domain, const ModelSpace& codomain);
/// Polynomial holomorphic map C^m -> C^n of degree <= 3.
ComplexPolyMap random_holomorphic(Rng& rng, std::size_t m, std::size_t n);
/// Polynomial of total degree <= degree with sparse rational coefficients.
Expr random_polynomial(Rng& rng, std::size_t nvars, unsigned degree);

}  // namespace infharm::classify
