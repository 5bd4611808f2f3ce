#pragma once

#include <optional>
#include <vector>

#include "infharm/calculus/tension.hpp"
#include "infharm/classify/verdict.hpp"
#include "infharm/expr/matrix.hpp"
#include "infharm/mapspec/map_spec.hpp"
#include "infharm/spaces/model_space.hpp"

namespace infharm::classify {

using expr::RationalMatrix;
using mapspec::ComplexPolyMap;
using mapspec::MapSpec;
using spaces::ModelSpace;
using spaces::SpaceLabel;

struct LemmaCheck {
  bool holds = false;
  /// S A_i + A_i S with S = sum_j A_j^2, one per input matrix.
  std::vector<RationalMatrix> anticommutators;
};

/// Evaluates (sum_j A_j^2) A_i + A_i (sum_j A_j^2) = 0 for every i.
/// Throws ValidationError on asymmetric or mismatched input.
LemmaCheck matrix_lemma_condition(const std::vector<RationalMatrix>& quad);

/// Linear classification for phi(X) = AX + b. Supported pairs: Euclidean to
/// Euclidean, Nil or Sol to Euclidean, Euclidean to Nil or Sol, sphere to
/// sphere, Euclidean and sphere in either direction, and any pair of
/// conformally flat charts. Throws UnsupportedPair otherwise.
Verdict predict_linear(const SpaceLabel& domain, const SpaceLabel& codomain, const RationalMatrix& a,
                       const std::vector<Rational>& b);

/// The general criterion for linear maps between conformally flat charts
/// (Euclidean, sphere or conformal:m:F): A = 0 or <A^a, grad(F / lambda o phi)> = 0
/// for every row A^a, with the Euclidean gradient.
Verdict predict_conformal_linear(const SpaceLabel& domain, const SpaceLabel& codomain, const RationalMatrix& a,
                                 const std::vector<Rational>& b);

/// Quadratic classification for phi(X) = (X^t A_i X) + AX + b.
///
/// Vanishing quadratic part defers to predict_linear. Otherwise the pair must
/// be Euclidean to Euclidean, or Euclidean to a sphere, Nil or Sol (or sphere
/// to Euclidean) with no affine part.
Verdict predict_quadratic(const SpaceLabel& domain, const SpaceLabel& codomain, const MapSpec& phi);

/// C^m -> C: harmonic iff affine. Flags maps outside the literal
/// lambda z_i + z0 form with real lambda. Other n defer to the split check.
Verdict predict_holomorphic(const ComplexPolyMap& c);

/// Harmonic iff both the real and the imaginary part are, each computed
/// directly on Euclidean space.
Verdict predict_holomorphic_split(const ComplexPolyMap& c);

/// Dispatches on the map family; custom maps with polynomial components of
/// degree <= 2 count as affine or quadratic. std::nullopt when no predictor
/// covers it.
std::optional<Verdict> predict(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi);

struct CrossValidation {
  std::optional<Verdict> predicted;
  calculus::TensionReport direct;
  /// Always true when there is no prediction.
  bool agree = true;
};

CrossValidation cross_validate(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi);

/// First m columns of (I - S)(I + S)^-1 for skew-symmetric n x n S; A^t A = I.
RationalMatrix cayley_orthogonal(const RationalMatrix& skew, std::size_t m);

}  // namespace infharm::classify
