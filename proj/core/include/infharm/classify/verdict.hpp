#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "infharm/expr/quotient.hpp"
#include "infharm/mapspec/complex_poly.hpp"

namespace infharm::classify {

using expr::Quotient;
using expr::Rational;
using mapspec::Gaussian;

/// The shape a classification theorem assigns to its harmonic maps.
enum class Tag {
  ConstantMap,
  AffineOnly,
  IsometricImmersion,
  ProjectionThenLinear,
  InclusionForm,
  HomothetyOfProjection,
  SplitsRealImag,
  Unconstrained,
};

std::string to_string(Tag tag);

/// A named family of quantities the criterion needs to vanish.
struct Residual {
  std::string name;
  std::vector<Quotient> values;

  bool vanishes() const;
};

/// A theorem's prediction for one map.
///
/// `harmonic` is true exactly when every residual vanishes. For a harmonic map
/// the tag names the form it was recognized in; otherwise it names the form
/// the theorem requires.
struct Verdict {
  bool harmonic = false;
  Tag tag = Tag::Unconstrained;
  /// 1-based axes, rows or coordinate index the tag refers to.
  std::vector<std::size_t> indices;
  /// lambda and z0 of a homothety of a projection.
  std::optional<Gaussian> lambda;
  std::optional<Gaussian> z0;
  std::vector<Residual> residuals;
  /// False when a harmonic holomorphic map is not literally lambda z_i + z0
  /// with real lambda.
  bool literal_form = true;
  std::string note;
};

/// Tag with its arguments, e.g. "ProjectionThenLinear({2,3})".
std::string describe(const Verdict& v);

}  // namespace infharm::classify
