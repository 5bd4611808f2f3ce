#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infharm/expr/quotient.hpp"

namespace infharm::spaces {

using expr::Expr;
using expr::Quotient;

enum class SpaceKind { Euclidean, SemiEuclidean, ConformallyFlat, SphereStereographic, Nil, Sol };

/// Parsed form of a space name such as "euclid:3", "semi-euclid:2:-+",
/// "sphere:2", "nil", "sol", "conformal:2:(1+x^2+y^2)/2" or "complex:1".
struct SpaceLabel {
  SpaceKind kind = SpaceKind::Euclidean;
  std::size_t dim = 1;
  /// Per-axis +1/-1; empty unless kind is SemiEuclidean.
  std::vector<int> signature;
  /// Conformal factor F of the metric F^-2 delta; set for ConformallyFlat and
  /// SphereStereographic.
  std::optional<Quotient> conformal_factor;
  /// Set when the label was given as complex:m (a Euclidean space of dim 2m).
  std::size_t complex_dim = 0;

  static SpaceLabel parse(std::string_view text);
  static SpaceLabel euclidean(std::size_t m);
  static SpaceLabel sphere(std::size_t m);
  static SpaceLabel nil();
  static SpaceLabel sol();

  std::string to_string() const;
  friend bool operator==(const SpaceLabel&, const SpaceLabel&) = default;
};

/// Levi-Civita symbols Gamma^k_ij, indexed (k, i, j).
class ChristoffelTable {
 public:
  explicit ChristoffelTable(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const Quotient& operator()(std::size_t k, std::size_t i, std::size_t j) const { return gamma_[(k * dim_ + i) * dim_ + j]; }
  Quotient& operator()(std::size_t k, std::size_t i, std::size_t j) { return gamma_[(k * dim_ + i) * dim_ + j]; }
  bool is_zero() const;

 private:
  std::size_t dim_;
  std::vector<Quotient> gamma_;
};

/// A coordinate chart with an exact metric, its exact inverse and lazily
/// computed Christoffel symbols. Cheap to copy; copies share the cache.
class ModelSpace {
 public:
  const SpaceLabel& label() const noexcept { return state_->label; }
  std::string name() const { return state_->label.to_string(); }
  std::size_t dim() const noexcept { return state_->label.dim; }
  SpaceKind kind() const noexcept { return state_->label.kind; }

  const Quotient& g_lower(std::size_t i, std::size_t j) const { return state_->lower[i * dim() + j]; }
  const Quotient& g_upper(std::size_t i, std::size_t j) const { return state_->upper[i * dim() + j]; }

  /// Positive definite metric (everything except indefinite semi-Euclidean).
  bool is_riemannian() const;
  /// Every metric and inverse-metric entry is free of denominators.
  bool has_polynomial_metric() const;
  /// Constant metric coefficients, so the Christoffel symbols vanish.
  bool is_flat_chart() const;

  const ChristoffelTable& christoffel() const;

 private:
  friend ModelSpace build_space(const SpaceLabel& label);

  struct State {
    SpaceLabel label;
    std::vector<Quotient> lower;
    std::vector<Quotient> upper;
    mutable std::once_flag christoffel_once;
    mutable std::unique_ptr<ChristoffelTable> christoffel;
  };

  std::shared_ptr<const State> state_;
};

/// Builds the catalog space and verifies g_lower * g_upper = I exactly.
ModelSpace build_space(const SpaceLabel& label);
ModelSpace build_space(std::string_view text);

/// Levi-Civita connection of an arbitrary metric pair given row-major.
ChristoffelTable levi_civita(std::size_t dim, const std::vector<Quotient>& lower, const std::vector<Quotient>& upper);

/// One line per supported label pattern, for `infharm spaces`.
std::vector<std::string> catalog_descriptions();

}  // namespace infharm::spaces
