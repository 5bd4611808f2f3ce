#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "infharm/expr/expr.hpp"
#include "infharm/expr/matrix.hpp"
#include "infharm/mapspec/complex_poly.hpp"

namespace infharm::mapspec {

using expr::RationalMatrix;

enum class MapKind { Affine, Quadratic, Custom, Holomorphic };

std::string to_string(MapKind kind);

/// A map R^m -> R^n from one of the supported families, with exact data.
///
/// Affine:      phi^a = A^a X + b_a
/// Quadratic:   phi^a = X^t A_a X + A^a X + b_a, every A_a symmetric
/// Custom:      n arbitrary component expressions in m coordinates
/// Holomorphic: the realification (u_1..u_n, v_1..v_n) of a polynomial map
///              C^m -> C^n under z_j = x_j - i y_j, w_a = u_a - i v_a
class MapSpec {
 public:
  static MapSpec affine(RationalMatrix a, std::vector<Rational> b);
  static MapSpec quadratic(std::vector<RationalMatrix> quad, RationalMatrix a, std::vector<Rational> b);
  static MapSpec custom(std::size_t m, std::vector<Expr> components);
  static MapSpec holomorphic(ComplexPolyMap source);

  MapKind kind() const noexcept { return kind_; }
  std::size_t domain_dim() const noexcept { return m_; }
  std::size_t codomain_dim() const noexcept { return n_; }

  /// Linear part (Affine, Quadratic); n x m.
  const RationalMatrix& linear() const noexcept { return a_; }
  const std::vector<Rational>& offset() const noexcept { return b_; }
  /// Quadratic forms A_a (Quadratic only).
  const std::vector<RationalMatrix>& quad() const noexcept { return quad_; }
  /// Complex source data (Holomorphic only).
  const std::optional<ComplexPolyMap>& complex_source() const noexcept { return source_; }

  /// The n component expressions in m coordinates.
  const std::vector<Expr>& components() const noexcept { return components_; }

  /// Appends zero components up to `n` (Affine/Quadratic gain zero rows).
  MapSpec padded(std::size_t n) const;

  friend bool operator==(const MapSpec& a, const MapSpec& b);

 private:
  void materialize();

  MapKind kind_ = MapKind::Custom;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  RationalMatrix a_;
  std::vector<Rational> b_;
  std::vector<RationalMatrix> quad_;
  std::optional<ComplexPolyMap> source_;
  std::vector<Expr> components_;
};

/// Realifies a polynomial holomorphic map; same as MapSpec::holomorphic.
MapSpec realify(const ComplexPolyMap& c);

/// Reads a map document. `domain_dim` supplies m for custom maps that omit
/// "m" (and cross-checks it otherwise). Errors carry the offending field path.
MapSpec parse_mapspec(const nlohmann::json& doc, std::optional<std::size_t> domain_dim = std::nullopt);
MapSpec parse_mapspec_text(const std::string& text, std::optional<std::size_t> domain_dim = std::nullopt);
nlohmann::json serialize(const MapSpec& spec);

/// FNV-1a 64-bit digest of the serialized document, as 16 hex digits.
std::string digest(const MapSpec& spec);

}  // namespace infharm::mapspec
