#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infharm/expr/quotient.hpp"
#include "infharm/mapspec/map_spec.hpp"
#include "infharm/spaces/model_space.hpp"

namespace infharm::calculus {

using expr::Expr;
using expr::Quotient;
using expr::Rational;
using mapspec::MapSpec;
using spaces::ModelSpace;

enum class Mode { Exact, NumericSampled };

std::string to_string(Mode mode);

struct SamplingOptions {
  std::size_t samples = 64;
  /// Bound on |component| / (1 + magnitude of its summands).
  double tolerance = 1e-9;
  std::uint64_t seed = 0x2545f4914f6cdd1dULL;
};

/// A point where some tension component is nonzero.
struct Witness {
  std::vector<Rational> point;
  std::size_t component = 0;
  double value = 0.0;
};

struct TensionReport {
  /// |d phi|^2; absent only when the symbolic composition is unsupported.
  std::optional<Quotient> energy_density;
  /// g(grad phi^a, grad |d phi|^2) per codomain component (Exact mode only).
  std::vector<Quotient> infinity_tension;
  bool zero = false;
  std::optional<Witness> witness;
  Mode mode = Mode::Exact;
  /// Why the report fell back to sampling, if it did.
  std::string note;
};

/// Map components after checking them against the two spaces.
const std::vector<Expr>& checked_components(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi);

/// h_ab composed with phi.
std::vector<Quotient> pulled_back_metric(const ModelSpace& codomain, const std::vector<Expr>& phi);

/// |d phi|^2 = g^ij (h_ab o phi) phi^a_i phi^b_j.
Quotient energy_density(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi);

/// g(grad phi^a, grad |d phi|^2) for each a, without the factor 1/2.
std::vector<Quotient> infinity_tension_components(const ModelSpace& domain, const ModelSpace& codomain,
                                                  const MapSpec& phi);

/// Exact verdict when the composition stays in the decidable class; otherwise
/// (or on request) a sampled verdict from the numeric route.
TensionReport infinity_tension(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi,
                               Mode requested = Mode::Exact, const SamplingOptions& options = {});

/// tau_2^c = g^ij (phi^c_ij - Gamma^k_ij phi^c_k + (Gamma^c_ab o phi) phi^a_i phi^b_j).
std::vector<Quotient> tension_field(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi);

/// Covariant divergence of |d phi|^(p-2) d phi for even p >= 2.
std::vector<Quotient> p_tension(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi, int p);

/// Searches rational points for a nonzero component. Tries the all-ones point first.
std::optional<Witness> find_witness(const std::vector<Quotient>& components, double threshold = 1e-9);

/// Evaluates the infinity tension at one point by the chain rule, using only
/// derivatives of phi and of the two metrics; no symbolic composition.
struct PointSample {
  double energy = 0.0;
  std::vector<double> tension;
  /// Sum of magnitudes of the terms contributing to each component.
  std::vector<double> scale;
};

class NumericTension {
 public:
  NumericTension(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi);
  /// std::nullopt where a metric coefficient is not finite.
  std::optional<PointSample> at(std::span<const double> point) const;
  std::size_t domain_dim() const noexcept { return m_; }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Expr> phi_;
  std::vector<Expr> jacobian_;   // [a * m + i]
  std::vector<Expr> hessian_;    // [(a * m + i) * m + k]
  std::vector<Quotient> g_upper_;
  std::vector<Quotient> dg_upper_;  // [(k * m + i) * m + j]
  std::vector<Quotient> h_lower_;
  std::vector<Quotient> dh_lower_;  // [(c * n + a) * n + b]
};

/// Rational sample points in [-1, 1]^m with denominators <= 64.
std::vector<std::vector<Rational>> sample_points(std::size_t m, std::size_t count, std::uint64_t seed);

struct SampledVerdict {
  bool zero = true;
  std::size_t points_used = 0;
  double worst_normalized = 0.0;
  std::optional<Witness> witness;
};

SampledVerdict sampled_verdict(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi,
                               const SamplingOptions& options = {});

}  // namespace infharm::calculus
