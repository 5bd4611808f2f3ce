#include "infharm/calculus/tension.hpp"

#include <cmath>

#include "infharm/errors.hpp"
#include "infharm/random.hpp"

namespace infharm::calculus {

namespace {

constexpr std::uint64_t kWitnessSeed = 0x9b05688c2b3e6c1fULL;
constexpr std::size_t kWitnessCandidates = 256;

std::vector<Expr> jacobian(const std::vector<Expr>& phi, std::size_t m) {
  std::vector<Expr> out;
  out.reserve(phi.size() * m);
  for (const auto& c : phi) {
    for (std::size_t i = 0; i < m; ++i) out.push_back(expr::partial_derivative(c, i));
  }
  return out;
}

// Value of a quotient at an exact point, or nullopt where a denominator vanishes.
std::optional<double> value_at(const Quotient& q, const std::vector<Rational>& point) {
  for (const auto& f : q.factors()) {
    if (f.power >= 0) continue;
    const auto exact = expr::evaluate_exact(f.base, point);
    if (exact ? exact->is_zero() : expr::evaluate(f.base, point) == 0.0) return std::nullopt;
  }
  std::vector<double> p;
  for (const auto& r : point) p.push_back(r.to_double());
  return expr::evaluate(q, p);
}

bool nonzero_at(const Quotient& q, const std::vector<Rational>& point) {
  if (const auto exact = expr::evaluate_exact(q.core(), point)) {
    if (exact->is_zero()) return false;
    for (const auto& f : q.factors()) {
      if (f.power <= 0) continue;
      const auto base = expr::evaluate_exact(f.base, point);
      if (base ? base->is_zero() : expr::evaluate(f.base, point) == 0.0) return false;
    }
    return true;
  }
  return true;
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "numeric"; }

const std::vector<Expr>& checked_components(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi) {
  if (phi.domain_dim() != domain.dim()) {
    throw DimensionError("map takes " + std::to_string(phi.domain_dim()) + " coordinates but " + domain.name() +
                         " has dimension " + std::to_string(domain.dim()));
  }
  if (phi.codomain_dim() != codomain.dim()) {
    throw DimensionError("map has " + std::to_string(phi.codomain_dim()) + " components but " + codomain.name() +
                         " has dimension " + std::to_string(codomain.dim()));
  }
  return phi.components();
}

std::vector<Quotient> pulled_back_metric(const ModelSpace& codomain, const std::vector<Expr>& phi) {
  const std::size_t n = codomain.dim();
  const std::size_t m = phi.empty() ? 0 : phi.front().nvars();
  std::vector<Quotient> out(n * n, Quotient::constant(m, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const Quotient& h = codomain.g_lower(a, b);
      if (h.is_zero()) continue;
      out[a * n + b] = h.is_constant() ? Quotient::constant(m, h.core().constant_term()) : expr::substitute(h, phi);
      out[b * n + a] = out[a * n + b];
    }
  }
  return out;
}

Quotient energy_density(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi) {
  const auto& comps = checked_components(domain, codomain, phi);
  const std::size_t m = domain.dim();
  const std::size_t n = codomain.dim();
  const auto h = pulled_back_metric(codomain, comps);
  const auto jac = jacobian(comps, m);
  Quotient energy = Quotient::constant(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Quotient& g = domain.g_upper(i, j);
      if (g.is_zero()) continue;
      Quotient inner = Quotient::constant(m, 0);
      for (std::size_t a = 0; a < n; ++a) {
        if (jac[a * m + i].is_zero()) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (h[a * n + b].is_zero() || jac[b * m + j].is_zero()) continue;
          inner += h[a * n + b] * Quotient(jac[a * m + i] * jac[b * m + j]);
        }
      }
      if (!inner.is_zero()) energy += g * inner;
    }
  }
  return energy;
}

std::vector<Quotient> infinity_tension_components(const ModelSpace& domain, const ModelSpace& codomain,
                                                  const MapSpec& phi) {
  const Quotient energy = energy_density(domain, codomain, phi);
  const std::size_t m = domain.dim();
  const auto& comps = phi.components();
  std::vector<Quotient> de;
  for (std::size_t j = 0; j < m; ++j) de.push_back(expr::partial_derivative(energy, j));
  std::vector<Quotient> out;
  for (const auto& c : comps) {
    Quotient sum = Quotient::constant(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const Expr di = expr::partial_derivative(c, i);
      if (di.is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (de[j].is_zero() || domain.g_upper(i, j).is_zero()) continue;
        sum += domain.g_upper(i, j) * Quotient(di) * de[j];
      }
    }
    out.push_back(std::move(sum));
  }
  return out;
}

std::optional<Witness> find_witness(const std::vector<Quotient>& components, double threshold) {
  if (components.empty()) return std::nullopt;
  const std::size_t m = components.front().nvars();
  Rng rng(kWitnessSeed);
  for (std::size_t t = 0; t < kWitnessCandidates; ++t) {
    std::vector<Rational> point;
    for (std::size_t i = 0; i < m; ++i) point.push_back(t == 0 ? Rational(1) : rng.rational());
    for (std::size_t a = 0; a < components.size(); ++a) {
      if (components[a].is_zero() || !nonzero_at(components[a], point)) continue;
      const auto v = value_at(components[a], point);
      if (v && std::isfinite(*v) && std::fabs(*v) > threshold) return Witness{point, a, *v};
    }
  }
  return std::nullopt;
}

TensionReport infinity_tension(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi,
                               Mode requested, const SamplingOptions& options) {
  checked_components(domain, codomain, phi);
  TensionReport report;
  if (requested == Mode::Exact) {
    try {
      report.energy_density = energy_density(domain, codomain, phi);
      report.infinity_tension = infinity_tension_components(domain, codomain, phi);
      report.mode = Mode::Exact;
      report.zero = true;
      for (const auto& c : report.infinity_tension) report.zero = report.zero && c.is_zero();
      if (!report.zero) report.witness = find_witness(report.infinity_tension);
      return report;
    } catch (const UnsupportedExpression& e) {
      report = TensionReport{};
      report.note = std::string("symbolic composition unsupported (") + e.what() + "); sampled numerically";
    }
  } else {
    try {
      report.energy_density = energy_density(domain, codomain, phi);
    } catch (const UnsupportedExpression&) {
    }
  }
  report.mode = Mode::NumericSampled;
  const SampledVerdict sampled = sampled_verdict(domain, codomain, phi, options);
  report.zero = sampled.zero;
  report.witness = sampled.witness;
  return report;
}

std::vector<Quotient> tension_field(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi) {
  return p_tension(domain, codomain, phi, 2);
}

std::vector<Quotient> p_tension(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi, int p) {
  if (p < 2 || p % 2 != 0) throw UnsupportedExpression("exact p-tension needs an even p >= 2; got " + std::to_string(p));
  const auto& comps = checked_components(domain, codomain, phi);
  const std::size_t m = domain.dim();
  const std::size_t n = codomain.dim();
  const auto jac = jacobian(comps, m);

  const Quotient weight = p == 2 ? Quotient::constant(m, 1) : expr::pow(energy_density(domain, codomain, phi), (p - 2) / 2);
  // sigma^c_j = |d phi|^(p-2) phi^c_j
  std::vector<Quotient> sigma;
  for (const auto& d : jac) sigma.push_back(weight * Quotient(d));

  // Codomain connection along phi.
  std::vector<Quotient> gamma_phi(n * n * n, Quotient::constant(m, 0));
  if (!codomain.is_flat_chart()) {
    const auto& gamma = codomain.christoffel();
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (!gamma(c, a, b).is_zero()) gamma_phi[(c * n + a) * n + b] = expr::substitute(gamma(c, a, b), comps);
        }
      }
    }
  }

  std::vector<Quotient> out;
  for (std::size_t c = 0; c < n; ++c) {
    Quotient sum = Quotient::constant(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const Quotient& g = domain.g_upper(i, j);
        if (g.is_zero()) continue;
        Quotient term = expr::partial_derivative(sigma[c * m + j], i);
        if (!domain.is_flat_chart()) {
          const auto& gamma = domain.christoffel();
          for (std::size_t l = 0; l < m; ++l) {
            if (!gamma(l, i, j).is_zero()) term -= gamma(l, i, j) * sigma[c * m + l];
          }
        }
        for (std::size_t a = 0; a < n; ++a) {
          if (jac[a * m + i].is_zero()) continue;
          for (std::size_t b = 0; b < n; ++b) {
            const Quotient& gp = gamma_phi[(c * n + a) * n + b];
            if (!gp.is_zero()) term += gp * Quotient(jac[a * m + i]) * sigma[b * m + j];
          }
        }
        if (!term.is_zero()) sum += g * term;
      }
    }
    out.push_back(std::move(sum));
  }
  return out;
}

NumericTension::NumericTension(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi)
    : m_(domain.dim()), n_(codomain.dim()), phi_(checked_components(domain, codomain, phi)) {
  jacobian_ = jacobian(phi_, m_);
  for (const auto& d : jacobian_) {
    for (std::size_t k = 0; k < m_; ++k) hessian_.push_back(expr::partial_derivative(d, k));
  }
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) g_upper_.push_back(domain.g_upper(i, j));
  }
  for (std::size_t k = 0; k < m_; ++k) {
    for (std::size_t idx = 0; idx < m_ * m_; ++idx) dg_upper_.push_back(expr::partial_derivative(g_upper_[idx], k));
  }
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) h_lower_.push_back(codomain.g_lower(a, b));
  }
  for (std::size_t c = 0; c < n_; ++c) {
    for (std::size_t idx = 0; idx < n_ * n_; ++idx) dh_lower_.push_back(expr::partial_derivative(h_lower_[idx], c));
  }
}

std::optional<PointSample> NumericTension::at(std::span<const double> point) const {
  const std::size_t m = m_;
  const std::size_t n = n_;
  std::vector<double> y(n);
  for (std::size_t a = 0; a < n; ++a) y[a] = expr::evaluate(phi_[a], point);
  auto eval_all = [](const auto& exprs, std::span<const double> at) {
    std::vector<double> v;
    v.reserve(exprs.size());
    for (const auto& e : exprs) v.push_back(expr::evaluate(e, at));
    return v;
  };
  const auto J = eval_all(jacobian_, point);
  const auto H = eval_all(hessian_, point);
  const auto G = eval_all(g_upper_, point);
  const auto dG = eval_all(dg_upper_, point);
  const auto h = eval_all(h_lower_, y);
  const auto dh = eval_all(dh_lower_, y);
  for (const auto* vec : {&J, &H, &G, &dG, &h, &dh}) {
    for (double v : *vec) {
      if (!std::isfinite(v)) return std::nullopt;
    }
  }

  // pull[i*m+j] = h_ab J^a_i J^b_j
  std::vector<double> pull(m * m, 0.0);
  std::vector<double> pull_abs(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          const double t = h[a * n + b] * J[a * m + i] * J[b * m + j];
          pull[i * m + j] += t;
          pull_abs[i * m + j] += std::fabs(t);
        }
      }
    }
  }

  PointSample out;
  for (std::size_t idx = 0; idx < m * m; ++idx) out.energy += G[idx] * pull[idx];

  std::vector<double> de(m, 0.0);
  std::vector<double> de_abs(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double gij = G[i * m + j];
        const double dgk = dG[(k * m + i) * m + j];
        de[k] += dgk * pull[i * m + j];
        de_abs[k] += std::fabs(dgk) * pull_abs[i * m + j];
        if (gij == 0.0) continue;
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            double dh_k = 0.0;
            for (std::size_t c = 0; c < n; ++c) dh_k += dh[(c * n + a) * n + b] * J[c * m + k];
            const double t2 = gij * dh_k * J[a * m + i] * J[b * m + j];
            const double t3 = 2.0 * gij * h[a * n + b] * H[(a * m + i) * m + k] * J[b * m + j];
            de[k] += t2 + t3;
            de_abs[k] += std::fabs(t2) + std::fabs(t3);
          }
        }
      }
    }
  }

  out.tension.assign(n, 0.0);
  out.scale.assign(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double w = G[i * m + j] * J[a * m + i];
        out.tension[a] += w * de[j];
        out.scale[a] += std::fabs(w) * de_abs[j];
      }
    }
  }
  return out;
}

std::vector<std::vector<Rational>> sample_points(std::size_t m, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<Rational>> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<Rational> p;
    for (std::size_t i = 0; i < m; ++i) p.push_back(rng.unit_rational(64));
    out.push_back(std::move(p));
  }
  return out;
}

SampledVerdict sampled_verdict(const ModelSpace& domain, const ModelSpace& codomain, const MapSpec& phi,
                               const SamplingOptions& options) {
  const NumericTension numeric(domain, codomain, phi);
  SampledVerdict verdict;
  // Oversample so that points on a singular set can be skipped.
  const auto points = sample_points(domain.dim(), options.samples * 4, options.seed);
  for (const auto& p : points) {
    if (verdict.points_used == options.samples) break;
    std::vector<double> x;
    for (const auto& r : p) x.push_back(r.to_double());
    const auto s = numeric.at(x);
    if (!s) continue;
    ++verdict.points_used;
    for (std::size_t a = 0; a < s->tension.size(); ++a) {
      const double normalized = std::fabs(s->tension[a]) / (1.0 + s->scale[a]);
      verdict.worst_normalized = std::max(verdict.worst_normalized, normalized);
      if (normalized > options.tolerance && verdict.zero) {
        verdict.zero = false;
        verdict.witness = Witness{p, a, s->tension[a]};
      }
    }
  }
  if (verdict.points_used < options.samples) {
    throw UnsupportedExpression("numeric sampling found too few regular points");
  }
  return verdict;
}

}  // namespace infharm::calculus
