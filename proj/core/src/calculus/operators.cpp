#include "infharm/calculus/operators.hpp"

#include <cmath>

#include "infharm/errors.hpp"

namespace infharm::calculus {

namespace {

std::vector<Quotient> partials(const Quotient& u) {
  std::vector<Quotient> out;
  for (std::size_t i = 0; i < u.nvars(); ++i) out.push_back(expr::partial_derivative(u, i));
  return out;
}

void check_space(const ModelSpace& space, const Quotient& u) {
  if (u.nvars() != space.dim()) {
    throw DimensionError("scalar field has " + std::to_string(u.nvars()) + " coordinates, space " + space.name() +
                         " has " + std::to_string(space.dim()));
  }
}

// Sum of g^ij a_i b_j.
Quotient contract(const ModelSpace& space, const std::vector<Quotient>& a, const std::vector<Quotient>& b) {
  const std::size_t m = space.dim();
  Quotient sum = Quotient::constant(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (b[j].is_zero() || space.g_upper(i, j).is_zero()) continue;
      sum += space.g_upper(i, j) * a[i] * b[j];
    }
  }
  return sum;
}

// Hess_ij = u_ij - Gamma^k_ij u_k.
Quotient hessian_entry(const ModelSpace& space, const std::vector<Quotient>& du, std::size_t i, std::size_t j) {
  Quotient h = expr::partial_derivative(du[i], j);
  if (!space.is_flat_chart()) {
    const auto& gamma = space.christoffel();
    for (std::size_t k = 0; k < space.dim(); ++k) {
      if (!gamma(k, i, j).is_zero() && !du[k].is_zero()) h -= gamma(k, i, j) * du[k];
    }
  }
  return h;
}

}  // namespace

std::vector<Quotient> metric_gradient(const ModelSpace& space, const Quotient& f) {
  check_space(space, f);
  const auto df = partials(f);
  const std::size_t m = space.dim();
  std::vector<Quotient> out;
  for (std::size_t i = 0; i < m; ++i) {
    Quotient sum = Quotient::constant(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
      if (!df[j].is_zero() && !space.g_upper(i, j).is_zero()) sum += space.g_upper(i, j) * df[j];
    }
    out.push_back(std::move(sum));
  }
  return out;
}

std::vector<Quotient> metric_gradient(const ModelSpace& space, const Expr& f) { return metric_gradient(space, Quotient(f)); }

Quotient gradient_norm_squared(const ModelSpace& space, const Quotient& u) {
  check_space(space, u);
  const auto du = partials(u);
  return contract(space, du, du);
}

Quotient laplace_beltrami(const ModelSpace& space, const Quotient& u) {
  check_space(space, u);
  const auto du = partials(u);
  const std::size_t m = space.dim();
  Quotient sum = Quotient::constant(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!space.g_upper(i, j).is_zero()) sum += space.g_upper(i, j) * hessian_entry(space, du, i, j);
    }
  }
  return sum;
}

Quotient infinity_laplacian(const ModelSpace& space, const Quotient& u) {
  check_space(space, u);
  const auto du = partials(u);
  const auto dnorm = partials(contract(space, du, du));
  return contract(space, du, dnorm) * expr::Rational(1, 2);
}

Quotient hessian_form(const ModelSpace& space, const Quotient& u) {
  check_space(space, u);
  const auto du = partials(u);
  const auto grad = metric_gradient(space, u);
  const std::size_t m = space.dim();
  Quotient sum = Quotient::constant(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (grad[i].is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (grad[j].is_zero()) continue;
      sum += hessian_entry(space, du, i, j) * grad[i] * grad[j];
    }
  }
  return sum;
}

Quotient coordinate_form(const ModelSpace& space, const Quotient& u) {
  check_space(space, u);
  const auto du = partials(u);
  const auto grad = metric_gradient(space, u);
  const std::size_t m = space.dim();
  Quotient sum = Quotient::constant(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (grad[i].is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (!grad[j].is_zero()) sum += expr::partial_derivative(du[i], j) * grad[i] * grad[j];
    }
  }
  if (!space.is_flat_chart()) {
    for (std::size_t i = 0; i < m; ++i) {
      if (grad[i].is_zero()) continue;
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          const Quotient dg = expr::partial_derivative(space.g_upper(a, b), i);
          if (!dg.is_zero()) sum += dg * grad[i] * du[a] * du[b] * expr::Rational(1, 2);
        }
      }
    }
  }
  return sum;
}

Quotient p_laplacian(const ModelSpace& space, const Quotient& u, int p) {
  if (p == 2) return laplace_beltrami(space, u);
  if (p < 4 || p % 2 != 0) {
    throw UnsupportedExpression("exact p-Laplacian needs an even p >= 2; got p = " + std::to_string(p));
  }
  const Quotient norm = gradient_norm_squared(space, u);
  const Quotient inner = norm * laplace_beltrami(space, u) + infinity_laplacian(space, u) * expr::Rational(p - 2);
  return expr::pow(norm, (p - 4) / 2) * inner;
}

double p_laplacian_at(const ModelSpace& space, const Quotient& u, double p, std::span<const double> point) {
  if (!(p >= 2.0)) throw ValidationError("p-Laplacian needs p >= 2");
  const double norm = expr::evaluate(gradient_norm_squared(space, u), point);
  const double lap = expr::evaluate(laplace_beltrami(space, u), point);
  if (p == 2.0) return lap;
  const double inf = expr::evaluate(infinity_laplacian(space, u), point);
  // Lap_inf u is bounded by |D^2 u| |grad u|^2, so both terms vanish with the gradient.
  if (norm == 0.0) return 0.0;
  return std::pow(norm, (p - 2.0) / 2.0) * lap + (p - 2.0) * std::pow(norm, (p - 4.0) / 2.0) * inf;
}

}  // namespace infharm::calculus
