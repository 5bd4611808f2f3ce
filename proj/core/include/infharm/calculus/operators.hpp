#pragma once

#include <span>
#include <vector>

#include "infharm/expr/quotient.hpp"
#include "infharm/spaces/model_space.hpp"

namespace infharm::calculus {

using expr::Expr;
using expr::Quotient;
using spaces::ModelSpace;

/// Components (grad f)^i = g^ij d_j f.
std::vector<Quotient> metric_gradient(const ModelSpace& space, const Quotient& f);
std::vector<Quotient> metric_gradient(const ModelSpace& space, const Expr& f);

/// |grad u|^2 = g^ij u_i u_j.
Quotient gradient_norm_squared(const ModelSpace& space, const Quotient& u);

/// Laplace-Beltrami operator g^ij (u_ij - Gamma^k_ij u_k).
Quotient laplace_beltrami(const ModelSpace& space, const Quotient& u);

/// (1/2) g(grad u, grad |grad u|^2).
Quotient infinity_laplacian(const ModelSpace& space, const Quotient& u);

/// Hess_u(grad u, grad u) with Hess_ij = u_ij - Gamma^k_ij u_k.
Quotient hessian_form(const ModelSpace& space, const Quotient& u);

/// u_ij u^i u^j + (1/2) u^i u_a u_b d_i g^ab, which is sum u_ij u_i u_j on
/// Euclidean space.
Quotient coordinate_form(const ModelSpace& space, const Quotient& u);

/// |grad u|^(p-4) (|grad u|^2 Lap u + (p-2) Lap_inf u) for even p >= 4, and
/// Lap u for p = 2. Other p throw UnsupportedExpression.
Quotient p_laplacian(const ModelSpace& space, const Quotient& u, int p);

/// The same operator at a point in double precision, for any real p >= 2.
double p_laplacian_at(const ModelSpace& space, const Quotient& u, double p, std::span<const double> point);

}  // namespace infharm::calculus
