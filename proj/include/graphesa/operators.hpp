#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "graphesa/graph.hpp"

namespace graphesa {

using VertexFunction = std::vector<double>;

/// (Delta_{omega,c} f)(x) = omega_x^{-2} sum_{y~x} c_xy (f(x) - f(y)).
/// On a truncation the sum runs over the edges present.
VertexFunction apply_laplacian(const WeightedGraph& g, std::span<const double> f);

/// (Delta_{omega,c} + W) f with an explicit potential (empty span: W = 0).
VertexFunction apply_schrodinger(const WeightedGraph& g, std::span<const double> potential,
                                 std::span<const double> f);
/// Same, using the graph's own potential.
VertexFunction apply_schrodinger(const WeightedGraph& g, std::span<const double> f);

/// Q(f) = sum_edges c (f(x) - f(y))^2 + sum_x omega_x^2 f(x)^2, the form of
/// Delta + Id on l^2_omega.
double quadratic_form(const WeightedGraph& g, std::span<const double> f);

double inner_product_omega(const WeightedGraph& g, std::span<const double> f, std::span<const double> h);
double norm_omega(const WeightedGraph& g, std::span<const double> f);

/// Delta_{1,a} + W unitarily equivalent to Delta_{omega,c} through
/// U f = omega f, with a = c / (omega_x omega_y) and W = -(1/omega) Delta_{1,a} omega.
struct GaugedOperator {
  /// omega == 1, conductances a, potential = gauge potential plus the source
  /// graph's own potential (if any).
  WeightedGraph graph;
  /// -(1/omega) Delta_{1,a} omega alone.
  std::vector<double> gauge_potential;

  VertexFunction apply(std::span<const double> f) const;
};

GaugedOperator gauge_transform(const WeightedGraph& g);

/// Gauged form of a raw end (returned unchanged if already gauged):
/// a_{n-1,n} = c_{n-1,n} / (omega_{n-1} omega_n),
/// W_n = -(1/omega_n) [a_{n,n+1}(omega_n - omega_{n+1}) + a_{n-1,n}(omega_n - omega_{n-1})] + W_raw(n).
EndFamily gauge_transform(const EndFamily& end);

/// Potential of the gauged end from the expanded bracket
/// (1/omega_n)[c_{n,n+1}(1/omega_n - 1/omega_{n+1}) + c_{n-1,n}(1/omega_n - 1/omega_{n-1})].
double gauge_potential_bracket(const EndFamily& raw, Index n);

/// omega * Delta_{omega,c}(f / omega).
VertexFunction conjugated_laplacian(const WeightedGraph& g, std::span<const double> f);

struct GroundStateCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  /// Sum of absolute values of all terms on both sides.
  double scale = 0.0;
};

/// Both sides of <f v, H (f v)>_{l^2_omega} = sum_edges c v(x) v(y) (f(x) - f(y))^2
/// for H = Delta_{omega,c} + W. Throws NotAKernelElement when H v does not
/// vanish (to `tol` relative) on the support of f.
GroundStateCheck ground_state_identity(const WeightedGraph& g, std::span<const double> potential,
                                       std::span<const double> v, std::span<const double> f, double tol = 1e-9);
double ground_state_identity_residual(const WeightedGraph& g, std::span<const double> potential,
                                      std::span<const double> v, std::span<const double> f);

/// v with v = `values` off `support` and (Delta + W) v = 0 on `support`.
/// Throws SolveFailure when the restricted system is singular.
VertexFunction kernel_extension(const WeightedGraph& g, std::span<const double> potential,
                                std::span<const Vertex> support, std::span<const double> values);

/// Dense matrix of Delta_{omega,c} + W (graph potential).
Eigen::MatrixXd dense_operator(const WeightedGraph& g);

}  // namespace graphesa
