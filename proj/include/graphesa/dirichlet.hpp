#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "graphesa/graph.hpp"
#include "graphesa/operators.hpp"

namespace graphesa {

/// (Delta + 1) F = 0 off the frontier, F = boundary_values on it.
struct DirichletProblem {
  WeightedGraph graph;
  std::vector<Vertex> frontier;
  std::vector<double> boundary_values;
};

struct DirichletSolution {
  VertexFunction F;
  /// max over interior x of |(Delta + 1) F(x)|.
  double interior_residual = 0.0;
  /// Same residual with each row divided by (sum_y c_xy / omega_x^2 + 1) max|F|.
  double scaled_residual = 0.0;
  double energy = 0.0;
  double l2_omega_norm = 0.0;
  std::string solver;
};

/// Interior block of omega^2 (Delta + 1): sum_y c_xy (F(x) - F(y)) + omega_x^2 F(x).
/// `interior` lists the unknowns in matrix order; `rhs` collects frontier couplings.
struct InteriorSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  std::vector<Vertex> interior;
};

InteriorSystem interior_system(const DirichletProblem& p);

DirichletSolution solve_dirichlet(const DirichletProblem& p);

bool maximum_principle_check(const DirichletProblem& p, const DirichletSolution& sol);

struct WitnessRow {
  Index horizon = 0;
  double F0 = 0.0;
  double energy = 0.0;
  double norm = 0.0;
  double residual = 0.0;
  double scaled_residual = 0.0;
  bool maximum_principle = true;
};

struct WitnessReport {
  std::vector<WitnessRow> rows;
  /// |F0(h_last) - F0(h_prev)| / |F0(h_last)|.
  double relative_change = 0.0;
  bool stable = false;
  bool nonzero = false;
  /// Set when another end is complete, so the limit need not be unique.
  bool non_unique = false;
  std::string label;
};

/// Frontier value `boundary` on every non-complete, finite-volume end and 0
/// on the other ends, solved at each horizon. Throws PreconditionsNotMet
/// naming the failing hypothesis when no end qualifies.
WitnessReport non_esa_witness(const Family& family, std::span<const Index> horizons, double boundary = 1.0,
                              double stability_tol = 1e-4);

/// Dirichlet problem with the witness frontier data at one horizon.
DirichletProblem witness_problem(const Family& family, Index horizon, double boundary = 1.0);

}  // namespace graphesa
