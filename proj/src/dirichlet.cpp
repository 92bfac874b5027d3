#include "graphesa/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "graphesa/error.hpp"
#include "graphesa/metric.hpp"

namespace graphesa {

namespace {

constexpr Eigen::Index kDirectLimit = 2000;
constexpr double kIterativeTol = 1e-10;

bool qualifies(const EndFamily& end) {
  return end_completeness(end, MetricScheme::InvSqrtC).status == Completeness::NonComplete &&
         end_volume(end).status == SeriesStatus::Converges;
}

struct FrontierData {
  std::vector<Vertex> frontier;
  std::vector<double> values;
  bool any_qualifying = false;
  bool non_unique = false;
  std::string failure;
};

FrontierData frontier_for(const EndFamily& end, Index horizon, double boundary) {
  FrontierData d;
  if (end_completeness(end, MetricScheme::InvSqrtC).status != Completeness::NonComplete) {
    d.failure = "end is not shown non-complete for the c^{-1/2} metric";
  } else if (end_volume(end).status != SeriesStatus::Converges) {
    d.failure = "sum of omega^2 over the end is not shown to converge";
  } else {
    d.any_qualifying = true;
  }
  d.frontier = {static_cast<Vertex>(horizon)};
  d.values = {d.any_qualifying ? boundary : 0.0};
  return d;
}

FrontierData frontier_for(const TreeSpec& tree, Index depth, double boundary) {
  FrontierData d;
  if (end_completeness(tree_ray(tree, depth), MetricScheme::InvSqrtC).status != Completeness::NonComplete) {
    d.failure = "tree rays are not shown non-complete for the c^{-1/2} metric";
  } else if (tree_volume(tree).status != SeriesStatus::Converges) {
    d.failure = "sum of N^n omega_n^2 over the tree is not shown to converge";
  } else {
    d.any_qualifying = true;
  }
  const auto N = static_cast<Vertex>(tree.branching);
  Vertex total = 1;
  Vertex level = 1;
  for (Index n = 1; n <= depth; ++n) {
    level *= N;
    total += level;
  }
  for (Vertex x = total - level; x < total; ++x) {
    d.frontier.push_back(x);
    d.values.push_back(d.any_qualifying ? boundary : 0.0);
  }
  return d;
}

FrontierData frontier_for(const StarLikeSpec& spec, Index horizon, double boundary) {
  FrontierData d;
  for (std::size_t alpha = 0; alpha < spec.ends.size(); ++alpha) {
    const auto& end = spec.ends[alpha].end;
    const bool ok = qualifies(end);
    d.any_qualifying = d.any_qualifying || ok;
    if (end_completeness(end, MetricScheme::InvSqrtC).status == Completeness::Complete) d.non_unique = true;
    d.frontier.push_back(end_offset(spec, alpha, horizon) + static_cast<Vertex>(horizon));
    d.values.push_back(ok ? boundary : 0.0);
  }
  if (!d.any_qualifying) d.failure = "no end is both non-complete and of finite volume";
  return d;
}

FrontierData frontier_for(const Family& family, Index horizon, double boundary) {
  return std::visit([&](const auto& f) { return frontier_for(f, horizon, boundary); }, family);
}

}  // namespace

InteriorSystem interior_system(const DirichletProblem& p) {
  const auto& g = p.graph;
  if (p.frontier.empty()) throw Error(ErrorKind::BadParams, "frontier is empty");
  if (p.frontier.size() != p.boundary_values.size()) {
    throw Error(ErrorKind::DomainMismatch, "one boundary value is needed per frontier vertex");
  }
  std::vector<double> fixed(g.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < p.frontier.size(); ++i) {
    g.check_vertex(p.frontier[i]);
    if (!std::isfinite(p.boundary_values[i])) throw Error(ErrorKind::BadParams, "boundary value is not finite");
    fixed[p.frontier[i]] = p.boundary_values[i];
  }
  InteriorSystem sys;
  std::vector<Eigen::Index> slot(g.size(), -1);
  for (Vertex x = 0; x < g.size(); ++x) {
    if (std::isnan(fixed[x])) {
      slot[x] = static_cast<Eigen::Index>(sys.interior.size());
      sys.interior.push_back(x);
    }
  }
  const auto m = static_cast<Eigen::Index>(sys.interior.size());
  sys.rhs = Eigen::VectorXd::Zero(m);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(sys.interior.size() * 3);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vertex x = sys.interior[static_cast<std::size_t>(i)];
    double diag = g.omega(x) * g.omega(x);
    for (const auto& nb : g.neighbors(x)) {
      diag += nb.conductance;
      if (slot[nb.vertex] >= 0) {
        entries.emplace_back(i, slot[nb.vertex], -nb.conductance);
      } else {
        sys.rhs[i] += nb.conductance * fixed[nb.vertex];
      }
    }
    entries.emplace_back(i, i, diag);
  }
  sys.matrix.resize(m, m);
  sys.matrix.setFromTriplets(entries.begin(), entries.end());
  return sys;
}

DirichletSolution solve_dirichlet(const DirichletProblem& p) {
  const auto& g = p.graph;
  const InteriorSystem sys = interior_system(p);
  DirichletSolution sol;
  Eigen::VectorXd u;
  if (sys.matrix.rows() > 0) {
    bool done = false;
    if (sys.matrix.rows() >= kDirectLimit) {
      Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
      cg.setTolerance(kIterativeTol);
      cg.setMaxIterations(std::max<Eigen::Index>(1000, 10 * sys.matrix.rows()));
      cg.compute(sys.matrix);
      u = cg.solve(sys.rhs);
      done = cg.info() == Eigen::Success;
      sol.solver = "conjugate-gradient";
    }
    if (!done) {
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.matrix);
      if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::SolveFailure, "LDLT factorisation failed");
      u = ldlt.solve(sys.rhs);
      if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::SolveFailure, "LDLT solve failed");
      sol.solver = "ldlt";
    }
  }
  sol.F.assign(g.size(), 0.0);
  for (std::size_t i = 0; i < p.frontier.size(); ++i) sol.F[p.frontier[i]] = p.boundary_values[i];
  for (std::size_t i = 0; i < sys.interior.size(); ++i) sol.F[sys.interior[i]] = u[static_cast<Eigen::Index>(i)];

  double fmax = 0.0;
  for (double v : sol.F) fmax = std::max(fmax, std::abs(v));
  const VertexFunction lap = apply_laplacian(g, sol.F);
  for (Vertex x : sys.interior) {
    const double r = std::abs(lap[x] + sol.F[x]);
    double row = 1.0;
    for (const auto& nb : g.neighbors(x)) row += nb.conductance / (g.omega(x) * g.omega(x));
    sol.interior_residual = std::max(sol.interior_residual, r);
    if (fmax > 0.0) sol.scaled_residual = std::max(sol.scaled_residual, r / (row * fmax));
  }
  sol.energy = quadratic_form(g, sol.F);
  sol.l2_omega_norm = norm_omega(g, sol.F);
  return sol;
}

bool maximum_principle_check(const DirichletProblem& p, const DirichletSolution& sol) {
  if (p.boundary_values.empty()) return true;
  const auto [lo_it, hi_it] = std::minmax_element(p.boundary_values.begin(), p.boundary_values.end());
  // F is also compared against 0: (Delta + 1) F = 0 pulls interior values towards it.
  const double lo = std::min(*lo_it, 0.0);
  const double hi = std::max(*hi_it, 0.0);
  const double tol = 1e-10 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return std::all_of(sol.F.begin(), sol.F.end(), [&](double v) { return v >= lo - tol && v <= hi + tol; });
}

DirichletProblem witness_problem(const Family& family, Index horizon, double boundary) {
  if (horizon < 2) throw Error(ErrorKind::HorizonTooSmall, "horizon must be at least 2");
  FrontierData d = frontier_for(family, horizon, boundary);
  return {build_truncation(family, horizon), std::move(d.frontier), std::move(d.values)};
}

WitnessReport non_esa_witness(const Family& family, std::span<const Index> horizons, double boundary,
                              double stability_tol) {
  if (horizons.empty()) throw Error(ErrorKind::BadParams, "no horizons given");
  const FrontierData check = frontier_for(family, std::max<Index>(horizons.front(), 2), boundary);
  if (!check.any_qualifying) throw Error(ErrorKind::PreconditionsNotMet, check.failure);

  WitnessReport report;
  report.non_unique = check.non_unique;
  for (Index h : horizons) {
    const DirichletProblem p = witness_problem(family, h, boundary);
    const DirichletSolution sol = solve_dirichlet(p);
    report.rows.push_back({h, sol.F[0], sol.energy, sol.l2_omega_norm, sol.interior_residual,
                           sol.scaled_residual, maximum_principle_check(p, sol)});
  }
  const auto& last = report.rows.back();
  report.nonzero = std::abs(last.F0) > 0.0 && last.norm > 0.0;
  if (report.rows.size() >= 2) {
    const double prev = report.rows[report.rows.size() - 2].F0;
    report.relative_change = report.nonzero ? std::abs(last.F0 - prev) / std::abs(last.F0) : 0.0;
    report.stable = report.relative_change <= stability_tol;
  }
  if (report.stable && report.nonzero) {
    report.label = report.non_unique ? "stable nonzero witness (non-unique regime)" : "stable nonzero witness";
  } else if (!report.nonzero) {
    report.label = "zero solution";
  } else {
    report.label = report.non_unique ? "not yet stable (non-unique regime)" : "not yet stable";
  }
  return report;
}

}  // namespace graphesa
