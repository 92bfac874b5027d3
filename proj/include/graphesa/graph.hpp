#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "graphesa/sequence.hpp"

namespace graphesa {

using Vertex = std::size_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double conductance = 1.0;
};

struct Neighbor {
  Vertex vertex = 0;
  double conductance = 1.0;
};

/// Finite, locally finite weighted graph: vertex weights omega, edge
/// conductances c and an optional potential W. Immutable once built.
class WeightedGraph {
 public:
  WeightedGraph(std::vector<double> omega, std::vector<Edge> edges,
                std::optional<std::vector<double>> potential = std::nullopt);

  std::size_t size() const { return omega_.size(); }
  double omega(Vertex x) const { return omega_[x]; }
  std::span<const double> omegas() const { return omega_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(Vertex x) const;
  std::size_t degree(Vertex x) const { return offsets_[x + 1] - offsets_[x]; }

  bool has_potential() const { return !potential_.empty(); }
  /// W(x), zero when the graph carries no potential.
  double potential(Vertex x) const { return potential_.empty() ? 0.0 : potential_[x]; }
  std::span<const double> potentials() const { return potential_; }
  WeightedGraph with_potential(std::vector<double> potential) const;

  void check_vertex(Vertex x) const;

 private:
  std::vector<double> omega_;
  std::vector<Edge> edges_;
  std::vector<double> potential_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

enum class Gauge { Raw, Gauged };

/// One N-end given by closed-form coefficient sequences.
///
/// Raw ends carry the conductance c_{n-1,n} (indexed by n >= 1), vertex
/// weights omega_n and an optional potential; gauged ends carry
/// a_{n-1,n} with omega == 1. Vertex 0 is the attachment point.
class EndFamily {
 public:
  static EndFamily raw(Sequence conductance, Sequence omega, std::optional<Sequence> potential,
                       Index horizon, std::string name = {});
  static EndFamily gauged(Sequence a, std::optional<Sequence> potential, Index horizon,
                          std::string name = {});

  Gauge gauge() const { return gauge_; }
  const Sequence& edge() const { return edge_; }
  const Sequence& omega() const { return omega_; }
  const std::optional<Sequence>& potential() const { return potential_; }
  double potential_at(Index n) const { return potential_ ? (*potential_)(n) : 0.0; }
  Index horizon() const { return horizon_; }
  const std::string& name() const { return name_; }

  EndFamily with_horizon(Index horizon) const;
  EndFamily with_potential(std::optional<Sequence> potential) const;

  /// Positivity of the weights on [0, horizon] and agreement of declared
  /// growth with sampled ratios (relative tolerance `growth_tol`).
  void validate(double growth_tol = 0.05) const;

 private:
  EndFamily(Gauge gauge, Sequence edge, Sequence omega, std::optional<Sequence> potential,
            Index horizon, std::string name);

  Gauge gauge_;
  Sequence edge_;
  Sequence omega_;
  std::optional<Sequence> potential_;
  Index horizon_;
  std::string name_;
};

/// Spherically homogeneous rooted tree: every vertex has `branching`
/// children, weights depend on depth only. `conductance(n)` is the
/// conductance of edges from depth n to n + 1.
struct TreeSpec {
  int branching = 1;
  Sequence omega = Sequence::geometric(1.0, 2.0, -1.0);
  Sequence conductance = Sequence::geometric(1.0, 2.0, 1.0);
  std::optional<Sequence> potential;
  Index max_depth = 8;

  /// omega = 2^{-n}, c = 2^n.
  static TreeSpec dyadic(int branching, Index max_depth);
};

struct EndAttachment {
  EndFamily end;
  Vertex attach = 0;
  double conductance = 1.0;
};

/// Finite core plus finitely many disjoint N-ends, each joined to one core
/// vertex by a single edge.
struct StarLikeSpec {
  WeightedGraph core;
  std::vector<EndAttachment> ends;
};

using Family = std::variant<EndFamily, TreeSpec, StarLikeSpec>;

WeightedGraph build_truncation(const EndFamily& end, Index horizon);
WeightedGraph build_truncation(const TreeSpec& tree, Index depth);
WeightedGraph build_truncation(const StarLikeSpec& spec, Index horizon);
WeightedGraph build_truncation(const Family& family, Index horizon);

/// First vertex id of end `alpha` inside build_truncation(spec, horizon).
Vertex end_offset(const StarLikeSpec& spec, std::size_t alpha, Index horizon);

std::size_t degree_bound(const WeightedGraph& g);

/// Coefficients of -forward u_{n+1} + diagonal u_n - backward u_{n-1} = 0.
struct RadialCoefficients {
  double backward = 0.0;
  double diagonal = 0.0;
  double forward = 0.0;
};

/// Radial sector of the gauge-transformed tree operator.
///
/// `recurrence(n)` governs depth profiles u_n of radial solutions of
/// (Delta_{1,a} + W) u = 0 on the tree. `family` is the unitarily
/// equivalent Jacobi operator on l^2(N), obtained with v_n = N^{n/2} u_n so
/// that sphere sizes are accounted for. The characteristic polynomial
/// alpha^2 - trace alpha + determinant is the n -> infinity limit of the
/// depth recurrence normalised by its forward coefficient.
struct RadialReduction {
  int branching = 1;
  TreeSpec tree;
  EndFamily family;
  std::optional<double> trace;
  std::optional<double> determinant;
  std::optional<std::array<std::complex<double>, 2>> roots;
  bool symbolic = false;

  RadialCoefficients recurrence(Index n) const;
};

RadialReduction radial_reduce(const TreeSpec& tree);
/// Checks that `g` is a spherically homogeneous tree rooted at `root` and
/// reduces it. Throws NotSphericallyHomogeneous otherwise.
RadialReduction radial_reduce(const WeightedGraph& g, Vertex root = 0);

/// Gauge-transformed tree edge weight a(n) on edges depth n -> n + 1.
Sequence tree_gauge_edge(const TreeSpec& tree);
/// Gauge potential (plus the tree potential) at depth n.
Sequence tree_gauge_potential(const TreeSpec& tree);

/// Roots of alpha^2 - trace * alpha + determinant, larger modulus first.
std::array<std::complex<double>, 2> quadratic_roots(double trace, double determinant);

}  // namespace graphesa
