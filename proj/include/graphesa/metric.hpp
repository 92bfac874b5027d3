#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graphesa/graph.hpp"

namespace graphesa {

/// Edge-length rule of the weighted path metric d_p.
enum class MetricScheme {
  InvSqrtC,           ///< p = c^{-1/2}
  MinOmegaOverSqrtC,  ///< p = min(omega_x, omega_y) / sqrt(c)
};

enum class Completeness { Complete, NonComplete, Inconclusive };
enum class SeriesMethod { Analytic, NumericSampling };
enum class SeriesStatus { Diverges, Converges, Inconclusive };

struct SeriesTest {
  SeriesStatus status = SeriesStatus::Inconclusive;
  SeriesMethod method = SeriesMethod::NumericSampling;
  /// Exponent s of a fitted n^s term law (numeric route only).
  std::optional<double> fitted_exponent;
};

struct CompletenessVerdict {
  Completeness status = Completeness::Inconclusive;
  /// Sum of all edge lengths of the end; +inf when it diverges, NaN when
  /// undecided.
  double tail_sum = 0.0;
  SeriesMethod method = SeriesMethod::NumericSampling;
};

struct TailSum {
  double value = 0.0;
  double remainder_bound = 0.0;
  SeriesMethod method = SeriesMethod::Analytic;
};

double edge_length(MetricScheme scheme, double c, double omega_x, double omega_y);

/// p_{n-1,n} for n >= 1 along an end (gauged ends use c = a, omega = 1).
Sequence end_edge_lengths(const EndFamily& end, MetricScheme scheme);

/// Divergence of sum_{n >= first} terms(n). Analytic from declared growth;
/// otherwise partial sums at h/4, h/2 and h are compared and the ratio of
/// increments fitted to an n^s law (diverges for s >= -0.9, converges for
/// s <= -1.1, inconclusive between).
SeriesTest series_test(const Sequence& terms, Index first, Index horizon = 1000);

/// sum_{m >= from} terms(m) for a convergent series.
TailSum tail_sum(const Sequence& terms, Index from, Index horizon = 1000);

std::vector<double> distances_from(const WeightedGraph& g, MetricScheme scheme, Vertex source);
/// Shortest-path distance; +inf between components.
double path_distance(const WeightedGraph& g, MetricScheme scheme, Vertex x, Vertex y);

CompletenessVerdict end_completeness(const EndFamily& end, MetricScheme scheme, Index horizon = 1000);

/// Distance D(n) from vertex n of the end to the metric boundary.
double boundary_distance(const EndFamily& end, MetricScheme scheme, Index n);
/// D(0..horizon), accumulated from the far end so small tails keep full
/// relative precision.
std::vector<double> boundary_distances(const EndFamily& end, MetricScheme scheme, Index horizon);
/// D on every vertex of build_truncation(spec, horizon): per-end tails
/// propagated through the truncation by a multi-source shortest-path pass.
/// Vertices with no route to a boundary point get +inf.
std::vector<double> boundary_distances(const StarLikeSpec& spec, MetricScheme scheme, Index horizon);

/// sum_n omega_n^2 over the end (f == 1 has finite norm iff it converges).
SeriesTest end_volume(const EndFamily& end, Index horizon = 1000);
/// sum_n N^n omega_n^2 over the tree.
SeriesTest tree_volume(const TreeSpec& tree, Index horizon = 1000);
/// One ray of the tree as a raw end: c_{n-1,n} = conductance(n - 1).
EndFamily tree_ray(const TreeSpec& tree, Index horizon);

/// max over vertex pairs of |f(a) - f(b)| / (sqrt(Q(f)) d_p(a, b)) with the
/// c^{-1/2} metric; 0 for constant f.
double lipschitz_check(const WeightedGraph& g, std::span<const double> f);

}  // namespace graphesa
