#include "graphesa/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "graphesa/error.hpp"
#include "graphesa/operators.hpp"

namespace graphesa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Index kExplicitTerms = Index{1} << 16;

// Divergence margin around the harmonic exponent for fitted term laws.
constexpr double kFitMargin = 0.1;

double partial_sum(const Sequence& terms, Index from, Index to) {
  double s = 0.0;
  for (Index n = from; n <= to; ++n) s += terms(n);
  return s;
}

std::vector<double> dijkstra(const WeightedGraph& g, MetricScheme scheme, std::vector<double> dist) {
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (Vertex x = 0; x < g.size(); ++x) {
    if (std::isfinite(dist[x])) pq.emplace(dist[x], x);
  }
  while (!pq.empty()) {
    const auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x]) continue;
    for (const auto& nb : g.neighbors(x)) {
      const double nd = d + edge_length(scheme, nb.conductance, g.omega(x), g.omega(nb.vertex));
      if (nd < dist[nb.vertex]) {
        dist[nb.vertex] = nd;
        pq.emplace(nd, nb.vertex);
      }
    }
  }
  return dist;
}

}  // namespace

double edge_length(MetricScheme scheme, double c, double omega_x, double omega_y) {
  switch (scheme) {
    case MetricScheme::InvSqrtC:
      return 1.0 / std::sqrt(c);
    case MetricScheme::MinOmegaOverSqrtC:
      return std::min(omega_x, omega_y) / std::sqrt(c);
  }
  return kInf;
}

Sequence end_edge_lengths(const EndFamily& end, MetricScheme scheme) {
  const Sequence c = end.edge();
  const Sequence omega = end.omega();
  std::optional<Growth> growth;
  if (c.growth()) growth = c.growth()->pow(-0.5);
  if (scheme == MetricScheme::MinOmegaOverSqrtC) {
    const auto& gw = omega.growth();
    if (growth && gw) {
      // min(omega_{n-1}, omega_n) follows whichever side is smaller eventually.
      const bool decreasing = gw->ratio < 1.0 || (gw->ratio == 1.0 && gw->power <= 0.0);
      Growth m = decreasing ? *gw : gw->shifted(-1);
      if (gw->ratio == 1.0 && gw->power != 0.0) m.exact = false;
      growth = growth->times(m);
    } else {
      growth.reset();
    }
  }
  std::optional<Index> max_index;
  if (c.max_index() || omega.max_index()) {
    max_index = std::min(c.max_index().value_or(INT64_MAX), omega.max_index().value_or(INT64_MAX));
  }
  return Sequence::derived(
      [c, omega, scheme](Index n) { return edge_length(scheme, c(n), omega(n - 1), omega(n)); }, growth,
      scheme == MetricScheme::InvSqrtC ? "c^{-1/2}" : "min(omega)/sqrt(c)", max_index);
}

SeriesTest series_test(const Sequence& terms, Index first, Index horizon) {
  if (const auto& g = terms.growth(); g && g->scale > 0.0) {
    return {g->series_diverges() ? SeriesStatus::Diverges : SeriesStatus::Converges, SeriesMethod::Analytic,
            std::nullopt};
  }
  Index h = horizon;
  if (terms.max_index()) h = std::min(h, *terms.max_index());
  const Index q = h / 4;
  if (q <= first + 1) return {SeriesStatus::Inconclusive, SeriesMethod::NumericSampling, std::nullopt};
  const double s1 = partial_sum(terms, first, q);
  const double s2 = s1 + partial_sum(terms, q + 1, 2 * q);
  const double s4 = s2 + partial_sum(terms, 2 * q + 1, 4 * q);
  const double i1 = s2 - s1;
  const double i2 = s4 - s2;
  if (!std::isfinite(s4)) return {SeriesStatus::Diverges, SeriesMethod::NumericSampling, std::nullopt};
  if (i1 <= 0.0 || i2 <= 0.0) {
    return {i2 <= 0.0 ? SeriesStatus::Converges : SeriesStatus::Inconclusive, SeriesMethod::NumericSampling,
            std::nullopt};
  }
  // Increments over doubling blocks scale like 2^{s+1} for n^s terms.
  const double s = std::log2(i2 / i1) - 1.0;
  SeriesStatus status = SeriesStatus::Inconclusive;
  if (s >= -1.0 + kFitMargin) status = SeriesStatus::Diverges;
  if (s <= -1.0 - kFitMargin) status = SeriesStatus::Converges;
  return {status, SeriesMethod::NumericSampling, s};
}

TailSum tail_sum(const Sequence& terms, Index from, Index horizon) {
  const auto& g = terms.growth();
  if (g && g->scale > 0.0) {
    if (g->series_diverges()) return {kInf, 0.0, SeriesMethod::Analytic};
    if (g->exact && g->power == 0.0) {
      return {g->scale * std::pow(g->ratio, static_cast<double>(from)) / (1.0 - g->ratio), 0.0,
              SeriesMethod::Analytic};
    }
    // Explicit terms, then the leading term integrated past the cut-off.
    Index last = from + kExplicitTerms;
    if (terms.max_index()) last = std::min(last, *terms.max_index());
    double s = 0.0;
    Index n = from;
    for (; n <= last; ++n) {
      const double t = terms(n);
      if (!std::isfinite(t)) break;
      s += t;
      if (g->ratio < 1.0 && t <= 1e-18 * s) return {s, t / (1.0 - g->ratio), SeriesMethod::Analytic};
    }
    if (g->ratio < 1.0) return {s, terms(n - 1) / (1.0 - g->ratio), SeriesMethod::Analytic};
    const double x0 = static_cast<double>(n) - 0.5;
    const double tail = g->scale * std::pow(x0, g->power + 1.0) / (-(g->power + 1.0));
    const double bound = std::abs(tail) * (std::abs(g->power) + 1.0) / x0;
    return {s + tail, bound, SeriesMethod::Analytic};
  }
  // Fitted tail: increments over doubling blocks shrink by a common factor.
  Index h = horizon;
  if (terms.max_index()) h = std::min(h, *terms.max_index());
  const Index q = std::max<Index>(from, h / 4);
  const double s_head = partial_sum(terms, from, q);
  const double s2 = s_head + partial_sum(terms, q + 1, 2 * q);
  const double s4 = s2 + partial_sum(terms, 2 * q + 1, 4 * q);
  const double i1 = s2 - s_head;
  const double i2 = s4 - s2;
  if (i1 <= 0.0) return {s4, 0.0, SeriesMethod::NumericSampling};
  const double ratio = i2 / i1;
  if (ratio >= 1.0) return {kInf, 0.0, SeriesMethod::NumericSampling};
  const double rest = i2 * ratio / (1.0 - ratio);
  return {s4 + rest, rest, SeriesMethod::NumericSampling};
}

std::vector<double> distances_from(const WeightedGraph& g, MetricScheme scheme, Vertex source) {
  g.check_vertex(source);
  std::vector<double> dist(g.size(), kInf);
  dist[source] = 0.0;
  return dijkstra(g, scheme, std::move(dist));
}

double path_distance(const WeightedGraph& g, MetricScheme scheme, Vertex x, Vertex y) {
  g.check_vertex(y);
  return distances_from(g, scheme, x)[y];
}

CompletenessVerdict end_completeness(const EndFamily& end, MetricScheme scheme, Index horizon) {
  const Sequence p = end_edge_lengths(end, scheme);
  const SeriesTest t = series_test(p, 1, horizon);
  CompletenessVerdict v;
  v.method = t.method;
  switch (t.status) {
    case SeriesStatus::Diverges:
      v.status = Completeness::Complete;
      v.tail_sum = kInf;
      break;
    case SeriesStatus::Converges:
      v.status = Completeness::NonComplete;
      v.tail_sum = tail_sum(p, 1, horizon).value;
      break;
    case SeriesStatus::Inconclusive:
      v.status = Completeness::Inconclusive;
      v.tail_sum = std::numeric_limits<double>::quiet_NaN();
      break;
  }
  return v;
}

double boundary_distance(const EndFamily& end, MetricScheme scheme, Index n) {
  const auto verdict = end_completeness(end, scheme);
  if (verdict.status == Completeness::Complete) {
    throw Error(ErrorKind::EndIsComplete, "edge-length series diverges; no metric boundary on this end");
  }
  if (verdict.status == Completeness::Inconclusive) {
    throw Error(ErrorKind::PreconditionsNotMet, "completeness of the end could not be decided");
  }
  return tail_sum(end_edge_lengths(end, scheme), n + 1, end.horizon()).value;
}

std::vector<double> boundary_distances(const EndFamily& end, MetricScheme scheme, Index horizon) {
  const double last = boundary_distance(end, scheme, horizon);
  const Sequence p = end_edge_lengths(end, scheme);
  std::vector<double> d(static_cast<std::size_t>(horizon) + 1);
  const auto& g = p.growth();
  const bool closed_form = g && g->exact && g->power == 0.0 && g->ratio < 1.0;
  d[static_cast<std::size_t>(horizon)] = last;
  for (Index n = horizon - 1; n >= 0; --n) {
    const auto i = static_cast<std::size_t>(n);
    d[i] = closed_form ? g->scale * std::pow(g->ratio, static_cast<double>(n + 1)) / (1.0 - g->ratio)
                       : d[i + 1] + p(n + 1);
  }
  return d;
}

std::vector<double> boundary_distances(const StarLikeSpec& spec, MetricScheme scheme, Index horizon) {
  const WeightedGraph g = build_truncation(spec, horizon);
  std::vector<double> dist(g.size(), kInf);
  for (std::size_t alpha = 0; alpha < spec.ends.size(); ++alpha) {
    const auto& end = spec.ends[alpha].end;
    if (end_completeness(end, scheme).status != Completeness::NonComplete) continue;
    const auto tails = boundary_distances(end, scheme, horizon);
    const Vertex base = end_offset(spec, alpha, horizon);
    for (std::size_t n = 0; n < tails.size(); ++n) dist[base + n] = tails[n];
  }
  return dijkstra(g, scheme, std::move(dist));
}

SeriesTest end_volume(const EndFamily& end, Index horizon) {
  const Sequence omega = end.omega();
  std::optional<Growth> growth;
  if (omega.growth()) growth = omega.growth()->pow(2.0);
  const Sequence sq = Sequence::derived([omega](Index n) { return omega(n) * omega(n); }, growth, "omega^2",
                                        omega.max_index());
  return series_test(sq, 0, horizon);
}

SeriesTest tree_volume(const TreeSpec& tree, Index horizon) {
  const Sequence omega = tree.omega;
  const double N = tree.branching;
  std::optional<Growth> growth;
  if (omega.growth()) growth = omega.growth()->pow(2.0).times(Growth{1.0, N, 0.0, true});
  const Sequence sq = Sequence::derived(
      [omega, N](Index n) { return std::pow(N, static_cast<double>(n)) * omega(n) * omega(n); }, growth,
      "N^n omega^2", omega.max_index());
  return series_test(sq, 0, horizon);
}

EndFamily tree_ray(const TreeSpec& tree, Index horizon) {
  const Sequence c = tree.conductance;
  std::optional<Growth> growth;
  if (c.growth()) growth = c.growth()->shifted(-1);
  std::optional<Index> max_index;
  if (c.max_index()) max_index = *c.max_index() + 1;
  Sequence edge = Sequence::derived([c](Index n) { return c(n - 1); }, growth, "ray conductance", max_index);
  return EndFamily::raw(std::move(edge), tree.omega, tree.potential, horizon, "tree ray");
}

double lipschitz_check(const WeightedGraph& g, std::span<const double> f) {
  const double q = quadratic_form(g, f);
  double spread = 0.0;
  for (Vertex x = 0; x < g.size(); ++x) spread = std::max(spread, std::abs(f[x] - f[0]));
  if (spread == 0.0) return 0.0;
  if (q <= 0.0) throw Error(ErrorKind::ZeroForm, "Q(f) vanishes for a non-constant f");
  const double root_q = std::sqrt(q);
  double worst = 0.0;
  for (Vertex a = 0; a < g.size(); ++a) {
    const auto dist = distances_from(g, MetricScheme::InvSqrtC, a);
    for (Vertex b = a + 1; b < g.size(); ++b) {
      if (!std::isfinite(dist[b]) || dist[b] == 0.0) continue;
      worst = std::max(worst, std::abs(f[a] - f[b]) / (root_q * dist[b]));
    }
  }
  return worst;
}

}  // namespace graphesa
