#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "graphesa/catalog.hpp"
#include "graphesa/error.hpp"
#include "graphesa/metric.hpp"
#include "graphesa/operators.hpp"
#include "support.hpp"

using namespace graphesa;

namespace {

// zeta(3/2)
constexpr double kZeta32 = 2.612375348685488343348567567924071630570;

}  // namespace

TEST(Metric, EdgeLengthSchemes) {
  EXPECT_DOUBLE_EQ(edge_length(MetricScheme::InvSqrtC, 4.0, 1.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(edge_length(MetricScheme::MinOmegaOverSqrtC, 4.0, 0.3, 0.7), 0.15);
}

TEST(Metric, DijkstraMatchesFloydWarshall) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracle::random_graph(rng, 3 + static_cast<std::size_t>(trial));
    const auto fw = oracle::floyd_warshall(g);
    for (Vertex s = 0; s < g.size(); s += 3) {
      const auto d = distances_from(g, MetricScheme::InvSqrtC, s);
      for (Vertex t = 0; t < g.size(); ++t) EXPECT_NEAR(d[t], fw[s][t], 1e-12 * (1.0 + fw[s][t]));
    }
  }
}

TEST(Metric, DisconnectedIsInfinite) {
  const WeightedGraph g({1.0, 1.0, 1.0}, {{0, 1, 1.0}});
  EXPECT_TRUE(std::isinf(path_distance(g, MetricScheme::InvSqrtC, 0, 2)));
  EXPECT_DOUBLE_EQ(path_distance(g, MetricScheme::InvSqrtC, 0, 1), 1.0);
}

TEST(Metric, CubicEndIsNonCompleteWithZetaTail) {
  const auto v = end_completeness(catalog::cubic_conductance_end(), MetricScheme::InvSqrtC);
  EXPECT_EQ(v.status, Completeness::NonComplete);
  EXPECT_NEAR(v.tail_sum, kZeta32, 1e-10);
  const auto D = boundary_distances(catalog::cubic_conductance_end(), MetricScheme::InvSqrtC, 30);
  double partial = 0.0;
  for (Index n = 0; n <= 30; ++n) {
    if (n > 0) partial += std::pow(static_cast<double>(n), -1.5);
    EXPECT_NEAR(D[static_cast<std::size_t>(n)], kZeta32 - partial, 1e-10) << n;
  }
  for (std::size_t n = 1; n < D.size(); ++n) EXPECT_LT(D[n], D[n - 1]);
}

TEST(Metric, UnitEndIsComplete) {
  const auto v = end_completeness(catalog::unit_end(), MetricScheme::InvSqrtC);
  EXPECT_EQ(v.status, Completeness::Complete);
  EXPECT_TRUE(std::isinf(v.tail_sum));
}

TEST(Metric, DyadicBoundaryDistanceClosedForm) {
  const auto end = catalog::dyadic_end(0.0);
  const auto D = boundary_distances(end, MetricScheme::MinOmegaOverSqrtC, 20);
  for (Index n = 0; n <= 20; ++n) {
    EXPECT_LE(oracle::relative_error(D[static_cast<std::size_t>(n)], std::pow(2.0, 0.5 - static_cast<double>(n))), 1e-13);
    EXPECT_LE(oracle::relative_error(boundary_distance(end, MetricScheme::MinOmegaOverSqrtC, n),
                                      std::pow(2.0, 0.5 - static_cast<double>(n))),
              1e-13);
  }
}

TEST(Metric, NumericSeriesTestOnTables) {
  std::vector<double> harmonic(2001), root(2001), squares(2001);
  for (std::size_t n = 0; n < harmonic.size(); ++n) {
    harmonic[n] = 1.0 / static_cast<double>(n + 1);
    root[n] = 1.0 / std::sqrt(static_cast<double>(n + 1));
    squares[n] = 1.0 / std::pow(static_cast<double>(n + 1), 2.0);
  }
  const auto div = series_test(Sequence::table(root), 0, 2000);
  EXPECT_EQ(div.method, SeriesMethod::NumericSampling);
  EXPECT_EQ(div.status, SeriesStatus::Diverges);
  // s = -1 sits inside the margin, so sampling alone stays undecided.
  EXPECT_EQ(series_test(Sequence::table(harmonic), 0, 2000).status, SeriesStatus::Inconclusive);
  const auto conv = series_test(Sequence::table(squares), 0, 2000);
  EXPECT_EQ(conv.status, SeriesStatus::Converges);
  ASSERT_TRUE(conv.fitted_exponent);
  EXPECT_NEAR(*conv.fitted_exponent, -2.0, 0.05);
}

TEST(Metric, TailSumAgainstDirectSum) {
  const auto terms = Sequence::geometric(1.0, 0.5, 1.0);
  const auto t = tail_sum(terms, 3);
  EXPECT_NEAR(t.value, 0.25, 1e-15);
  const auto p = tail_sum(Sequence::power(1.0, -3.0), 1);
  EXPECT_NEAR(p.value, 1.2020569031595942, 1e-9);
}

TEST(Metric, VolumeSeries) {
  EXPECT_EQ(end_volume(catalog::cubic_conductance_end()).status, SeriesStatus::Converges);
  EXPECT_EQ(end_volume(catalog::unit_end()).status, SeriesStatus::Diverges);
  // sum N^n 4^{-n} converges iff N < 4
  for (int N = 1; N <= 8; ++N) {
    EXPECT_EQ(tree_volume(catalog::dyadic_tree(N, 12)).status,
              N < 4 ? SeriesStatus::Converges : SeriesStatus::Diverges)
        << N;
  }
}

TEST(Metric, StarLikeDistancesThroughCore) {
  const WeightedGraph core({1.0, 1.0}, {{0, 1, 4.0}});
  StarLikeSpec spec{core, {{catalog::unit_end(), 0, 1.0}, {catalog::cubic_conductance_end(), 1, 1.0}}};
  const auto D = boundary_distances(spec, MetricScheme::InvSqrtC, 10);
  // core 1 -> attach edge (length 1) -> end vertex 0 with tail zeta(3/2)
  EXPECT_NEAR(D[1], 1.0 + kZeta32, 1e-9);
  EXPECT_NEAR(D[0], 0.5 + 1.0 + kZeta32, 1e-9);
}

TEST(Metric, LipschitzBoundRandom) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_graph(rng, 3 + static_cast<std::size_t>(trial % 25));
    std::vector<double> f(g.size());
    for (auto& x : f) x = u(rng);
    const auto fw = oracle::floyd_warshall(g);
    double q = 0.0;
    for (const auto& e : g.edges()) q += e.conductance * (f[e.u] - f[e.v]) * (f[e.u] - f[e.v]);
    for (Vertex x = 0; x < g.size(); ++x) q += g.omega(x) * g.omega(x) * f[x] * f[x];
    double worst = 0.0;
    for (Vertex a = 0; a < g.size(); ++a)
      for (Vertex b = a + 1; b < g.size(); ++b) worst = std::max(worst, std::abs(f[a] - f[b]) / (std::sqrt(q) * fw[a][b]));
    const double ratio = lipschitz_check(g, f);
    EXPECT_LE(ratio, 1.0 + 1e-12);
    EXPECT_NEAR(ratio, worst, 1e-12);
  }
}
