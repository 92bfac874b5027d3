#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "graphesa/catalog.hpp"
#include "graphesa/error.hpp"
#include "graphesa/graph.hpp"
#include "graphesa/operators.hpp"
#include "support.hpp"

using namespace graphesa;

TEST(WeightedGraph, RejectsBadInput) {
  EXPECT_THROW(WeightedGraph({1.0, -1.0}, {{0, 1, 1.0}}), Error);
  EXPECT_THROW(WeightedGraph({1.0, 1.0}, {{0, 1, 0.0}}), Error);
  EXPECT_THROW(WeightedGraph({1.0, 1.0}, {{0, 2, 1.0}}), Error);
  EXPECT_THROW(WeightedGraph({1.0, 1.0}, {{0, 1, 1.0}}, std::vector<double>{1.0}), Error);
}

TEST(WeightedGraph, AdjacencyIsSymmetric) {
  std::mt19937_64 rng(7);
  const auto g = oracle::random_graph(rng, 25);
  std::size_t total = 0;
  for (Vertex x = 0; x < g.size(); ++x) {
    total += g.degree(x);
    for (const auto& nb : g.neighbors(x)) {
      bool back = false;
      for (const auto& mb : g.neighbors(nb.vertex)) back = back || (mb.vertex == x && mb.conductance == nb.conductance);
      EXPECT_TRUE(back);
    }
  }
  EXPECT_EQ(total, 2 * g.edges().size());
}

TEST(Truncation, EndIsAPath) {
  const auto end = catalog::cubic_conductance_end();
  const auto g = build_truncation(end, 10);
  ASSERT_EQ(g.size(), 11u);
  ASSERT_EQ(g.edges().size(), 10u);
  for (const auto& e : g.edges()) {
    const Index n = static_cast<Index>(std::max(e.u, e.v));
    EXPECT_EQ(std::max(e.u, e.v) - std::min(e.u, e.v), 1u);
    EXPECT_DOUBLE_EQ(e.conductance, std::pow(static_cast<double>(n), 3.0));
  }
  EXPECT_DOUBLE_EQ(g.omega(4), 0.2);
}

TEST(Truncation, TreeSphereSizes) {
  for (int N : {1, 2, 3}) {
    const auto g = build_truncation(catalog::dyadic_tree(N, 5), 5);
    std::size_t expected = 0;
    for (int k = 0, p = 1; k <= 5; ++k, p *= N) expected += static_cast<std::size_t>(p);
    EXPECT_EQ(g.size(), expected);
    EXPECT_EQ(g.edges().size(), expected - 1);
    EXPECT_EQ(degree_bound(g), static_cast<std::size_t>(N + 1));
  }
}

TEST(Truncation, StarLikeLayout) {
  const WeightedGraph core({1.0, 1.0}, {{0, 1, 1.0}});
  StarLikeSpec spec{core, {{catalog::unit_end(), 0, 2.0}, {catalog::unit_end(), 1, 3.0}}};
  const auto g = build_truncation(spec, 4);
  EXPECT_EQ(g.size(), 2u + 2u * 5u);
  EXPECT_EQ(end_offset(spec, 0, 4), 2u);
  EXPECT_EQ(end_offset(spec, 1, 4), 7u);
}

TEST(QuadraticRoots, MatchesFormula) {
  // alpha^2 - 1.25 alpha + 0.25 = (alpha - 1)(alpha - 1/4)
  auto r = quadratic_roots(1.25, 0.25);
  EXPECT_NEAR(std::abs(r[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(r[1]), 0.25, 1e-15);
  // complex pair: alpha^2 - alpha + 1 has |alpha| = 1
  r = quadratic_roots(1.0, 1.0);
  EXPECT_NEAR(std::abs(r[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(r[1]), 1.0, 1e-15);
  EXPECT_NEAR(r[0].imag(), -r[1].imag(), 1e-15);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    const double t = u(rng), d = u(rng);
    r = quadratic_roots(t, d);
    EXPECT_NEAR(std::abs(r[0] + r[1] - t), 0.0, 1e-12 * (1 + std::abs(t)));
    EXPECT_NEAR(std::abs(r[0] * r[1] - d), 0.0, 1e-12 * (1 + std::abs(d) + t * t));
    EXPECT_GE(std::abs(r[0]), std::abs(r[1]));
  }
}

TEST(RadialReduction, DyadicTreeCharacteristicPolynomial) {
  for (int N = 1; N <= 8; ++N) {
    const auto rr = radial_reduce(catalog::dyadic_tree(N, 12));
    ASSERT_TRUE(rr.trace && rr.determinant && rr.roots);
    // u-profile roots 1/2 and 1/(4N)
    EXPECT_NEAR(*rr.trace, 0.5 + 0.25 / N, 1e-14);
    EXPECT_NEAR(*rr.determinant, 1.0 / (8.0 * N), 1e-14);
    EXPECT_NEAR(std::abs((*rr.roots)[0]), 0.5, 1e-12);
    EXPECT_NEAR(std::abs((*rr.roots)[1]), 0.25 / N, 1e-12);
  }
}

TEST(RadialReduction, RecurrenceSolvedByRadialKernel) {
  // A radial profile generated by the depth recurrence is annihilated by the
  // gauged tree operator at every vertex whose neighbours are all present.
  const int N = 3;
  const Index depth = 6;
  const auto tree = catalog::dyadic_tree(N, depth);
  const auto rr = radial_reduce(tree);
  std::vector<double> u{1.0, 0.3};
  for (Index n = 1; n < depth; ++n) {
    const auto c = rr.recurrence(n);
    u.push_back((c.diagonal * u[n] - c.backward * u[n - 1]) / c.forward);
  }
  const auto gauged = gauge_transform(build_truncation(tree, depth));
  const auto& g = gauged.graph;
  std::vector<Index> level(g.size(), -1);
  std::vector<Vertex> queue{0};
  level[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& nb : g.neighbors(queue[head])) {
      if (level[nb.vertex] < 0) {
        level[nb.vertex] = level[queue[head]] + 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  std::vector<double> f(g.size());
  for (Vertex x = 0; x < g.size(); ++x) f[x] = u[static_cast<std::size_t>(level[x])];
  const auto hf = gauged.apply(f);
  for (Vertex x = 0; x < g.size(); ++x) {
    if (level[x] >= 1 && level[x] < depth) {
      EXPECT_NEAR(hf[x], 0.0, 1e-9 * (1.0 + std::abs(f[x]) * 64.0)) << x;
    }
  }
}

TEST(RadialReduction, RejectsNonHomogeneousGraph) {
  const WeightedGraph g({1.0, 1.0, 1.0, 1.0}, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}});
  EXPECT_THROW(radial_reduce(g, 0), Error);
}
