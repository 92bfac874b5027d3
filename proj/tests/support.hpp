#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "graphesa/graph.hpp"

namespace graphesa::oracle {

/// Connected random graph: a random spanning tree plus extra edges.
inline WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, bool with_potential = false) {
  std::uniform_real_distribution<double> weight(0.2, 3.0);
  std::vector<double> omega(n);
  for (auto& w : omega) w = weight(rng);
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    edges.push_back({u, v, weight(rng)});
    used[u][v] = used[v][u] = true;
  }
  const std::size_t extra = n / 2;
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t u = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const std::size_t v = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    if (u == v || used[u][v]) continue;
    edges.push_back({u, v, weight(rng)});
    used[u][v] = used[v][u] = true;
  }
  if (!with_potential) return WeightedGraph(omega, edges);
  std::uniform_real_distribution<double> pot(-1.0, 2.0);
  std::vector<double> W(n);
  for (auto& w : W) w = pot(rng);
  return WeightedGraph(omega, edges, W);
}

/// Delta + W assembled entry by entry from the definition.
inline Eigen::MatrixXd oracle_operator(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    m(u, u) += e.conductance / (g.omega(e.u) * g.omega(e.u));
    m(v, v) += e.conductance / (g.omega(e.v) * g.omega(e.v));
    m(u, v) -= e.conductance / (g.omega(e.u) * g.omega(e.u));
    m(v, u) -= e.conductance / (g.omega(e.v) * g.omega(e.v));
  }
  for (Eigen::Index x = 0; x < n; ++x) m(x, x) += g.potential(static_cast<Vertex>(x));
  return m;
}

/// All-pairs distances with edge lengths c^{-1/2}.
inline std::vector<std::vector<double>> floyd_warshall(const WeightedGraph& g) {
  const std::size_t n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t x = 0; x < n; ++x) d[x][x] = 0.0;
  for (const auto& e : g.edges()) {
    const double len = 1.0 / std::sqrt(e.conductance);
    d[e.u][e.v] = std::min(d[e.u][e.v], len);
    d[e.v][e.u] = std::min(d[e.v][e.u], len);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline double relative_error(double computed, double expected) {
  return std::abs(computed - expected) / std::max(std::abs(expected), 1e-300);
}

}  // namespace graphesa::oracle
