#include "graphesa/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <set>

#include "graphesa/error.hpp"

namespace graphesa {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

constexpr std::size_t kMaxTreeVertices = 5'000'000;

}  // namespace

// --- WeightedGraph -----------------------------------------------------------

WeightedGraph::WeightedGraph(std::vector<double> omega, std::vector<Edge> edges,
                             std::optional<std::vector<double>> potential)
    : omega_(std::move(omega)), edges_(std::move(edges)) {
  const std::size_t n = omega_.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!positive_finite(omega_[x])) {
      throw Error(ErrorKind::NonPositiveWeight, "omega at vertex " + std::to_string(x) + " is not positive");
    }
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::size_t> counts(n + 1, 0);
  for (const auto& e : edges_) {
    if (e.u >= n || e.v >= n) throw Error(ErrorKind::InvalidGraph, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorKind::InvalidGraph, "self-loop at vertex " + std::to_string(e.u));
    if (!positive_finite(e.conductance)) {
      throw Error(ErrorKind::NonPositiveWeight, "conductance on edge {" + std::to_string(e.u) + "," +
                                                    std::to_string(e.v) + "} is not positive");
    }
    if (!seen.insert(std::minmax(e.u, e.v)).second) {
      throw Error(ErrorKind::InvalidGraph, "duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    }
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) offsets_[x + 1] = offsets_[x] + counts[x + 1];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.conductance};
    adjacency_[fill[e.v]++] = {e.u, e.conductance};
  }
  if (potential) {
    if (potential->size() != n) throw Error(ErrorKind::DomainMismatch, "potential size differs from vertex count");
    for (double w : *potential) {
      if (!std::isfinite(w)) throw Error(ErrorKind::InvalidGraph, "potential is not finite");
    }
    potential_ = std::move(*potential);
  }
}

std::span<const Neighbor> WeightedGraph::neighbors(Vertex x) const {
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[x], offsets_[x + 1] - offsets_[x]);
}

WeightedGraph WeightedGraph::with_potential(std::vector<double> potential) const {
  return WeightedGraph(omega_, edges_, std::move(potential));
}

void WeightedGraph::check_vertex(Vertex x) const {
  if (x >= size()) throw Error(ErrorKind::UnknownVertex, "vertex " + std::to_string(x) + " not in graph");
}

// --- EndFamily ---------------------------------------------------------------

EndFamily::EndFamily(Gauge gauge, Sequence edge, Sequence omega, std::optional<Sequence> potential,
                     Index horizon, std::string name)
    : gauge_(gauge),
      edge_(std::move(edge)),
      omega_(std::move(omega)),
      potential_(std::move(potential)),
      horizon_(horizon),
      name_(std::move(name)) {}

EndFamily EndFamily::raw(Sequence conductance, Sequence omega, std::optional<Sequence> potential,
                         Index horizon, std::string name) {
  return EndFamily(Gauge::Raw, std::move(conductance), std::move(omega), std::move(potential), horizon,
                   std::move(name));
}

EndFamily EndFamily::gauged(Sequence a, std::optional<Sequence> potential, Index horizon, std::string name) {
  return EndFamily(Gauge::Gauged, std::move(a), Sequence::constant(1.0), std::move(potential), horizon,
                   std::move(name));
}

EndFamily EndFamily::with_horizon(Index horizon) const {
  EndFamily copy = *this;
  copy.horizon_ = horizon;
  return copy;
}

EndFamily EndFamily::with_potential(std::optional<Sequence> potential) const {
  EndFamily copy = *this;
  copy.potential_ = std::move(potential);
  return copy;
}

void EndFamily::validate(double growth_tol) const {
  if (horizon_ < 2) throw Error(ErrorKind::HorizonTooSmall, "horizon must be at least 2");
  for (Index n = 0; n <= horizon_; ++n) {
    if (!positive_finite(omega_(n))) {
      throw Error(ErrorKind::NonPositiveWeight, "omega_" + std::to_string(n) + " is not positive");
    }
    if (n >= 1 && !positive_finite(edge_(n))) {
      throw Error(ErrorKind::NonPositiveWeight,
                  std::string(gauge_ == Gauge::Raw ? "c" : "a") + " on edge " + std::to_string(n) + " is not positive");
    }
  }
  // Declared growth against the sampled ratio x(h) / x(h/2).
  auto check = [&](const Sequence& seq, const char* label) {
    const auto& g = seq.growth();
    if (!g || seq.form() != Sequence::Form::Table) return;
    const Index h = horizon_;
    const Index m = std::max<Index>(1, h / 2);
    const double sampled = seq(h) / seq(m);
    const double declared = g->evaluate(static_cast<double>(h)) / g->evaluate(static_cast<double>(m));
    if (!std::isfinite(sampled) || !std::isfinite(declared)) return;
    if (std::abs(sampled - declared) > growth_tol * std::abs(declared)) {
      throw Error(ErrorKind::InvalidFamily, std::string("declared growth of ") + label +
                                                " disagrees with sampled values at the horizon");
    }
  };
  check(edge_, gauge_ == Gauge::Raw ? "c" : "a");
  check(omega_, "omega");
}

// --- TreeSpec ----------------------------------------------------------------

TreeSpec TreeSpec::dyadic(int branching, Index max_depth) {
  TreeSpec t;
  t.branching = branching;
  t.omega = Sequence::geometric(1.0, 2.0, -1.0);
  t.conductance = Sequence::geometric(1.0, 2.0, 1.0);
  t.max_depth = max_depth;
  return t;
}

// --- truncations -------------------------------------------------------------

WeightedGraph build_truncation(const EndFamily& end, Index horizon) {
  if (horizon < 2) throw Error(ErrorKind::HorizonTooSmall, "horizon must be at least 2");
  end.with_horizon(horizon).validate();
  std::vector<double> omega(static_cast<std::size_t>(horizon) + 1);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(horizon));
  for (Index n = 0; n <= horizon; ++n) omega[static_cast<std::size_t>(n)] = end.omega()(n);
  for (Index n = 1; n <= horizon; ++n) {
    edges.push_back({static_cast<Vertex>(n - 1), static_cast<Vertex>(n), end.edge()(n)});
  }
  std::optional<std::vector<double>> potential;
  if (end.potential()) {
    potential.emplace(omega.size());
    for (Index n = 0; n <= horizon; ++n) (*potential)[static_cast<std::size_t>(n)] = (*end.potential())(n);
  }
  return WeightedGraph(std::move(omega), std::move(edges), std::move(potential));
}

WeightedGraph build_truncation(const TreeSpec& tree, Index depth) {
  if (depth < 2) throw Error(ErrorKind::HorizonTooSmall, "tree depth must be at least 2");
  if (tree.branching < 1) throw Error(ErrorKind::InvalidFamily, "branching must be at least 1");
  const auto N = static_cast<std::size_t>(tree.branching);
  std::size_t total = 0;
  std::size_t layer = 1;
  for (Index d = 0; d <= depth; ++d) {
    total += layer;
    if (total > kMaxTreeVertices) throw Error(ErrorKind::InvalidFamily, "tree truncation too large");
    layer *= N;
  }
  std::vector<double> omega;
  std::vector<Edge> edges;
  std::optional<std::vector<double>> potential;
  if (tree.potential) potential.emplace();
  omega.reserve(total);
  edges.reserve(total - 1);
  std::size_t layer_start = 0;
  layer = 1;
  for (Index d = 0; d <= depth; ++d) {
    const double w = tree.omega(d);
    if (!positive_finite(w)) throw Error(ErrorKind::NonPositiveWeight, "omega at depth " + std::to_string(d));
    for (std::size_t i = 0; i < layer; ++i) {
      omega.push_back(w);
      if (potential) potential->push_back((*tree.potential)(d));
    }
    if (d > 0) {
      const double c = tree.conductance(d - 1);
      if (!positive_finite(c)) throw Error(ErrorKind::NonPositiveWeight, "conductance at depth " + std::to_string(d - 1));
      const std::size_t parent_start = layer_start - layer / N;
      for (std::size_t i = 0; i < layer; ++i) {
        edges.push_back({parent_start + i / N, layer_start + i, c});
      }
    }
    layer_start += layer;
    layer *= N;
  }
  return WeightedGraph(std::move(omega), std::move(edges), std::move(potential));
}

Vertex end_offset(const StarLikeSpec& spec, std::size_t alpha, Index horizon) {
  return spec.core.size() + alpha * static_cast<std::size_t>(horizon + 1);
}

WeightedGraph build_truncation(const StarLikeSpec& spec, Index horizon) {
  if (horizon < 2) throw Error(ErrorKind::HorizonTooSmall, "horizon must be at least 2");
  std::vector<double> omega(spec.core.omegas().begin(), spec.core.omegas().end());
  std::vector<Edge> edges(spec.core.edges().begin(), spec.core.edges().end());
  bool any_potential = spec.core.has_potential();
  for (const auto& att : spec.ends) any_potential = any_potential || att.end.potential().has_value();
  std::vector<double> potential;
  if (any_potential) {
    for (Vertex x = 0; x < spec.core.size(); ++x) potential.push_back(spec.core.potential(x));
  }
  for (std::size_t alpha = 0; alpha < spec.ends.size(); ++alpha) {
    const auto& att = spec.ends[alpha];
    spec.core.check_vertex(att.attach);
    const WeightedGraph piece = build_truncation(att.end, horizon);
    const Vertex base = omega.size();
    omega.insert(omega.end(), piece.omegas().begin(), piece.omegas().end());
    for (const auto& e : piece.edges()) edges.push_back({e.u + base, e.v + base, e.conductance});
    edges.push_back({att.attach, base, att.conductance});
    if (any_potential) {
      for (Vertex x = 0; x < piece.size(); ++x) potential.push_back(piece.potential(x));
    }
  }
  std::optional<std::vector<double>> pot;
  if (any_potential) pot = std::move(potential);
  return WeightedGraph(std::move(omega), std::move(edges), std::move(pot));
}

WeightedGraph build_truncation(const Family& family, Index horizon) {
  return std::visit([horizon](const auto& f) { return build_truncation(f, horizon); }, family);
}

std::size_t degree_bound(const WeightedGraph& g) {
  std::size_t best = 0;
  for (Vertex x = 0; x < g.size(); ++x) best = std::max(best, g.degree(x));
  return best;
}

// --- radial reduction --------------------------------------------------------

std::array<std::complex<double>, 2> quadratic_roots(double trace, double determinant) {
  using C = std::complex<double>;
  const double disc = trace * trace - 4.0 * determinant;
  std::array<C, 2> r;
  if (disc >= 0.0) {
    // Cancellation-free pairing: the large root from the formula, the small
    // one from the product of roots.
    const double q = trace + std::copysign(std::sqrt(disc), trace);
    const C big = q / 2.0;
    const C small = (q != 0.0) ? C(2.0 * determinant / q) : C(0.0);
    r = {big, small};
  } else {
    const double im = std::sqrt(-disc) / 2.0;
    r = {C(trace / 2.0, im), C(trace / 2.0, -im)};
  }
  if (std::abs(r[0]) < std::abs(r[1])) std::swap(r[0], r[1]);
  return r;
}

Sequence tree_gauge_edge(const TreeSpec& tree) {
  const Sequence omega = tree.omega;
  const Sequence c = tree.conductance;
  std::optional<Growth> growth;
  if (c.growth() && omega.growth()) {
    growth = c.growth()->over(omega.growth()->times(omega.growth()->shifted(1)));
  }
  std::optional<Index> max_index;
  if (omega.max_index() || c.max_index()) {
    max_index = std::min(omega.max_index().value_or(INT64_MAX) - 1, c.max_index().value_or(INT64_MAX));
  }
  return Sequence::derived([omega, c](Index n) { return c(n) / (omega(n) * omega(n + 1)); }, growth,
                           "tree a(n)", max_index);
}

Sequence tree_gauge_potential(const TreeSpec& tree) {
  const Sequence omega = tree.omega;
  const Sequence a = tree_gauge_edge(tree);
  const auto user = tree.potential;
  const double N = tree.branching;
  std::optional<Index> max_index;
  if (a.max_index()) max_index = *a.max_index();
  return Sequence::derived(
      [omega, a, user, N](Index n) {
        const double w = omega(n);
        double lap = N * a(n) * (w - omega(n + 1));
        if (n > 0) lap += a(n - 1) * (w - omega(n - 1));
        return -lap / w + (user ? (*user)(n) : 0.0);
      },
      std::nullopt, "tree W(n)", max_index);
}

RadialCoefficients RadialReduction::recurrence(Index n) const {
  const Sequence a = tree_gauge_edge(tree);
  const Sequence w = tree_gauge_potential(tree);
  const double N = branching;
  RadialCoefficients rc;
  rc.forward = N * a(n);
  rc.backward = n > 0 ? a(n - 1) : 0.0;
  rc.diagonal = rc.forward + rc.backward + w(n);
  return rc;
}

namespace {

// Limits of (trace_n, det_n) sampled at doubling depths; nullopt when the
// samples do not settle to `tol` relative before coefficients stop being
// finite or the table ends.
std::optional<std::pair<double, double>> numeric_char_poly(const RadialReduction& rr) {
  const Sequence a = tree_gauge_edge(rr.tree);
  const Index limit = a.max_index().value_or(4096);
  std::optional<std::pair<double, double>> prev;
  for (Index n = 8; n <= limit; n *= 2) {
    const RadialCoefficients rc = rr.recurrence(n);
    const double t = rc.diagonal / rc.forward;
    const double d = rc.backward / rc.forward;
    if (!std::isfinite(t) || !std::isfinite(d)) break;
    if (prev && std::abs(t - prev->first) <= 1e-12 * std::max(1.0, std::abs(t)) &&
        std::abs(d - prev->second) <= 1e-12 * std::max(1.0, std::abs(d))) {
      return std::make_pair(t, d);
    }
    prev = std::make_pair(t, d);
  }
  return std::nullopt;
}

}  // namespace

RadialReduction radial_reduce(const TreeSpec& tree) {
  if (tree.branching < 1) throw Error(ErrorKind::InvalidFamily, "branching must be at least 1");
  const double N = tree.branching;
  const double sqrtN = std::sqrt(N);
  const Sequence a = tree_gauge_edge(tree);
  const Sequence w = tree_gauge_potential(tree);

  // Jacobi form on l^2(N): a'_{m-1,m} = sqrt(N) a(m-1), with the extra
  // diagonal produced by conjugating with v_n = N^{n/2} u_n.
  std::optional<Growth> edge_growth;
  if (a.growth()) edge_growth = a.growth()->shifted(-1).scaled(sqrtN);
  std::optional<Index> max_index;
  if (a.max_index()) max_index = *a.max_index();
  Sequence radial_a = Sequence::derived([a, sqrtN](Index m) { return sqrtN * a(m - 1); }, edge_growth,
                                        "radial a'", max_index ? std::optional<Index>(*max_index + 1) : std::nullopt);
  Sequence radial_w = Sequence::derived(
      [a, w, N, sqrtN](Index n) {
        double v = w(n) + (N - sqrtN) * a(n);
        if (n > 0) v -= (sqrtN - 1.0) * a(n - 1);
        return v;
      },
      std::nullopt, "radial W'", max_index);
  const Index horizon = std::max<Index>(2, tree.max_depth);

  RadialReduction rr{tree.branching, tree,
                     EndFamily::gauged(radial_a, radial_w, horizon,
                                       "radial sector of tree N=" + std::to_string(tree.branching)),
                     std::nullopt, std::nullopt, std::nullopt, false};

  const auto& gw = tree.omega.growth();
  const auto& ga = a.growth();
  const bool geometric_rules = gw && ga && gw->exact && ga->exact && gw->power == 0.0 && ga->power == 0.0;
  if (geometric_rules) {
    // With omega ~ r_w^n and a ~ r_a^n exactly, dividing the depth recurrence
    // by N a(n) gives constant coefficients:
    //   det = 1 / (N r_a),  trace = r_w + det / r_w  (+ limit of W_user / (N a)).
    const double det = 1.0 / (N * ga->ratio);
    double trace = gw->ratio + det / gw->ratio;
    bool ok = true;
    if (tree.potential) {
      const auto& gu = tree.potential->growth();
      if (!gu) {
        ok = false;
      } else if (gu->scale != 0.0) {
        const int cmp = gu->compare_order(*ga);
        if (cmp > 0) ok = false;
        if (cmp == 0) trace += gu->scale / (N * ga->scale);
      }
    }
    if (ok) {
      rr.trace = trace;
      rr.determinant = det;
      rr.symbolic = true;
    }
  }
  if (!rr.trace) {
    if (auto td = numeric_char_poly(rr)) {
      rr.trace = td->first;
      rr.determinant = td->second;
    }
  }
  if (rr.trace) rr.roots = quadratic_roots(*rr.trace, *rr.determinant);
  return rr;
}

RadialReduction radial_reduce(const WeightedGraph& g, Vertex root) {
  g.check_vertex(root);
  const std::size_t n = g.size();
  std::vector<Index> depth(n, -1);
  std::vector<Vertex> order;
  std::queue<Vertex> q;
  depth[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop();
    order.push_back(x);
    for (const auto& nb : g.neighbors(x)) {
      if (depth[nb.vertex] < 0) {
        depth[nb.vertex] = depth[x] + 1;
        q.push(nb.vertex);
      }
    }
  }
  if (order.size() != n || g.edges().size() != n - 1) {
    throw Error(ErrorKind::NotSphericallyHomogeneous, "graph is not a connected tree");
  }
  Index max_depth = 0;
  for (auto d : depth) max_depth = std::max(max_depth, d);
  const auto fail = [](const std::string& why) { throw Error(ErrorKind::NotSphericallyHomogeneous, why); };

  std::map<Index, double> omega, cond, pot;
  std::map<Index, std::size_t> children;
  for (Vertex x = 0; x < n; ++x) {
    const Index d = depth[x];
    std::size_t kids = 0;
    for (const auto& nb : g.neighbors(x)) {
      if (depth[nb.vertex] == d + 1) {
        ++kids;
        auto [it, inserted] = cond.emplace(d, nb.conductance);
        if (!inserted && it->second != nb.conductance) fail("conductance varies on sphere " + std::to_string(d));
      }
    }
    auto check = [&](std::map<Index, double>& m, double v, const char* what) {
      auto [it, inserted] = m.emplace(d, v);
      if (!inserted && it->second != v) fail(std::string(what) + " varies on sphere " + std::to_string(d));
    };
    check(omega, g.omega(x), "omega");
    check(pot, g.potential(x), "potential");
    if (d < max_depth) {
      auto [it, inserted] = children.emplace(d, kids);
      if (!inserted && it->second != kids) fail("branching varies on sphere " + std::to_string(d));
    } else if (kids != 0) {
      fail("leaf depth mismatch");
    }
  }
  std::size_t N = children.empty() ? 1 : children.begin()->second;
  for (auto& [d, k] : children) {
    if (k != N) fail("branching differs between spheres");
  }
  if (max_depth < 2) throw Error(ErrorKind::HorizonTooSmall, "tree depth must be at least 2");

  std::vector<double> om, cs, ps;
  for (Index d = 0; d <= max_depth; ++d) {
    om.push_back(omega.at(d));
    ps.push_back(pot.at(d));
    if (d < max_depth) cs.push_back(cond.at(d));
  }
  TreeSpec tree;
  tree.branching = static_cast<int>(N);
  tree.omega = Sequence::table(om);
  tree.conductance = Sequence::table(cs);
  if (g.has_potential()) tree.potential = Sequence::table(ps);
  tree.max_depth = max_depth;
  return radial_reduce(tree);
}

}  // namespace graphesa
