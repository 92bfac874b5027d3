#include "graphesa/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "graphesa/error.hpp"

namespace graphesa {

namespace {

void check_domain(const WeightedGraph& g, std::span<const double> f, const char* what) {
  if (f.size() != g.size()) {
    throw Error(ErrorKind::DomainMismatch, std::string(what) + " has " + std::to_string(f.size()) +
                                               " values for " + std::to_string(g.size()) + " vertices");
  }
}

void check_potential(const WeightedGraph& g, std::span<const double> potential) {
  if (!potential.empty()) check_domain(g, potential, "potential");
}

// Sum of two leading terms; nullopt when they cancel.
std::optional<Growth> add_growth(const std::optional<Growth>& x, const std::optional<Growth>& y) {
  if (!x || !y) return std::nullopt;
  if (x->scale == 0.0) return Growth{y->scale, y->ratio, y->power, false};
  if (y->scale == 0.0) return Growth{x->scale, x->ratio, x->power, false};
  const int cmp = x->compare_order(*y);
  if (cmp > 0) return Growth{x->scale, x->ratio, x->power, false};
  if (cmp < 0) return Growth{y->scale, y->ratio, y->power, false};
  const double s = x->scale + y->scale;
  if (std::abs(s) <= 1e-12 * (std::abs(x->scale) + std::abs(y->scale))) return std::nullopt;
  return Growth{s, x->ratio, x->power, false};
}

}  // namespace

VertexFunction apply_laplacian(const WeightedGraph& g, std::span<const double> f) {
  check_domain(g, f, "function");
  VertexFunction out(g.size(), 0.0);
  for (Vertex x = 0; x < g.size(); ++x) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(x)) acc += nb.conductance * (f[x] - f[nb.vertex]);
    const double w = g.omega(x);
    out[x] = acc / (w * w);
  }
  return out;
}

VertexFunction apply_schrodinger(const WeightedGraph& g, std::span<const double> potential,
                                 std::span<const double> f) {
  check_potential(g, potential);
  VertexFunction out = apply_laplacian(g, f);
  if (!potential.empty()) {
    for (Vertex x = 0; x < g.size(); ++x) out[x] += potential[x] * f[x];
  }
  return out;
}

VertexFunction apply_schrodinger(const WeightedGraph& g, std::span<const double> f) {
  return apply_schrodinger(g, g.potentials(), f);
}

double quadratic_form(const WeightedGraph& g, std::span<const double> f) {
  check_domain(g, f, "function");
  double q = 0.0;
  for (const auto& e : g.edges()) {
    const double d = f[e.u] - f[e.v];
    q += e.conductance * d * d;
  }
  for (Vertex x = 0; x < g.size(); ++x) {
    const double w = g.omega(x);
    q += w * w * f[x] * f[x];
  }
  return q;
}

double inner_product_omega(const WeightedGraph& g, std::span<const double> f, std::span<const double> h) {
  check_domain(g, f, "function");
  check_domain(g, h, "function");
  double acc = 0.0;
  for (Vertex x = 0; x < g.size(); ++x) {
    const double w = g.omega(x);
    acc += w * w * f[x] * h[x];
  }
  return acc;
}

double norm_omega(const WeightedGraph& g, std::span<const double> f) {
  return std::sqrt(inner_product_omega(g, f, f));
}

VertexFunction GaugedOperator::apply(std::span<const double> f) const {
  return apply_schrodinger(graph, gauge_potential, f);
}

GaugedOperator gauge_transform(const WeightedGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    edges.push_back({e.u, e.v, e.conductance / (g.omega(e.u) * g.omega(e.v))});
  }
  const std::vector<double> ones(g.size(), 1.0);
  WeightedGraph unit(ones, edges);
  // W = -(1/omega) Delta_{1,a} omega
  const VertexFunction lap = apply_laplacian(unit, g.omegas());
  std::vector<double> w(g.size());
  for (Vertex x = 0; x < g.size(); ++x) w[x] = -lap[x] / g.omega(x);
  std::vector<double> total = w;
  for (Vertex x = 0; x < g.size(); ++x) total[x] += g.potential(x);
  return GaugedOperator{WeightedGraph(ones, std::move(edges), std::move(total)), std::move(w)};
}

EndFamily gauge_transform(const EndFamily& end) {
  if (end.gauge() == Gauge::Gauged) return end;
  const Sequence c = end.edge();
  const Sequence omega = end.omega();
  const auto raw_w = end.potential();

  std::optional<Growth> a_growth;
  if (c.growth() && omega.growth()) {
    a_growth = c.growth()->over(omega.growth()->times(omega.growth()->shifted(-1)));
  }
  std::optional<Index> max_index;
  if (c.max_index() || omega.max_index()) {
    max_index = std::min(c.max_index().value_or(INT64_MAX), omega.max_index().value_or(INT64_MAX));
  }
  Sequence a = Sequence::derived([c, omega](Index n) { return c(n) / (omega(n - 1) * omega(n)); }, a_growth,
                                 "c/(omega omega)", max_index);

  // Leading term of the gauge potential is available in closed form when
  // both omega and a are pure geometric sequences:
  //   W_n = -a_n [r_a (1 - r_w) + (1 - 1/r_w)].
  std::optional<Growth> w_growth;
  const auto& gw = omega.growth();
  if (a_growth && gw && a_growth->exact && gw->exact && a_growth->power == 0.0 && gw->power == 0.0) {
    const double k = -(a_growth->ratio * (1.0 - gw->ratio) + (1.0 - 1.0 / gw->ratio));
    w_growth = Growth{a_growth->scale * k, a_growth->ratio, 0.0, false};
    if (raw_w) w_growth = add_growth(w_growth, raw_w->growth());
  }
  std::optional<Index> w_max;
  if (max_index) w_max = *max_index - 1;
  Sequence w = Sequence::derived(
      [a, omega, raw_w](Index n) {
        const double wn = omega(n);
        double lap = a(n + 1) * (wn - omega(n + 1));
        if (n > 0) lap += a(n) * (wn - omega(n - 1));
        return -lap / wn + (raw_w ? (*raw_w)(n) : 0.0);
      },
      w_growth, "gauge potential", w_max);
  return EndFamily::gauged(std::move(a), std::move(w), end.horizon(),
                           end.name().empty() ? std::string("gauged") : end.name() + " (gauged)");
}

double gauge_potential_bracket(const EndFamily& raw, Index n) {
  if (raw.gauge() != Gauge::Raw) throw Error(ErrorKind::InvalidFamily, "bracket formula needs a raw end");
  const auto& c = raw.edge();
  const auto& w = raw.omega();
  const double wn = w(n);
  double bracket = c(n + 1) * (1.0 / wn - 1.0 / w(n + 1));
  if (n > 0) bracket += c(n) * (1.0 / wn - 1.0 / w(n - 1));
  return bracket / wn + raw.potential_at(n);
}

VertexFunction conjugated_laplacian(const WeightedGraph& g, std::span<const double> f) {
  check_domain(g, f, "function");
  VertexFunction scaled(f.begin(), f.end());
  for (Vertex x = 0; x < g.size(); ++x) scaled[x] /= g.omega(x);
  VertexFunction out = apply_laplacian(g, scaled);
  for (Vertex x = 0; x < g.size(); ++x) out[x] *= g.omega(x);
  return out;
}

GroundStateCheck ground_state_identity(const WeightedGraph& g, std::span<const double> potential,
                                       std::span<const double> v, std::span<const double> f, double tol) {
  check_domain(g, v, "v");
  check_domain(g, f, "f");
  check_potential(g, potential);
  const VertexFunction hv = apply_schrodinger(g, potential, v);
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  for (Vertex x = 0; x < g.size(); ++x) {
    if (f[x] == 0.0) continue;
    double row = 0.0;
    for (const auto& nb : g.neighbors(x)) row += nb.conductance;
    const double w2 = g.omega(x) * g.omega(x);
    row = row / w2 + (potential.empty() ? 0.0 : std::abs(potential[x]));
    if (std::abs(hv[x]) > tol * row * std::max(vmax, 1e-300)) {
      throw Error(ErrorKind::NotAKernelElement, "H v does not vanish at vertex " + std::to_string(x));
    }
  }
  VertexFunction fv(g.size());
  for (Vertex x = 0; x < g.size(); ++x) fv[x] = f[x] * v[x];
  const VertexFunction hfv = apply_schrodinger(g, potential, fv);
  GroundStateCheck out;
  for (Vertex x = 0; x < g.size(); ++x) {
    const double w2 = g.omega(x) * g.omega(x);
    const double term = w2 * fv[x] * hfv[x];
    out.lhs += term;
    out.scale += std::abs(term);
  }
  for (const auto& e : g.edges()) {
    const double d = f[e.u] - f[e.v];
    const double term = e.conductance * v[e.u] * v[e.v] * d * d;
    out.rhs += term;
    out.scale += std::abs(term);
  }
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

double ground_state_identity_residual(const WeightedGraph& g, std::span<const double> potential,
                                      std::span<const double> v, std::span<const double> f) {
  return ground_state_identity(g, potential, v, f).residual;
}

VertexFunction kernel_extension(const WeightedGraph& g, std::span<const double> potential,
                                std::span<const Vertex> support, std::span<const double> values) {
  check_domain(g, values, "values");
  check_potential(g, potential);
  std::vector<std::ptrdiff_t> slot(g.size(), -1);
  for (std::size_t i = 0; i < support.size(); ++i) {
    g.check_vertex(support[i]);
    slot[support[i]] = static_cast<std::ptrdiff_t>(i);
  }
  const auto m = static_cast<Eigen::Index>(support.size());
  VertexFunction v(values.begin(), values.end());
  if (m == 0) return v;
  // omega_x^2 (H v)(x) = sum_y c (v_x - v_y) + omega_x^2 W_x v_x = 0 on the support.
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (std::size_t i = 0; i < support.size(); ++i) {
    const Vertex x = support[i];
    const double w2 = g.omega(x) * g.omega(x);
    double diag = potential.empty() ? 0.0 : w2 * potential[x];
    for (const auto& nb : g.neighbors(x)) {
      diag += nb.conductance;
      if (slot[nb.vertex] >= 0) {
        trips.emplace_back(static_cast<Eigen::Index>(i), slot[nb.vertex], -nb.conductance);
      } else {
        rhs[static_cast<Eigen::Index>(i)] += nb.conductance * values[nb.vertex];
      }
    }
    trips.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), diag);
  }
  Eigen::SparseMatrix<double> mat(m, m);
  mat.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(mat);
  if (lu.info() != Eigen::Success) throw Error(ErrorKind::SolveFailure, "restricted kernel system is singular");
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !sol.allFinite()) {
    throw Error(ErrorKind::SolveFailure, "restricted kernel system could not be solved");
  }
  for (std::size_t i = 0; i < support.size(); ++i) v[support[i]] = sol[static_cast<Eigen::Index>(i)];
  return v;
}

Eigen::MatrixXd dense_operator(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Vertex x = 0; x < g.size(); ++x) {
    const double w2 = g.omega(x) * g.omega(x);
    const auto i = static_cast<Eigen::Index>(x);
    for (const auto& nb : g.neighbors(x)) {
      m(i, i) += nb.conductance / w2;
      m(i, static_cast<Eigen::Index>(nb.vertex)) -= nb.conductance / w2;
    }
    m(i, i) += g.potential(x);
  }
  return m;
}

}  // namespace graphesa
