#include "graphesa/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "graphesa/error.hpp"

namespace graphesa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-12;
constexpr int kMaxInverseIterations = 500;

bool close_ratio(double a, double b) { return std::abs(a - b) <= kTieTol * std::max(std::abs(a), std::abs(b)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

/// Leading growth of D(n) = sum_{m > n} p(m).
std::optional<Growth> distance_growth(const std::optional<Growth>& p) {
  if (!p || p->scale <= 0.0) return std::nullopt;
  if (p->ratio < 1.0 && !close_ratio(p->ratio, 1.0)) {
    return Growth{p->scale * p->ratio / (1.0 - p->ratio), p->ratio, p->power, p->exact && p->power == 0.0};
  }
  if (close_ratio(p->ratio, 1.0) && p->power < -1.0) {
    return Growth{p->scale / (-p->power - 1.0), 1.0, p->power + 1.0, false};
  }
  return std::nullopt;
}

TailBehaviour tail_of(const std::optional<Growth>& t, const std::optional<Sequence>& potential, std::string& reason) {
  if (!t) {
    reason = "no asymptotic law for the distance to the boundary";
    return TailBehaviour::Undecided;
  }
  if (!potential) {
    reason = t->bounded() ? "threshold is bounded and W = 0" : "threshold grows while W = 0";
    return t->bounded() ? TailBehaviour::Bounded : TailBehaviour::Unbounded;
  }
  const auto& w = potential->growth();
  if (!w) {
    reason = "potential has no declared growth";
    return TailBehaviour::Undecided;
  }
  if (w->scale == 0.0) {
    reason = t->bounded() ? "threshold is bounded and W vanishes" : "threshold grows while W vanishes";
    return t->bounded() ? TailBehaviour::Bounded : TailBehaviour::Unbounded;
  }
  const int cmp = w->compare_order(*t);
  if (cmp > 0) {
    reason = w->scale > 0.0 ? "W dominates the threshold" : "W tends to -infinity faster than the threshold";
    return w->scale > 0.0 ? TailBehaviour::Bounded : TailBehaviour::Unbounded;
  }
  if (cmp < 0) {
    if (!t->bounded()) {
      reason = "threshold dominates W";
      return TailBehaviour::Unbounded;
    }
    const bool below = w->scale > 0.0 || w->bounded();
    reason = below ? "threshold and W both bounded below" : "W unbounded below";
    return below ? TailBehaviour::Bounded : TailBehaviour::Unbounded;
  }
  const double diff = t->scale - w->scale;
  if (std::abs(diff) <= kTieTol * std::max(std::abs(t->scale), std::abs(w->scale))) {
    if (t->exact && w->exact) {
      reason = "W equals the threshold exactly";
      return TailBehaviour::Bounded;
    }
    reason = "W and the threshold share their leading term";
    return TailBehaviour::Undecided;
  }
  if (diff < 0.0) {
    reason = "W has the larger leading coefficient";
    return TailBehaviour::Bounded;
  }
  reason = t->bounded() ? "threshold is bounded" : "threshold has the larger leading coefficient";
  return t->bounded() ? TailBehaviour::Bounded : TailBehaviour::Unbounded;
}

struct Context {
  const ClassifyOptions& options;
  Verdict& verdict;
};

RuleOutcome disabled_outcome(Rule r) {
  RuleOutcome o;
  o.rule = r;
  o.enabled = false;
  o.detail = "disabled";
  return o;
}

bool end_has_volume(const EndFamily& end, Index horizon) {
  return end_volume(end, horizon).status == SeriesStatus::Converges;
}

// --- rule 1 ---------------------------------------------------------------

RuleOutcome rule_non_complete(const EndFamily& end, Context& ctx) {
  RuleOutcome o{Rule::ThmNonComplete, true, false, std::nullopt, {}};
  if (end.gauge() != Gauge::Raw || end.potential()) {
    o.detail = "applies to the Laplacian without potential";
    return o;
  }
  o.applicable = true;
  const auto comp = end_completeness(end, MetricScheme::InvSqrtC, ctx.options.series_horizon);
  const auto vol = end_volume(end, ctx.options.series_horizon);
  ctx.verdict.completeness = comp;
  ctx.verdict.volume = vol;
  if (comp.status != Completeness::NonComplete) {
    o.detail = comp.status == Completeness::Complete ? "end is complete for c^{-1/2}" : "completeness undecided";
  } else if (vol.status != SeriesStatus::Converges) {
    o.detail = "sum of omega^2 not shown finite";
  } else {
    o.conclusion = Status::NotESA;
    o.detail = "non-complete for c^{-1/2} with sum omega^2 < inf (f = 1)";
  }
  return o;
}

RuleOutcome rule_non_complete(const TreeSpec& tree, Context& ctx) {
  RuleOutcome o{Rule::ThmNonComplete, true, false, std::nullopt, {}};
  if (tree.potential) {
    o.detail = "applies to the Laplacian without potential";
    return o;
  }
  o.applicable = true;
  const auto comp = end_completeness(tree_ray(tree, tree.max_depth), MetricScheme::InvSqrtC,
                                     ctx.options.series_horizon);
  const auto vol = tree_volume(tree, ctx.options.series_horizon);
  ctx.verdict.completeness = comp;
  ctx.verdict.volume = vol;
  if (comp.status != Completeness::NonComplete) {
    o.detail = comp.status == Completeness::Complete ? "tree is complete for c^{-1/2}" : "completeness undecided";
  } else if (vol.status != SeriesStatus::Converges) {
    o.detail = "sum of N^n omega_n^2 not shown finite";
  } else {
    o.conclusion = Status::NotESA;
    o.detail = "non-complete for c^{-1/2} with sum N^n omega_n^2 < inf (f = 1)";
  }
  return o;
}

RuleOutcome rule_non_complete(const StarLikeSpec& spec, Context& ctx) {
  RuleOutcome o{Rule::ThmNonComplete, true, false, std::nullopt, {}};
  const bool laplacian = !spec.core.has_potential() &&
                         std::all_of(spec.ends.begin(), spec.ends.end(), [](const EndAttachment& e) {
                           return e.end.gauge() == Gauge::Raw && !e.end.potential();
                         });
  if (!laplacian) {
    o.detail = "applies to the Laplacian without potential";
    return o;
  }
  o.applicable = true;
  for (std::size_t alpha = 0; alpha < spec.ends.size(); ++alpha) {
    const auto& end = spec.ends[alpha].end;
    if (end_completeness(end, MetricScheme::InvSqrtC, ctx.options.series_horizon).status ==
            Completeness::NonComplete &&
        end_has_volume(end, ctx.options.series_horizon)) {
      o.conclusion = Status::NotESA;
      o.detail = "end " + std::to_string(alpha) + " is non-complete with finite volume";
      return o;
    }
  }
  o.detail = "no end is both non-complete and of finite volume";
  return o;
}

// --- rule 2 ---------------------------------------------------------------

SeriesTest inverse_series(const EndFamily& end, Index horizon) {
  const EndFamily g = gauge_transform(end);
  const Sequence a = g.edge();
  std::optional<Growth> growth;
  if (a.growth()) growth = a.growth()->pow(-1.0);
  return series_test(Sequence::derived([a](Index n) { return 1.0 / a(n); }, growth, "1/a", a.max_index()), 1,
                     horizon);
}

RuleOutcome rule_series(std::span<const EndFamily* const> ends, Context& ctx) {
  RuleOutcome o{Rule::ThmSeries, true, true, std::nullopt, {}};
  for (std::size_t alpha = 0; alpha < ends.size(); ++alpha) {
    const auto st = inverse_series(*ends[alpha], ctx.options.series_horizon);
    if (st.status != SeriesStatus::Diverges) {
      o.detail = "sum of 1/a " + std::string(st.status == SeriesStatus::Converges ? "converges" : "undecided") +
                 " on end " + std::to_string(alpha);
      return o;
    }
  }
  o.conclusion = Status::ESA;
  o.detail = "sum of 1/a diverges on every end";
  return o;
}

// --- rule 3 ---------------------------------------------------------------

RuleOutcome rule_growth(const EndFamily& end, std::optional<Sequence> potential, std::size_t degree, Context& ctx) {
  RuleOutcome o{Rule::ThmAgmonGrowth, true, false, std::nullopt, {}};
  const auto comp = end_completeness(end, MetricScheme::MinOmegaOverSqrtC, ctx.options.series_horizon);
  if (comp.status != Completeness::NonComplete) {
    o.detail = "not shown non-complete for min(omega)/sqrt(c)";
    return o;
  }
  o.applicable = true;
  const GrowthMargin m = growth_condition_margin(end, potential, MetricScheme::MinOmegaOverSqrtC, degree);
  ctx.verdict.growth = m;
  if (m.satisfied) {
    o.conclusion = Status::ESA;
    o.detail = "W >= N/(2D^2) - M with M = " + fmt(m.margin) + " (" + m.reason + ")";
  } else {
    o.detail = "growth condition fails: " + m.reason;
  }
  return o;
}

RuleOutcome rule_growth(const StarLikeSpec& spec, Context& ctx) {
  RuleOutcome o{Rule::ThmAgmonGrowth, true, false, std::nullopt, {}};
  const std::size_t degree = degree_bound(build_truncation(spec, 2));
  bool any_boundary = false;
  for (std::size_t alpha = 0; alpha < spec.ends.size(); ++alpha) {
    const auto& end = spec.ends[alpha].end;
    const auto comp = end_completeness(end, MetricScheme::MinOmegaOverSqrtC, ctx.options.series_horizon);
    if (comp.status == Completeness::Inconclusive) {
      o.detail = "completeness of end " + std::to_string(alpha) + " undecided";
      return o;
    }
    if (comp.status == Completeness::Complete) {
      // Far along a complete end D grows, so W only has to stay bounded below.
      const auto& w = end.potential();
      const bool below = !w || (w->growth() && (w->growth()->scale >= 0.0 || w->growth()->bounded()));
      if (!below) {
        o.applicable = true;
        o.detail = "W not shown bounded below on complete end " + std::to_string(alpha);
        return o;
      }
      continue;
    }
    any_boundary = true;
    const GrowthMargin m = growth_condition_margin(end, end.potential(), MetricScheme::MinOmegaOverSqrtC, degree);
    if (!m.satisfied) {
      o.applicable = true;
      o.detail = "growth condition fails on end " + std::to_string(alpha) + ": " + m.reason;
      return o;
    }
  }
  if (!any_boundary) {
    o.detail = "no end is non-complete for min(omega)/sqrt(c)";
    return o;
  }
  o.applicable = true;
  o.conclusion = Status::ESA;
  o.detail = "growth condition holds on every non-complete end, W bounded below elsewhere";
  return o;
}

// --- rule 4 ---------------------------------------------------------------

RuleOutcome rule_weyl(std::span<const EndFamily* const> ends, Context& ctx) {
  RuleOutcome o{Rule::WeylNumeric, true, true, std::nullopt, {}};
  int index = 0;
  std::vector<std::size_t> undecided;
  for (std::size_t alpha = 0; alpha < ends.size(); ++alpha) {
    ctx.verdict.ends.push_back(classify_end(*ends[alpha], ctx.options.lambda, ctx.options.weyl));
    const auto& c = ctx.verdict.ends.back();
    if (c.dimE) {
      index += *c.dimE - 1;
    } else {
      undecided.push_back(alpha);
    }
  }
  if (!undecided.empty()) {
    o.detail = "borderline end(s):";
    for (auto a : undecided) o.detail += " " + std::to_string(a);
    o.detail += " (" + ctx.verdict.ends[undecided.front()].note + ")";
    return o;
  }
  ctx.verdict.deficiency = index;
  o.conclusion = index == 0 ? Status::ESA : Status::NotESA;
  o.detail = "deficiency index " + std::to_string(index);
  return o;
}

RuleOutcome rule_weyl(const TreeSpec& tree, Context& ctx) {
  RuleOutcome o{Rule::WeylNumeric, true, true, std::nullopt, {}};
  const RadialReduction rr = radial_reduce(tree);
  ctx.verdict.radial = rr;
  ctx.verdict.ends.push_back(classify_end(rr.family, ctx.options.lambda, ctx.options.weyl));
  const auto& c = ctx.verdict.ends.back();
  switch (c.status) {
    case EndStatus::LimitCircle:
      o.conclusion = Status::NotESA;
      o.detail = "radial sector is limit circle (" + c.note + ")";
      break;
    case EndStatus::LimitPoint:
      o.detail = "radial sector is limit point, which does not decide the full operator";
      ctx.verdict.caveats.push_back("radial sector is essentially self-adjoint; other sectors not examined");
      break;
    case EndStatus::Borderline:
      o.detail = "radial sector is borderline (" + c.note + ")";
      break;
  }
  return o;
}

void finish(Verdict& v) {
  for (const auto& o : v.trail) {
    if (!o.conclusion) continue;
    if (v.rule == Rule::None) {
      v.rule = o.rule;
      v.status = *o.conclusion;
    } else if (*o.conclusion != v.status) {
      v.conflict = true;
    }
  }
  if (v.conflict) {
    v.status = Status::Inconclusive;
    v.rule = Rule::None;
    v.caveats.push_back("rules disagree; see trail");
  }
}

template <class F>
void run(Rule r, Context& ctx, F&& f) {
  if (ctx.options.disabled.count(r)) {
    ctx.verdict.trail.push_back(disabled_outcome(r));
  } else {
    ctx.verdict.trail.push_back(f());
  }
}

}  // namespace

void CutoffParams::validate() const {
  if (!(eps > 0.0 && eps < rho && rho < 0.5 && R > 1.0)) {
    throw Error(ErrorKind::BadParams, "need 0 < eps < rho < 1/2 and R > 1");
  }
}

double cutoff_value(const CutoffParams& p, double u) {
  if (u <= p.eps) return 0.0;
  if (u <= p.rho) return p.rho * (u - p.eps) / (p.rho - p.eps);
  if (u <= 1.0) return u;
  if (u <= p.R) return 1.0;
  if (u <= p.R + 1.0) return p.R + 1.0 - u;
  return 0.0;
}

Cutoff agmon_cutoff(const CutoffParams& params, std::span<const double> D) {
  params.validate();
  Cutoff out;
  out.lipschitz = params.rho / (params.rho - params.eps);
  out.values.reserve(D.size());
  for (double d : D) {
    if (!(d > 0.0)) throw Error(ErrorKind::BadParams, "distances must be positive");
    out.values.push_back(cutoff_value(params, d));
  }
  return out;
}

AgmonReport agmon_inequality_check(const WeightedGraph& g, std::span<const double> potential,
                                   std::span<const double> D, double mu, std::span<const double> v,
                                   const CutoffParams& params, std::size_t degree) {
  if (D.size() != g.size() || v.size() != g.size() || (!potential.empty() && potential.size() != g.size())) {
    throw Error(ErrorKind::DomainMismatch, "D, v and W must be defined on every vertex");
  }
  const Cutoff f = agmon_cutoff(params, D);
  const double N = static_cast<double>(degree);
  AgmonReport r;
  r.mu = mu;
  r.horizon = static_cast<Index>(g.size()) - 1;
  double fv2 = 0.0;
  double v2 = 0.0;
  double c = kInf;
  for (Vertex x = 0; x < g.size(); ++x) {
    const double w2 = g.omega(x) * g.omega(x);
    const double vv = v[x] * v[x];
    v2 += w2 * vv;
    fv2 += w2 * f.values[x] * f.values[x] * vv;
    if (D[x] >= params.rho && D[x] <= params.R) r.annulus += w2 * vv;
    if (f.values[x] != 0.0 && v[x] != 0.0) {
      const double wx = potential.empty() ? 0.0 : potential[x];
      c = std::min(c, wx - mu - 0.5 * N * std::max(1.0 / (D[x] * D[x]), 1.0));
    }
  }
  r.c = std::isfinite(c) ? c : 0.0;
  r.annulus *= 0.5 * N;
  r.mass = r.c * fv2;
  r.lhs = r.annulus + r.mass;
  r.norm_v = std::sqrt(v2);
  r.rhs = N * params.rho * params.rho / (2.0 * (params.rho - params.eps) * (params.rho - params.eps)) * v2;
  r.holds = r.lhs <= r.rhs + 1e-12 * std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-300});
  return r;
}

AgmonReport agmon_inequality_check(const EndFamily& end, double lambda, const CutoffParams& params,
                                   Index horizon) {
  params.validate();
  if (horizon < 2) throw Error(ErrorKind::HorizonTooSmall, "horizon must be at least 2");
  if (end.gauge() != Gauge::Raw) throw Error(ErrorKind::InvalidFamily, "Agmon check expects raw weights");
  const std::vector<double> D = boundary_distances(end, MetricScheme::MinOmegaOverSqrtC, horizon);
  const EndFamily g = gauge_transform(end);

  // Gauged operator on 0..h-1 with u_h = 0.
  const auto m = static_cast<Eigen::Index>(horizon);
  std::vector<Eigen::Triplet<double>> entries;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Index n = i;
    const double diag = (n > 0 ? g.edge()(n) : 0.0) + g.edge()(n + 1) + g.potential_at(n) - lambda;
    entries.emplace_back(i, i, diag);
    if (i + 1 < m) {
      entries.emplace_back(i, i + 1, -g.edge()(n + 1));
      entries.emplace_back(i + 1, i, -g.edge()(n + 1));
    }
  }
  Eigen::SparseMatrix<double> K(m, m);
  K.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::NaturalOrdering<int>> ldlt(K);
  if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::NoKernelCandidate, "shifted operator is singular");

  Eigen::VectorXd x = Eigen::VectorXd::Ones(m).normalized();
  double mu = kInf;
  bool settled = false;
  for (int it = 0; it < kMaxInverseIterations; ++it) {
    Eigen::VectorXd y = ldlt.solve(x);
    const double xy = x.dot(y);
    if (!std::isfinite(xy) || xy == 0.0) break;
    const double next = lambda + 1.0 / xy;
    x = y.normalized();
    if (std::abs(next - mu) <= 1e-13 * std::max(1.0, std::abs(next))) {
      mu = next;
      settled = true;
      break;
    }
    mu = next;
  }
  if (!settled) throw Error(ErrorKind::NoKernelCandidate, "inverse iteration did not settle");

  const WeightedGraph raw = build_truncation(end, horizon);
  std::vector<double> v(raw.size(), 0.0);
  std::vector<double> w(raw.size(), 0.0);
  for (Index n = 0; n <= horizon; ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (n < horizon) v[i] = x[static_cast<Eigen::Index>(n)] / raw.omega(i);
    w[i] = end.potential_at(n);
  }
  AgmonReport r = agmon_inequality_check(raw, w, D, mu, v, params, 2);
  r.horizon = horizon;
  return r;
}

std::optional<Growth> growth_threshold_growth(const EndFamily& end, MetricScheme scheme, std::size_t degree) {
  const auto d = distance_growth(end_edge_lengths(end, scheme).growth());
  if (!d) return std::nullopt;
  return d->pow(-2.0).scaled(0.5 * static_cast<double>(degree));
}

double growth_threshold(const EndFamily& end, MetricScheme scheme, Index n, std::size_t degree) {
  const double d = boundary_distance(end, scheme, n);
  return 0.5 * static_cast<double>(degree) / (d * d);
}

GrowthMargin growth_condition_margin(const EndFamily& end, const std::optional<Sequence>& potential,
                                     MetricScheme scheme, std::size_t degree) {
  const auto comp = end_completeness(end, scheme);
  if (comp.status == Completeness::Complete) {
    throw Error(ErrorKind::EndIsComplete, "growth condition needs a metric boundary");
  }
  if (comp.status == Completeness::Inconclusive) {
    throw Error(ErrorKind::PreconditionsNotMet, "completeness of the end could not be decided");
  }
  GrowthMargin out;
  const auto t = growth_threshold_growth(end, scheme, degree);
  out.tail = tail_of(t, potential, out.reason);

  Index h = end.horizon();
  if (potential && potential->max_index()) h = std::min(h, *potential->max_index());
  const auto w = potential ? potential->growth() : std::nullopt;
  const bool exact_tie = out.tail == TailBehaviour::Bounded && t && w && t->exact && w->exact &&
                         t->compare_order(*w) == 0 &&
                         std::abs(t->scale - w->scale) <= kTieTol * std::max(t->scale, std::abs(w->scale));
  out.margin = -kInf;
  if (exact_tie) {
    out.margin = 0.0;
  } else {
    const std::vector<double> D = boundary_distances(end, scheme, h);
    for (Index n = 0; n <= h; ++n) {
      const auto i = static_cast<std::size_t>(n);
      const double value = 0.5 * static_cast<double>(degree) / (D[i] * D[i]) - (potential ? (*potential)(n) : 0.0);
      if (!std::isfinite(value)) break;
      if (value > out.margin) {
        out.margin = value;
        out.argmax = n;
      }
    }
  }
  if (out.tail == TailBehaviour::Unbounded) out.margin = kInf;
  out.satisfied = out.tail == TailBehaviour::Bounded;
  return out;
}

GrowthMargin growth_condition_margin(const EndFamily& end, MetricScheme scheme, std::size_t degree) {
  return growth_condition_margin(end, end.potential(), scheme, degree);
}

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::ESA: return "ESA";
    case Status::NotESA: return "NotESA";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view to_string(Rule rule) noexcept {
  switch (rule) {
    case Rule::ThmNonComplete: return "ThmNonComplete";
    case Rule::ThmSeries: return "ThmSeries";
    case Rule::ThmAgmonGrowth: return "ThmAgmonGrowth";
    case Rule::WeylNumeric: return "WeylNumeric";
    case Rule::None: return "None";
  }
  return "None";
}

Verdict classify(const Family& family, const ClassifyOptions& options) {
  Verdict v;
  Context ctx{options, v};
  if (const auto* end = std::get_if<EndFamily>(&family)) {
    const EndFamily* ends[] = {end};
    run(Rule::ThmNonComplete, ctx, [&] { return rule_non_complete(*end, ctx); });
    run(Rule::ThmSeries, ctx, [&] { return rule_series(ends, ctx); });
    run(Rule::ThmAgmonGrowth, ctx, [&] { return rule_growth(*end, end->potential(), 2, ctx); });
    run(Rule::WeylNumeric, ctx, [&] { return rule_weyl(ends, ctx); });
  } else if (const auto* tree = std::get_if<TreeSpec>(&family)) {
    run(Rule::ThmNonComplete, ctx, [&] { return rule_non_complete(*tree, ctx); });
    run(Rule::ThmSeries, ctx, [] {
      return RuleOutcome{Rule::ThmSeries, true, false, std::nullopt, "applies to star-like graphs"};
    });
    run(Rule::ThmAgmonGrowth, ctx, [&] {
      return rule_growth(tree_ray(*tree, tree->max_depth), tree->potential,
                         static_cast<std::size_t>(tree->branching) + 1, ctx);
    });
    run(Rule::WeylNumeric, ctx, [&] { return rule_weyl(*tree, ctx); });
  } else {
    const auto& spec = std::get<StarLikeSpec>(family);
    std::vector<const EndFamily*> ends;
    for (const auto& e : spec.ends) ends.push_back(&e.end);
    run(Rule::ThmNonComplete, ctx, [&] { return rule_non_complete(spec, ctx); });
    run(Rule::ThmSeries, ctx, [&] { return rule_series(ends, ctx); });
    run(Rule::ThmAgmonGrowth, ctx, [&] { return rule_growth(spec, ctx); });
    run(Rule::WeylNumeric, ctx, [&] { return rule_weyl(ends, ctx); });
  }
  finish(v);
  if (std::holds_alternative<TreeSpec>(family) && v.rule == Rule::WeylNumeric) v.radial_sector = true;
  return v;
}

}  // namespace graphesa
