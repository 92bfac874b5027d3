#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphesa/graph.hpp"
#include "graphesa/metric.hpp"
#include "graphesa/operators.hpp"
#include "graphesa/weyl.hpp"

namespace graphesa {

struct CutoffParams {
  double rho = 0.25;
  double eps = 0.1;
  double R = 10.0;

  /// Throws BadParams unless 0 < eps < rho < 1/2 and R > 1.
  void validate() const;
};

/// Piecewise affine F_eps: 0, steep ramp on [eps, rho], identity up to 1,
/// 1 up to R, ramp down to 0 at R + 1.
double cutoff_value(const CutoffParams& params, double u);

struct Cutoff {
  VertexFunction values;
  /// rho / (rho - eps), the slope of the steep piece.
  double lipschitz = 1.0;
};

Cutoff agmon_cutoff(const CutoffParams& params, std::span<const double> D);

struct AgmonReport {
  /// N/2 sum_{rho <= D <= R} omega^2 v^2.
  double annulus = 0.0;
  /// c ||f_eps v||^2.
  double mass = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double c = 0.0;
  double mu = 0.0;
  double norm_v = 0.0;
  bool holds = true;
  Index horizon = 0;
};

/// Both sides of the Agmon estimate on a truncation, for a given kernel
/// candidate v of (H - mu) and distances D.
AgmonReport agmon_inequality_check(const WeightedGraph& g, std::span<const double> potential,
                                   std::span<const double> D, double mu, std::span<const double> v,
                                   const CutoffParams& params, std::size_t degree);

/// Same, with v the eigenvector of the Dirichlet truncation nearest to
/// lambda (mu is its eigenvalue). Throws NoKernelCandidate if inverse
/// iteration does not settle and EndIsComplete if the end has no boundary.
AgmonReport agmon_inequality_check(const EndFamily& end, double lambda, const CutoffParams& params,
                                   Index horizon);

/// N / (2 D(n)^2).
double growth_threshold(const EndFamily& end, MetricScheme scheme, Index n, std::size_t degree = 2);
/// Asymptotic growth of N / (2 D(n)^2), exact for exact geometric edge lengths.
std::optional<Growth> growth_threshold_growth(const EndFamily& end, MetricScheme scheme, std::size_t degree = 2);

enum class TailBehaviour { Bounded, Unbounded, Undecided };

struct GrowthMargin {
  /// sup_n (N / (2 D(n)^2) - W_n) over the sampled range; +inf if the tail
  /// is unbounded.
  double margin = 0.0;
  bool satisfied = false;
  TailBehaviour tail = TailBehaviour::Undecided;
  Index argmax = 0;
  std::string reason;
};

/// Growth condition W >= N / (2 D^2) - M on one end. `potential` overrides
/// the end's own potential. Throws EndIsComplete.
GrowthMargin growth_condition_margin(const EndFamily& end, const std::optional<Sequence>& potential,
                                     MetricScheme scheme = MetricScheme::MinOmegaOverSqrtC,
                                     std::size_t degree = 2);
GrowthMargin growth_condition_margin(const EndFamily& end, MetricScheme scheme = MetricScheme::MinOmegaOverSqrtC,
                                     std::size_t degree = 2);

enum class Status { ESA, NotESA, Inconclusive };
enum class Rule { ThmNonComplete, ThmSeries, ThmAgmonGrowth, WeylNumeric, None };

std::string_view to_string(Status status) noexcept;
std::string_view to_string(Rule rule) noexcept;

struct RuleOutcome {
  Rule rule = Rule::None;
  bool enabled = true;
  bool applicable = false;
  std::optional<Status> conclusion;
  std::string detail;
};

struct ClassifyOptions {
  std::set<Rule> disabled;
  Complex lambda{0.0, 1.0};
  WeylOptions weyl;
  Index series_horizon = 1000;
};

struct Verdict {
  Status status = Status::Inconclusive;
  Rule rule = Rule::None;
  std::vector<RuleOutcome> trail;
  bool conflict = false;
  /// Tree verdicts reached through the radial sector alone.
  bool radial_sector = false;
  std::vector<std::string> caveats;

  std::optional<CompletenessVerdict> completeness;
  std::optional<SeriesTest> volume;
  std::optional<GrowthMargin> growth;
  std::vector<EndClassification> ends;
  std::optional<int> deficiency;
  std::optional<RadialReduction> radial;
};

Verdict classify(const Family& family, const ClassifyOptions& options = {});

}  // namespace graphesa
