#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphesa/graph.hpp"
#include "graphesa/metric.hpp"

namespace graphesa {

using Complex = std::complex<double>;

/// Maps (u_n, u_{n-1}) to (u_{n+1}, u_n) for
/// -a_{n,n+1} u_{n+1} + (a_{n-1,n} + a_{n,n+1} + W_n - lambda) u_n - a_{n-1,n} u_{n-1} = 0.
struct TransferStep {
  Index n = 1;
  Eigen::Matrix2cd matrix;
};

/// Raw ends are gauge-transformed first. Throws IndexOutOfRange for n < 1.
TransferStep transfer_matrix(const EndFamily& end, Complex lambda, Index n);

struct LimitTransfer {
  Eigen::Matrix2cd matrix;
  /// Sampled depths and the distance between consecutive samples.
  std::vector<Index> depths;
  std::vector<double> differences;
  bool certified = false;
};

/// Samples transfer matrices at n = 8, 16, 32, ... while the entries stay
/// finite. Convergence is certified when the sampled differences do not grow
/// (up to a 1e-12 noise floor) and the last one is below 1e-8.
LimitTransfer limit_transfer(const EndFamily& end, Complex lambda, Index max_depth = Index{1} << 20);

enum class Hyperbolicity { AllDecay, GrowthSubspace, NonHyperbolic };

struct HyperbolicResult {
  Hyperbolicity kind = Hyperbolicity::NonHyperbolic;
  int growth_dim = 0;
  std::array<Complex, 2> roots{};
  std::array<double, 2> moduli{};
};

/// Eigenvalue dichotomy of the limit matrix. Throws DecayNotCertified when
/// the perturbation is not certified to vanish.
HyperbolicResult hyperbolic_classify(const Eigen::Matrix2cd& A, bool decay_certified, double tol = 1e-9);

struct LyapunovEstimate {
  Index steps = 0;
  /// Per-step exponents, larger first, from the later window.
  std::array<double, 2> exponents{};
  std::array<double, 2> widths{};
  /// Exponents of n^kappa laws, used when the per-step exponents vanish.
  std::array<double, 2> poly_exponents{};
  std::array<double, 2> poly_widths{};
};

/// QR-stabilised transfer products from n = 1 over up to `steps` steps,
/// stopping early if coefficients stop being finite. Windows are
/// [steps/4, steps/2] and [steps/2, steps].
LyapunovEstimate lyapunov_estimate(const EndFamily& end, Complex lambda, Index steps = 10000);

enum class EndStatus { LimitPoint, LimitCircle, Borderline };
enum class EvidenceKind { SeriesTest, HyperbolicRoots, LyapunovEstimate };

struct EndClassification {
  EndStatus status = EndStatus::Borderline;
  std::optional<int> dimE;
  EvidenceKind evidence = EvidenceKind::LyapunovEstimate;
  std::optional<SeriesTest> series;
  std::optional<HyperbolicResult> hyperbolic;
  std::optional<LyapunovEstimate> lyapunov;
  std::string note;
};

struct WeylOptions {
  Index lyapunov_steps = 10000;
  Index series_horizon = 1000;
};

EndClassification classify_end(const EndFamily& end, Complex lambda = Complex(0.0, 1.0),
                               const WeylOptions& options = {});

/// u_0 .. u_horizon from the seed (u_0, u_1).
std::vector<Complex> solve_recurrence(const EndFamily& end, Complex lambda, std::array<Complex, 2> seed,
                                      Index horizon);

/// max_n |W_n a_{n-1,n} - W_1 a_{0,1}| / |W_1 a_{0,1}| with W_n = u_n v_{n-1} - u_{n-1} v_n
/// for given solutions. Throws DegenerateWronskian if W_1 = 0.
double wronskian_residual(const EndFamily& end, std::span<const Complex> u, std::span<const Complex> v);
/// Same, with both solutions generated from their seeds in 50-digit arithmetic.
double wronskian_residual(const EndFamily& end, Complex lambda, std::array<Complex, 2> seed_u,
                          std::array<Complex, 2> seed_v, Index horizon);

struct DeficiencyIndices {
  int n_plus = 0;
  int n_minus = 0;
  std::vector<EndClassification> per_end;
};

/// Sum over ends of dimE - 1. Throws BorderlineEnd listing undecided ends.
DeficiencyIndices deficiency_indices(const StarLikeSpec& spec, Complex lambda = Complex(0.0, 1.0),
                                     const WeylOptions& options = {});
DeficiencyIndices deficiency_indices(const EndFamily& end, Complex lambda = Complex(0.0, 1.0),
                                     const WeylOptions& options = {});

std::string_view to_string(EndStatus status) noexcept;
std::string_view to_string(Hyperbolicity kind) noexcept;

}  // namespace graphesa
