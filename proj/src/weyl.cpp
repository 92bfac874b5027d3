#include "graphesa/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_complex.hpp>

#include "graphesa/error.hpp"
#include "graphesa/operators.hpp"

namespace graphesa {

namespace {

constexpr Index kFirstSample = 8;
constexpr double kNoiseFloor = 1e-12;
constexpr double kCertifyTol = 1e-8;
constexpr double kSeparation = 10.0;
constexpr double kMinExponent = 1e-6;
constexpr Index kMinLyapunovSteps = 64;

// Growing and decaying solutions drift apart by ~50 digits over 50 steps of the dyadic ends.
using mp_complex = boost::multiprecision::cpp_complex_100;

struct Coefficients {
  double a_prev = 0.0;  // a_{n-1,n}
  double a_next = 0.0;  // a_{n,n+1}
  double w = 0.0;
};

Coefficients coefficients(const EndFamily& g, Index n) {
  return {g.edge()(n), g.edge()(n + 1), g.potential_at(n)};
}

bool finite(const Coefficients& c) {
  return std::isfinite(c.a_prev) && std::isfinite(c.a_next) && std::isfinite(c.w) && c.a_next > 0.0;
}

std::optional<Index> last_index(const EndFamily& g) {
  std::optional<Index> m;
  if (g.edge().max_index()) m = *g.edge().max_index() - 1;
  if (g.potential() && g.potential()->max_index()) {
    m = std::min(m.value_or(INT64_MAX), *g.potential()->max_index());
  }
  return m;
}

Eigen::Matrix2cd matrix_from(const Coefficients& c, Complex lambda) {
  Eigen::Matrix2cd m;
  m(0, 0) = (c.a_prev + c.a_next + c.w - lambda) / c.a_next;
  m(0, 1) = -c.a_prev / c.a_next;
  m(1, 0) = 1.0;
  m(1, 1) = 0.0;
  return m;
}

enum class Fate { Decays, NotL2, Unknown };

Fate fate_of(const LyapunovEstimate& e, int i) {
  const double g = e.exponents[i];
  const double sep = std::max(kSeparation * e.widths[i], kMinExponent);
  if (g < -sep) return Fate::Decays;
  if (g > sep) return Fate::NotL2;
  // Per-step exponent indistinguishable from 0: compare the n^kappa law with
  // the l^2 threshold kappa = -1/2.
  const double k = e.poly_exponents[i] + 0.5;
  const double ksep = kSeparation * e.poly_widths[i];
  if (k < -ksep) return Fate::Decays;
  if (k > ksep) return Fate::NotL2;
  return Fate::Unknown;
}

}  // namespace

std::string_view to_string(EndStatus status) noexcept {
  switch (status) {
    case EndStatus::LimitPoint: return "LimitPoint";
    case EndStatus::LimitCircle: return "LimitCircle";
    case EndStatus::Borderline: return "Borderline";
  }
  return "Borderline";
}

std::string_view to_string(Hyperbolicity kind) noexcept {
  switch (kind) {
    case Hyperbolicity::AllDecay: return "AllDecay";
    case Hyperbolicity::GrowthSubspace: return "GrowthSubspace";
    case Hyperbolicity::NonHyperbolic: return "NonHyperbolic";
  }
  return "NonHyperbolic";
}

TransferStep transfer_matrix(const EndFamily& end, Complex lambda, Index n) {
  if (n < 1) throw Error(ErrorKind::IndexOutOfRange, "transfer matrices start at n = 1");
  const EndFamily g = gauge_transform(end);
  const Coefficients c = coefficients(g, n);
  if (!(c.a_prev > 0.0) || !(c.a_next > 0.0)) {
    throw Error(ErrorKind::NonPositiveWeight, "edge weight is not positive at n = " + std::to_string(n));
  }
  return {n, matrix_from(c, lambda)};
}

LimitTransfer limit_transfer(const EndFamily& end, Complex lambda, Index max_depth) {
  const EndFamily g = gauge_transform(end);
  LimitTransfer out;
  const Index stop = std::min(max_depth, last_index(g).value_or(INT64_MAX));
  std::vector<Eigen::Matrix2cd> samples;
  for (Index n = kFirstSample; n <= stop; n *= 2) {
    Coefficients c;
    try {
      c = coefficients(g, n);
    } catch (const Error&) {
      break;
    }
    if (!finite(c)) break;
    const Eigen::Matrix2cd m = matrix_from(c, lambda);
    if (!m.allFinite()) break;
    samples.push_back(m);
    out.depths.push_back(n);
  }
  if (samples.empty()) return out;
  out.matrix = samples.back();
  for (std::size_t i = 1; i < samples.size(); ++i) {
    out.differences.push_back((samples[i] - samples[i - 1]).cwiseAbs().maxCoeff());
  }
  if (out.differences.size() >= 2 && out.differences.back() <= kCertifyTol) {
    out.certified = true;
    for (std::size_t i = 1; i < out.differences.size(); ++i) {
      if (out.differences[i] > std::max(out.differences[i - 1], kNoiseFloor)) out.certified = false;
    }
  }
  return out;
}

HyperbolicResult hyperbolic_classify(const Eigen::Matrix2cd& A, bool decay_certified, double tol) {
  if (!decay_certified) throw Error(ErrorKind::DecayNotCertified, "transfer matrices are not certified to converge");
  const Complex tr = A.trace();
  const Complex det = A.determinant();
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  // Stable root pair: the larger one from the sum with matching sign.
  Complex big = std::abs(tr + disc) >= std::abs(tr - disc) ? (tr + disc) / 2.0 : (tr - disc) / 2.0;
  Complex small = std::abs(big) > 0.0 ? det / big : Complex(0.0);
  HyperbolicResult r;
  r.roots = {big, small};
  r.moduli = {std::abs(big), std::abs(small)};
  bool near_one = false;
  for (double m : r.moduli) {
    if (std::abs(m - 1.0) <= tol) near_one = true;
    if (m > 1.0 + tol) ++r.growth_dim;
  }
  if (near_one) {
    r.kind = Hyperbolicity::NonHyperbolic;
  } else {
    r.kind = r.growth_dim == 0 ? Hyperbolicity::AllDecay : Hyperbolicity::GrowthSubspace;
  }
  return r;
}

LyapunovEstimate lyapunov_estimate(const EndFamily& end, Complex lambda, Index steps) {
  const EndFamily g = gauge_transform(end);
  const Index stop = std::min(steps, last_index(g).value_or(INT64_MAX));
  // A generic starting frame, so neither column starts inside an invariant line.
  Eigen::Matrix2cd q;
  const double t = 0.3;
  q << std::cos(t), -std::sin(t) * Complex(0.6, 0.8), std::sin(t), std::cos(t) * Complex(0.6, 0.8);
  std::vector<std::array<double, 2>> sums{{0.0, 0.0}};
  for (Index n = 1; n <= stop; ++n) {
    Coefficients c;
    try {
      c = coefficients(g, n);
    } catch (const Error&) {
      break;
    }
    if (!finite(c)) break;
    const Eigen::Matrix2cd m = matrix_from(c, lambda) * q;
    Eigen::Vector2cd c1 = m.col(0);
    Eigen::Vector2cd c2 = m.col(1);
    const double r11 = c1.norm();
    if (!(r11 > 0.0) || !std::isfinite(r11)) break;
    c1 /= r11;
    c2 -= c1.dot(c2) * c1;
    const double r22 = c2.norm();
    if (!(r22 > 0.0) || !std::isfinite(r22)) break;
    c2 /= r22;
    q.col(0) = c1;
    q.col(1) = c2;
    const auto& prev = sums.back();
    sums.push_back({prev[0] + std::log(r11), prev[1] + std::log(r22)});
  }
  LyapunovEstimate e;
  e.steps = static_cast<Index>(sums.size()) - 1;
  if (e.steps < 4) return e;
  const Index n1 = e.steps / 4;
  const Index n2 = e.steps / 2;
  const Index n3 = e.steps;
  const auto at = [&](Index n, int i) { return sums[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]; };
  for (int i = 0; i < 2; ++i) {
    const double ga = (at(n2, i) - at(n1, i)) / static_cast<double>(n2 - n1);
    const double gb = (at(n3, i) - at(n2, i)) / static_cast<double>(n3 - n2);
    const double ka = (at(n2, i) - at(n1, i)) / std::log(static_cast<double>(n2) / static_cast<double>(n1));
    const double kb = (at(n3, i) - at(n2, i)) / std::log(static_cast<double>(n3) / static_cast<double>(n2));
    e.exponents[static_cast<std::size_t>(i)] = gb;
    e.widths[static_cast<std::size_t>(i)] = std::abs(ga - gb);
    e.poly_exponents[static_cast<std::size_t>(i)] = kb;
    e.poly_widths[static_cast<std::size_t>(i)] = std::abs(ka - kb);
  }
  if (e.exponents[1] > e.exponents[0]) {
    std::swap(e.exponents[0], e.exponents[1]);
    std::swap(e.widths[0], e.widths[1]);
    std::swap(e.poly_exponents[0], e.poly_exponents[1]);
    std::swap(e.poly_widths[0], e.poly_widths[1]);
  }
  return e;
}

EndClassification classify_end(const EndFamily& end, Complex lambda, const WeylOptions& options) {
  const EndFamily g = gauge_transform(end);
  EndClassification out;

  const Sequence a = g.edge();
  std::optional<Growth> inv_growth;
  if (a.growth()) inv_growth = a.growth()->pow(-1.0);
  const Sequence inv = Sequence::derived([a](Index n) { return 1.0 / a(n); }, inv_growth, "1/a", a.max_index());
  const SeriesTest st = series_test(inv, 1, options.series_horizon);
  out.series = st;
  if (st.status == SeriesStatus::Diverges) {
    out.status = EndStatus::LimitPoint;
    out.dimE = 1;
    out.evidence = EvidenceKind::SeriesTest;
    out.note = "sum of 1/a diverges";
    return out;
  }

  const LimitTransfer lt = limit_transfer(g, lambda);
  if (lt.certified) {
    const HyperbolicResult h = hyperbolic_classify(lt.matrix, true);
    out.hyperbolic = h;
    out.evidence = EvidenceKind::HyperbolicRoots;
    switch (h.kind) {
      case Hyperbolicity::AllDecay:
        out.status = EndStatus::LimitCircle;
        out.dimE = 2;
        out.note = "both solutions decay exponentially";
        break;
      case Hyperbolicity::GrowthSubspace:
        if (h.growth_dim == 1) {
          out.status = EndStatus::LimitPoint;
          out.dimE = 1;
          out.note = "one growing and one decaying solution";
        } else {
          out.status = EndStatus::Borderline;
          out.note = "no decaying solution";
        }
        break;
      case Hyperbolicity::NonHyperbolic:
        out.status = EndStatus::Borderline;
        out.note = "characteristic root on the unit circle";
        break;
    }
    return out;
  }

  const LyapunovEstimate e = lyapunov_estimate(g, lambda, options.lyapunov_steps);
  out.lyapunov = e;
  out.evidence = EvidenceKind::LyapunovEstimate;
  if (e.steps < kMinLyapunovSteps) {
    out.note = "too few finite transfer steps";
    return out;
  }
  const Fate top = fate_of(e, 0);
  const Fate bottom = fate_of(e, 1);
  if (top == Fate::Decays) {
    out.status = EndStatus::LimitCircle;
    out.dimE = 2;
    out.note = "dominant growth rate is square summable";
  } else if (top == Fate::NotL2 && bottom == Fate::Decays) {
    out.status = EndStatus::LimitPoint;
    out.dimE = 1;
    out.note = "dominant solution is not square summable";
  } else {
    out.note = "growth rates not separated from the l2 threshold";
  }
  return out;
}

std::vector<Complex> solve_recurrence(const EndFamily& end, Complex lambda, std::array<Complex, 2> seed,
                                      Index horizon) {
  if (horizon < 1) throw Error(ErrorKind::HorizonTooSmall, "horizon must be at least 1");
  const EndFamily g = gauge_transform(end);
  std::vector<Complex> u(static_cast<std::size_t>(horizon) + 1);
  u[0] = seed[0];
  u[1] = seed[1];
  for (Index n = 1; n < horizon; ++n) {
    const Coefficients c = coefficients(g, n);
    const auto i = static_cast<std::size_t>(n);
    u[i + 1] = ((c.a_prev + c.a_next + c.w - lambda) * u[i] - c.a_prev * u[i - 1]) / c.a_next;
  }
  return u;
}

double wronskian_residual(const EndFamily& end, std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size() || u.size() < 2) throw Error(ErrorKind::DomainMismatch, "solutions differ in length");
  const EndFamily g = gauge_transform(end);
  const Complex w1 = (u[1] * v[0] - u[0] * v[1]) * g.edge()(1);
  if (std::abs(w1) == 0.0) throw Error(ErrorKind::DegenerateWronskian, "solutions are proportional");
  double worst = 0.0;
  for (std::size_t n = 1; n < u.size(); ++n) {
    const Complex wn = (u[n] * v[n - 1] - u[n - 1] * v[n]) * g.edge()(static_cast<Index>(n));
    worst = std::max(worst, std::abs(wn - w1) / std::abs(w1));
  }
  return worst;
}

double wronskian_residual(const EndFamily& end, Complex lambda, std::array<Complex, 2> seed_u,
                          std::array<Complex, 2> seed_v, Index horizon) {
  if (horizon < 2) throw Error(ErrorKind::HorizonTooSmall, "horizon must be at least 2");
  const EndFamily g = gauge_transform(end);
  const mp_complex lam(lambda.real(), lambda.imag());
  std::vector<mp_complex> u{mp_complex(seed_u[0].real(), seed_u[0].imag()),
                            mp_complex(seed_u[1].real(), seed_u[1].imag())};
  std::vector<mp_complex> v{mp_complex(seed_v[0].real(), seed_v[0].imag()),
                            mp_complex(seed_v[1].real(), seed_v[1].imag())};
  for (Index n = 1; n < horizon; ++n) {
    const Coefficients c = coefficients(g, n);
    const mp_complex ap(c.a_prev);
    const mp_complex an(c.a_next);
    const mp_complex diag = ap + an + mp_complex(c.w) - lam;
    const auto i = static_cast<std::size_t>(n);
    u.push_back((diag * u[i] - ap * u[i - 1]) / an);
    v.push_back((diag * v[i] - ap * v[i - 1]) / an);
  }
  const mp_complex w1 = (u[1] * v[0] - u[0] * v[1]) * mp_complex(g.edge()(1));
  if (abs(w1) == 0) throw Error(ErrorKind::DegenerateWronskian, "solutions are proportional");
  double worst = 0.0;
  for (std::size_t n = 1; n < u.size(); ++n) {
    const mp_complex wn = (u[n] * v[n - 1] - u[n - 1] * v[n]) * mp_complex(g.edge()(static_cast<Index>(n)));
    worst = std::max(worst, static_cast<double>(abs(wn - w1) / abs(w1)));
  }
  return worst;
}

DeficiencyIndices deficiency_indices(const StarLikeSpec& spec, Complex lambda, const WeylOptions& options) {
  DeficiencyIndices out;
  std::vector<std::size_t> undecided;
  for (std::size_t alpha = 0; alpha < spec.ends.size(); ++alpha) {
    out.per_end.push_back(classify_end(spec.ends[alpha].end, lambda, options));
    const auto& c = out.per_end.back();
    if (!c.dimE) {
      undecided.push_back(alpha);
    } else {
      out.n_plus += *c.dimE - 1;
    }
  }
  if (!undecided.empty()) {
    std::ostringstream msg;
    msg << "undecided ends:";
    for (auto alpha : undecided) msg << ' ' << alpha;
    throw Error(ErrorKind::BorderlineEnd, msg.str());
  }
  out.n_minus = out.n_plus;
  return out;
}

DeficiencyIndices deficiency_indices(const EndFamily& end, Complex lambda, const WeylOptions& options) {
  DeficiencyIndices out;
  out.per_end.push_back(classify_end(end, lambda, options));
  const auto& c = out.per_end.back();
  if (!c.dimE) throw Error(ErrorKind::BorderlineEnd, "undecided ends: 0");
  out.n_plus = out.n_minus = *c.dimE - 1;
  return out;
}

}  // namespace graphesa
