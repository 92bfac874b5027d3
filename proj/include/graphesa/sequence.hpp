#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace graphesa {

using Index = std::int64_t;

/// Leading asymptotic term scale * ratio^n * n^power of a positive sequence.
///
/// `exact` marks sequences that equal scale * ratio^n for every index
/// (power == 0), which lets tail sums and threshold comparisons be done in
/// closed form rather than through the leading term only.
struct Growth {
  double scale = 1.0;
  double ratio = 1.0;
  double power = 0.0;
  bool exact = false;

  Growth times(const Growth& other) const;
  Growth over(const Growth& other) const;
  Growth pow(double exponent) const;
  Growth scaled(double factor) const;
  /// Growth of n -> x(n + offset).
  Growth shifted(Index offset) const;

  double evaluate(double n) const;
  /// Order comparison of the n-dependence only: -1, 0 or +1.
  int compare_order(const Growth& other) const;
  bool series_diverges() const;
  bool bounded() const;
  bool tends_to_zero() const;
};

/// A coefficient sequence n -> value, either one of the closed forms used by
/// the family schema (power, geometric, table) or a derived sequence built
/// from them (gauge transforms, metric edge lengths).
class Sequence {
 public:
  enum class Form { Power, Geometric, Table, Derived };

  /// k * (n + shift)^s
  static Sequence power(double k, double s, double shift = 0.0);
  /// k * base^(rate * n); rho = base^rate is the per-step ratio.
  static Sequence geometric(double k, double base, double rate = 1.0);
  static Sequence constant(double k);
  static Sequence table(std::vector<double> values, std::optional<Growth> growth = std::nullopt);
  static Sequence derived(std::function<double(Index)> fn, std::optional<Growth> growth,
                          std::string description, std::optional<Index> max_index = std::nullopt);

  double operator()(Index n) const;
  const std::optional<Growth>& growth() const { return growth_; }
  Form form() const { return form_; }
  /// Largest valid index for table forms; unbounded otherwise.
  std::optional<Index> max_index() const;
  const std::string& description() const { return description_; }
  /// Schema form for primitive sequences; null for derived ones.
  nlohmann::ordered_json to_json() const;

 private:
  Sequence() = default;

  Form form_ = Form::Derived;
  std::shared_ptr<const std::function<double(Index)>> fn_;
  std::optional<Growth> growth_;
  std::optional<Index> max_index_;
  std::string description_;
  nlohmann::ordered_json json_;
};

}  // namespace graphesa
