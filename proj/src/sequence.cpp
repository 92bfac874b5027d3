#include "graphesa/sequence.hpp"

#include <cmath>
#include <sstream>

#include "graphesa/error.hpp"

namespace graphesa {

namespace {

constexpr double kOrderTol = 1e-12;

bool same_ratio(double a, double b) { return std::abs(a - b) <= kOrderTol * std::max(std::abs(a), std::abs(b)); }

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

Growth Growth::times(const Growth& other) const {
  return {scale * other.scale, ratio * other.ratio, power + other.power, exact && other.exact};
}

Growth Growth::over(const Growth& other) const {
  return {scale / other.scale, ratio / other.ratio, power - other.power, exact && other.exact};
}

Growth Growth::pow(double exponent) const {
  return {std::pow(scale, exponent), std::pow(ratio, exponent), power * exponent, exact};
}

Growth Growth::scaled(double factor) const { return {scale * factor, ratio, power, exact}; }

Growth Growth::shifted(Index offset) const {
  // (n + offset)^power keeps its leading term but is no longer a pure power.
  return {scale * std::pow(ratio, static_cast<double>(offset)), ratio, power, exact && power == 0.0};
}

double Growth::evaluate(double n) const {
  return scale * std::pow(ratio, n) * (power == 0.0 ? 1.0 : std::pow(n, power));
}

int Growth::compare_order(const Growth& other) const {
  if (!same_ratio(ratio, other.ratio)) return ratio < other.ratio ? -1 : 1;
  if (std::abs(power - other.power) > kOrderTol) return power < other.power ? -1 : 1;
  return 0;
}

bool Growth::series_diverges() const {
  if (!same_ratio(ratio, 1.0)) return ratio > 1.0;
  return power >= -1.0 - kOrderTol;
}

bool Growth::bounded() const {
  if (!same_ratio(ratio, 1.0)) return ratio < 1.0;
  return power <= kOrderTol;
}

bool Growth::tends_to_zero() const {
  if (!same_ratio(ratio, 1.0)) return ratio < 1.0;
  return power < -kOrderTol;
}

Sequence Sequence::power(double k, double s, double shift) {
  Sequence seq;
  seq.form_ = Form::Power;
  seq.fn_ = std::make_shared<const std::function<double(Index)>>(
      [k, s, shift](Index n) { return k * std::pow(static_cast<double>(n) + shift, s); });
  seq.growth_ = Growth{k, 1.0, s, shift == 0.0 || s == 0.0};
  seq.description_ = fmt_num(k) + "*(n+" + fmt_num(shift) + ")^" + fmt_num(s);
  seq.json_ = {{"form", "power"}, {"params", {{"k", k}, {"s", s}, {"shift", shift}}}};
  return seq;
}

Sequence Sequence::geometric(double k, double base, double rate) {
  Sequence seq;
  seq.form_ = Form::Geometric;
  seq.fn_ = std::make_shared<const std::function<double(Index)>>(
      [k, base, rate](Index n) { return k * std::pow(base, rate * static_cast<double>(n)); });
  seq.growth_ = Growth{k, std::pow(base, rate), 0.0, true};
  seq.description_ = fmt_num(k) + "*" + fmt_num(base) + "^(" + fmt_num(rate) + "n)";
  seq.json_ = {{"form", "geometric"}, {"params", {{"k", k}, {"base", base}, {"rate", rate}}}};
  return seq;
}

Sequence Sequence::constant(double k) { return geometric(k, 1.0, 1.0); }

Sequence Sequence::table(std::vector<double> values, std::optional<Growth> growth) {
  if (values.empty()) throw Error(ErrorKind::InvalidFamily, "table sequence needs at least one value");
  Sequence seq;
  seq.form_ = Form::Table;
  seq.max_index_ = static_cast<Index>(values.size()) - 1;
  seq.json_ = {{"form", "table"}, {"params", values}};
  if (growth) {
    growth->exact = false;
    seq.json_["growth"] = {{"scale", growth->scale}, {"ratio", growth->ratio}, {"power", growth->power}};
  }
  seq.growth_ = growth;
  seq.description_ = "table[" + std::to_string(values.size()) + "]";
  seq.fn_ = std::make_shared<const std::function<double(Index)>>(
      [v = std::move(values)](Index n) { return v.at(static_cast<std::size_t>(n)); });
  return seq;
}

Sequence Sequence::derived(std::function<double(Index)> fn, std::optional<Growth> growth,
                           std::string description, std::optional<Index> max_index) {
  Sequence seq;
  seq.max_index_ = max_index;
  seq.form_ = Form::Derived;
  seq.fn_ = std::make_shared<const std::function<double(Index)>>(std::move(fn));
  seq.growth_ = growth;
  seq.description_ = std::move(description);
  return seq;
}

double Sequence::operator()(Index n) const {
  if (n < 0 || (max_index_ && n > *max_index_)) {
    throw Error(ErrorKind::IndexOutOfRange,
                "index " + std::to_string(n) + " outside sequence " + description_);
  }
  return (*fn_)(n);
}

std::optional<Index> Sequence::max_index() const { return max_index_; }

nlohmann::ordered_json Sequence::to_json() const { return json_; }

}  // namespace graphesa
