#include "graphesa/report.hpp"

#include <cmath>
#include <cstdio>

namespace graphesa {

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(k).dump();
        out += indent < 0 ? ":" : ": ";
        write(v, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(v, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::string hyperbolic_name(Hyperbolicity k) { return std::string(to_string(k)); }

}  // namespace

std::string write_json(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

Json number_or_tag(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json complex_json(std::complex<double> z) { return Json::array({number_or_tag(z.real()), number_or_tag(z.imag())}); }

Json to_json(const SeriesTest& t) {
  Json j{{"status", t.status == SeriesStatus::Diverges    ? "Diverges"
                    : t.status == SeriesStatus::Converges ? "Converges"
                                                          : "Inconclusive"},
         {"method", t.method == SeriesMethod::Analytic ? "Analytic" : "NumericSampling"}};
  if (t.fitted_exponent) j["fitted_exponent"] = number_or_tag(*t.fitted_exponent);
  return j;
}

Json to_json(const CompletenessVerdict& v) {
  return {{"status", v.status == Completeness::Complete      ? "Complete"
                     : v.status == Completeness::NonComplete ? "NonComplete"
                                                             : "Inconclusive"},
          {"tail_sum", number_or_tag(v.tail_sum)},
          {"method", v.method == SeriesMethod::Analytic ? "Analytic" : "NumericSampling"}};
}

Json to_json(const HyperbolicResult& h) {
  return {{"kind", hyperbolic_name(h.kind)},
          {"growth_dim", h.growth_dim},
          {"roots", Json::array({complex_json(h.roots[0]), complex_json(h.roots[1])})},
          {"root_moduli", Json::array({number_or_tag(h.moduli[0]), number_or_tag(h.moduli[1])})}};
}

Json to_json(const LyapunovEstimate& e) {
  const auto pair = [](const std::array<double, 2>& a) {
    return Json::array({number_or_tag(a[0]), number_or_tag(a[1])});
  };
  return {{"steps", e.steps},
          {"exponents", pair(e.exponents)},
          {"widths", pair(e.widths)},
          {"poly_exponents", pair(e.poly_exponents)},
          {"poly_widths", pair(e.poly_widths)}};
}

Json to_json(const EndClassification& c) {
  Json j{{"status", std::string(to_string(c.status))}};
  j["dimE"] = c.dimE ? Json(*c.dimE) : Json(nullptr);
  j["evidence"] = c.evidence == EvidenceKind::SeriesTest        ? "SeriesTest"
                  : c.evidence == EvidenceKind::HyperbolicRoots ? "HyperbolicRoots"
                                                                : "LyapunovEstimate";
  if (c.series) j["series"] = to_json(*c.series);
  if (c.hyperbolic) j["hyperbolic"] = to_json(*c.hyperbolic);
  if (c.lyapunov) j["lyapunov"] = to_json(*c.lyapunov);
  j["note"] = c.note;
  return j;
}

Json to_json(const GrowthMargin& m) {
  return {{"margin", number_or_tag(m.margin)},
          {"satisfied", m.satisfied},
          {"tail", m.tail == TailBehaviour::Bounded     ? "Bounded"
                   : m.tail == TailBehaviour::Unbounded ? "Unbounded"
                                                        : "Undecided"},
          {"argmax", m.argmax},
          {"reason", m.reason}};
}

Json to_json(const RadialReduction& rr) {
  Json j{{"branching", rr.branching}, {"symbolic", rr.symbolic}};
  j["trace"] = rr.trace ? number_or_tag(*rr.trace) : Json(nullptr);
  j["determinant"] = rr.determinant ? number_or_tag(*rr.determinant) : Json(nullptr);
  if (rr.roots) {
    j["roots"] = Json::array({complex_json((*rr.roots)[0]), complex_json((*rr.roots)[1])});
    j["root_moduli"] = Json::array({std::abs((*rr.roots)[0]), std::abs((*rr.roots)[1])});
  }
  return j;
}

Json to_json(const AgmonReport& r) {
  return {{"horizon", r.horizon},   {"mu", number_or_tag(r.mu)},     {"c", number_or_tag(r.c)},
          {"annulus", r.annulus},   {"mass", number_or_tag(r.mass)}, {"lhs", number_or_tag(r.lhs)},
          {"rhs", r.rhs},           {"norm_v", r.norm_v},            {"holds", r.holds}};
}

Json to_json(const WitnessReport& w) {
  Json rows = Json::array();
  for (const auto& r : w.rows) {
    rows.push_back({{"horizon", r.horizon},
                    {"F0", r.F0},
                    {"Q", r.energy},
                    {"norm", r.norm},
                    {"residual", r.residual},
                    {"scaled_residual", r.scaled_residual},
                    {"maximum_principle", r.maximum_principle}});
  }
  return {{"rows", rows},
          {"relative_change", w.relative_change},
          {"stable", w.stable},
          {"nonzero", w.nonzero},
          {"non_unique", w.non_unique},
          {"label", w.label}};
}

Json to_json(const Verdict& v) {
  Json trail = Json::array();
  for (const auto& o : v.trail) {
    Json t{{"rule", std::string(to_string(o.rule))}, {"enabled", o.enabled}, {"applicable", o.applicable}};
    t["conclusion"] = o.conclusion ? Json(std::string(to_string(*o.conclusion))) : Json(nullptr);
    t["detail"] = o.detail;
    trail.push_back(t);
  }
  Json details = Json::object();
  if (v.completeness) details["completeness"] = to_json(*v.completeness);
  if (v.volume) details["volume"] = to_json(*v.volume);
  if (v.growth) details["growth_condition"] = to_json(*v.growth);
  if (!v.ends.empty()) {
    Json ends = Json::array();
    for (const auto& e : v.ends) ends.push_back(to_json(e));
    details["ends"] = ends;
  }
  if (v.deficiency) details["deficiency_index"] = *v.deficiency;
  if (v.radial) details["radial"] = to_json(*v.radial);
  return {{"status", std::string(to_string(v.status))},
          {"rule", std::string(to_string(v.rule))},
          {"conflict", v.conflict},
          {"radial_sector", v.radial_sector},
          {"caveats", v.caveats},
          {"trail", trail},
          {"details", details}};
}

}  // namespace graphesa
