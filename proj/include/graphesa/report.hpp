#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "graphesa/classify.hpp"
#include "graphesa/dirichlet.hpp"

namespace graphesa {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kSchema = 1;

using Json = nlohmann::ordered_json;

/// Fixed key order, doubles with 17 significant digits, so equal inputs
/// give byte-identical text.
std::string write_json(const Json& j, int indent = 2);

/// Finite doubles stay numbers; infinities and NaN become "inf", "-inf", "nan".
Json number_or_tag(double v);
std::string fnv1a_hex(std::string_view data);

Json to_json(const SeriesTest& t);
Json to_json(const CompletenessVerdict& v);
Json to_json(const HyperbolicResult& h);
Json to_json(const LyapunovEstimate& e);
Json to_json(const EndClassification& c);
Json to_json(const GrowthMargin& m);
Json to_json(const RadialReduction& rr);
Json to_json(const AgmonReport& r);
Json to_json(const WitnessReport& w);
Json to_json(const Verdict& v);

Json complex_json(std::complex<double> z);

}  // namespace graphesa
