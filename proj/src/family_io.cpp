#include "graphesa/family_io.hpp"

#include <fstream>

#include "graphesa/catalog.hpp"
#include "graphesa/error.hpp"

namespace graphesa {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidFamily, msg); }

double number(const json& j, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    invalid(std::string("missing parameter '") + key + "'");
  }
  if (!j.at(key).is_number()) invalid(std::string("parameter '") + key + "' is not a number");
  return j.at(key).get<double>();
}

Index horizon_of(const json& doc, Index fallback) {
  if (!doc.contains("horizon")) return fallback;
  if (!doc["horizon"].is_number_integer()) invalid("horizon must be an integer");
  const auto h = doc["horizon"].get<Index>();
  if (h < 2) throw Error(ErrorKind::HorizonTooSmall, "horizon must be at least 2");
  return h;
}

std::optional<Sequence> optional_sequence(const json& coeffs, const char* key) {
  if (!coeffs.contains(key) || coeffs[key].is_null()) return std::nullopt;
  return sequence_from_json(coeffs[key]);
}

EndFamily end_from_json(const json& doc) {
  if (!doc.contains("coeffs") || !doc["coeffs"].is_object()) invalid("end family needs a 'coeffs' object");
  const auto& coeffs = doc["coeffs"];
  const Index horizon = horizon_of(doc, 1000);
  const std::string name = doc.value("name", std::string{});
  const auto w = optional_sequence(coeffs, "W");
  if (coeffs.contains("a")) {
    if (coeffs.contains("c")) invalid("give either 'c' or 'a', not both");
    auto end = EndFamily::gauged(sequence_from_json(coeffs["a"]), w, horizon, name);
    end.validate();
    return end;
  }
  if (!coeffs.contains("c")) invalid("end family needs 'c' or 'a'");
  const Sequence omega = coeffs.contains("omega") ? sequence_from_json(coeffs["omega"]) : Sequence::constant(1.0);
  auto end = EndFamily::raw(sequence_from_json(coeffs["c"]), omega, w, horizon, name);
  end.validate();
  return end;
}

TreeSpec tree_from_json(const json& doc) {
  if (!doc.contains("branching") || !doc["branching"].is_number_integer()) invalid("tree needs integer 'branching'");
  TreeSpec t = TreeSpec::dyadic(doc["branching"].get<int>(), horizon_of(doc, 12));
  if (t.branching < 1) invalid("branching must be at least 1");
  if (doc.contains("coeffs")) {
    const auto& coeffs = doc["coeffs"];
    if (coeffs.contains("omega")) t.omega = sequence_from_json(coeffs["omega"]);
    if (coeffs.contains("c")) t.conductance = sequence_from_json(coeffs["c"]);
    t.potential = optional_sequence(coeffs, "W");
  }
  return t;
}

StarLikeSpec starlike_from_json(const json& doc) {
  if (!doc.contains("core") || !doc["core"].is_object()) invalid("star-like family needs a 'core' object");
  const auto& core = doc["core"];
  if (!core.contains("omega") || !core["omega"].is_array()) invalid("core needs an 'omega' array");
  std::vector<double> omega = core["omega"].get<std::vector<double>>();
  std::vector<Edge> edges;
  for (const auto& e : core.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 3) invalid("core edges are [u, v, c] triples");
    edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>(), e[2].get<double>()});
  }
  std::optional<std::vector<double>> w;
  if (core.contains("W")) w = core["W"].get<std::vector<double>>();
  StarLikeSpec spec{WeightedGraph(std::move(omega), std::move(edges), std::move(w)), {}};
  const Index horizon = horizon_of(doc, 1000);
  if (!doc.contains("ends") || !doc["ends"].is_array() || doc["ends"].empty()) invalid("star-like family needs ends");
  for (const auto& e : doc["ends"]) {
    json end = e.contains("family") ? e["family"] : e;
    if (!end.contains("horizon")) end["horizon"] = horizon;
    const Vertex attach = e.value("attach", Vertex{0});
    spec.core.check_vertex(attach);
    spec.ends.push_back({end_from_json(end), attach, e.value("conductance", 1.0)});
  }
  return spec;
}

json sequence_json(const Sequence& s) {
  json j = s.to_json();
  if (j.is_null()) invalid("derived sequence '" + s.description() + "' has no schema form");
  return j;
}

}  // namespace

json substitute(const json& doc, const Params& params) {
  if (doc.is_string()) {
    const auto& s = doc.get_ref<const std::string&>();
    if (!s.empty() && s.front() == '$') {
      const auto it = params.find(s.substr(1));
      if (it == params.end()) throw Error(ErrorKind::BadParams, "unbound placeholder " + s);
      return it->second;
    }
    return doc;
  }
  if (doc.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : doc.items()) out[k] = substitute(v, params);
    return out;
  }
  if (doc.is_array()) {
    json out = json::array();
    for (const auto& v : doc) out.push_back(substitute(v, params));
    return out;
  }
  return doc;
}

Sequence sequence_from_json(const json& j) {
  if (j.is_number()) return Sequence::constant(j.get<double>());
  if (!j.is_object() || !j.contains("form")) invalid("sequence needs a 'form'");
  const std::string form = j["form"].get<std::string>();
  const json params = j.value("params", json::object());
  if (form == "power") {
    return Sequence::power(number(params, "k", 1.0), number(params, "s"), number(params, "shift", 0.0));
  }
  if (form == "geometric") {
    if (params.contains("rho")) return Sequence::geometric(number(params, "k", 1.0), number(params, "rho"), 1.0);
    return Sequence::geometric(number(params, "k", 1.0), number(params, "base"), number(params, "rate", 1.0));
  }
  if (form == "constant") return Sequence::constant(number(params, "k"));
  if (form == "table") {
    if (!params.is_array()) invalid("table params must be an array");
    std::optional<Growth> growth;
    if (j.contains("growth")) {
      const auto& g = j["growth"];
      growth = Growth{number(g, "scale", 1.0), number(g, "ratio", 1.0), number(g, "power", 0.0), false};
    }
    return Sequence::table(params.get<std::vector<double>>(), growth);
  }
  invalid("unknown sequence form '" + form + "'");
}

Family family_from_json(const json& raw, const Params& params) {
  try {
    const json doc = substitute(raw, params);
    if (!doc.is_object()) invalid("family must be a JSON object");
    const std::string kind = doc.value("kind", std::string("end"));
    if (kind == "end") return end_from_json(doc);
    if (kind == "tree") return tree_from_json(doc);
    if (kind == "starlike") return starlike_from_json(doc);
    invalid("unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    invalid(e.what());
  }
}

Family load_family(const std::filesystem::path& path, const Params& params) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidFamily, "cannot open family file " + path.string() + ": file not found");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    invalid("malformed JSON in " + path.string() + ": " + e.what());
  }
  return family_from_json(doc, params);
}

nlohmann::ordered_json family_to_json(const Family& family) {
  using oj = nlohmann::ordered_json;
  if (const auto* end = std::get_if<EndFamily>(&family)) {
    oj coeffs;
    if (end->gauge() == Gauge::Gauged) {
      coeffs["a"] = sequence_json(end->edge());
    } else {
      coeffs["c"] = sequence_json(end->edge());
      coeffs["omega"] = sequence_json(end->omega());
    }
    if (end->potential()) coeffs["W"] = sequence_json(*end->potential());
    oj j{{"kind", "end"}};
    if (!end->name().empty()) j["name"] = end->name();
    j["coeffs"] = coeffs;
    j["horizon"] = end->horizon();
    return j;
  }
  if (const auto* tree = std::get_if<TreeSpec>(&family)) {
    oj coeffs{{"omega", sequence_json(tree->omega)}, {"c", sequence_json(tree->conductance)}};
    if (tree->potential) coeffs["W"] = sequence_json(*tree->potential);
    return oj{{"kind", "tree"}, {"branching", tree->branching}, {"coeffs", coeffs}, {"horizon", tree->max_depth}};
  }
  const auto& spec = std::get<StarLikeSpec>(family);
  oj edges = oj::array();
  for (const auto& e : spec.core.edges()) edges.push_back(oj::array({e.u, e.v, e.conductance}));
  oj core{{"omega", std::vector<double>(spec.core.omegas().begin(), spec.core.omegas().end())}, {"edges", edges}};
  if (spec.core.has_potential()) {
    core["W"] = std::vector<double>(spec.core.potentials().begin(), spec.core.potentials().end());
  }
  oj ends = oj::array();
  Index horizon = 2;
  for (const auto& e : spec.ends) {
    ends.push_back({{"attach", e.attach}, {"conductance", e.conductance}, {"family", family_to_json(Family(e.end))}});
    horizon = std::max(horizon, e.end.horizon());
  }
  return oj{{"kind", "starlike"}, {"core", core}, {"ends", ends}, {"horizon", horizon}};
}

Family example_family(const std::string& name, const Params& params) {
  const auto get = [&](const char* key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "example1") return catalog::cubic_conductance_end(static_cast<Index>(get("horizon", 1000)));
  if (name == "example2") return catalog::dyadic_end(get("A", 0.0), static_cast<Index>(get("horizon", 400)));
  if (name == "example3") {
    return catalog::power_end(get("gamma", 3.0), get("beta", 1.0), static_cast<Index>(get("horizon", 1000)));
  }
  if (name == "example4") {
    return catalog::dyadic_tree(static_cast<int>(get("N", 1.0)), static_cast<Index>(get("depth", 12)));
  }
  if (name == "unit") return catalog::unit_end(static_cast<Index>(get("horizon", 1000)));
  throw Error(ErrorKind::BadParams, "unknown example '" + name + "'");
}

}  // namespace graphesa
