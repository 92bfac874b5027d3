#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "graphesa/graph.hpp"

namespace graphesa {

using Params = std::map<std::string, double>;

/// Replaces every string "$name" in the document by params[name].
/// Throws BadParams for an unbound placeholder.
nlohmann::json substitute(const nlohmann::json& doc, const Params& params);

Sequence sequence_from_json(const nlohmann::json& j);
/// Parses the family schema (after substitution). Throws InvalidFamily.
Family family_from_json(const nlohmann::json& doc, const Params& params = {});
Family load_family(const std::filesystem::path& path, const Params& params = {});

nlohmann::ordered_json family_to_json(const Family& family);

/// Built-in families: example1, example2 (A), example3 (gamma, beta),
/// example4 (N, depth), unit. Missing parameters take their defaults.
Family example_family(const std::string& name, const Params& params = {});

}  // namespace graphesa
