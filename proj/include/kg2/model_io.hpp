#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "kg2/semantics.hpp"

namespace kg2 {

using Json = nlohmann::ordered_json;

/// Document layout:
///   {"worlds": [...], "rplus": [[from, to, "v"], ...], "rminus": [...],
///    "v1": {atom: {world: "v"}}, "v2": {...}}
/// Values are "n" or "n/d"; zero entries are omitted on output and default to 0 on input.
/// Output order is deterministic: edges and valuation entries follow the world list,
/// atoms are sorted by name.
Json frame_to_json(const Frame& f);
Json model_to_json(const Model& m);

/// Throw FormatError on any structural or value problem.
Frame frame_from_json(const Json& doc);
Model model_from_json(const Json& doc);

/// Read and parse a file; I/O failures are reported as FormatError.
Json read_json_file(const std::string& path);
Model read_model_file(const std::string& path);
Frame read_frame_file(const std::string& path);

/// Graphviz rendering. Worlds carry their atom values, edges are labelled "+:v" / "-:v".
/// The optional root world is drawn with a double border.
std::string model_to_dot(const Model& m, const std::optional<std::string>& root = std::nullopt);

}  // namespace kg2
