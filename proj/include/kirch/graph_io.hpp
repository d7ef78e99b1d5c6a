#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "kirch/incidence.hpp"

namespace kirch {

using Json = nlohmann::ordered_json;

/// Parses Graph JSON. Accepts the signed form
///   {"vertices":[...],"edges":[{"id":"e1","ends":["a","b"],"sign":1}]}
/// and the incidence form
///   {"edges":[{"id":"e1","incidences":[{"vertex":"a","sigma":1},...]}]}
/// (the two may be mixed per edge). Unknown fields are rejected. Without a
/// "vertices" list, vertices are taken in order of first appearance.
IncidenceStructure parse_graph(const Json& doc);
IncidenceStructure parse_graph_json(std::string_view text);
IncidenceStructure read_graph_file(const std::filesystem::path& path);

/// Signed form for 2-uniform structures (unless `incidence_form`), incidence
/// form otherwise.
Json graph_to_json(const IncidenceStructure& g, bool incidence_form = false);

/// Integers that fit in 64 bits become JSON numbers; larger ones become
/// decimal strings.
Json integer_to_json(const Integer& value);
Json matrix_to_json(const IntMatrix& m);

}  // namespace kirch
