#include "kirch/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "kirch/error.hpp"

namespace kirch {

namespace {

void reject_unknown_keys(const Json& object, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw InvalidInput("unknown field '" + key + "' in " + std::string(where));
  }
}

std::string vertex_id(const Json& value, std::string_view where) {
  if (!value.is_string()) throw InvalidInput(std::string(where) + ": vertex ids must be strings");
  return value.get<std::string>();
}

int unit_sign(const Json& value, std::string_view where) {
  if (!value.is_number_integer()) throw InvalidInput(std::string(where) + " must be 1 or -1");
  const auto s = value.get<long long>();
  if (s != 1 && s != -1) throw InvalidInput(std::string(where) + " must be 1 or -1");
  return static_cast<int>(s);
}

}  // namespace

IncidenceStructure parse_graph(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("graph JSON must be an object");
  reject_unknown_keys(doc, {"vertices", "edges"}, "graph");
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw InvalidInput("graph JSON needs an \"edges\" array");

  std::vector<std::string> vertices;
  const bool declared = doc.contains("vertices");
  if (declared) {
    if (!doc["vertices"].is_array()) throw InvalidInput("\"vertices\" must be an array");
    for (const auto& v : doc["vertices"]) vertices.push_back(vertex_id(v, "vertices"));
  }
  auto resolve = [&](const std::string& id) -> VertexIndex {
    for (VertexIndex i = 0; i < vertices.size(); ++i)
      if (vertices[i] == id) return i;
    if (declared) throw InvalidInput("edge references unknown vertex '" + id + "'");
    vertices.push_back(id);
    return vertices.size() - 1;
  };

  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_object()) throw InvalidInput("each edge must be an object");
    reject_unknown_keys(e, {"id", "ends", "sign", "incidences"}, "edge");
    Edge edge;
    if (e.contains("id")) {
      if (!e["id"].is_string()) throw InvalidInput("edge ids must be strings");
      edge.id = e["id"].get<std::string>();
    } else {
      edge.id = "e" + std::to_string(edges.size() + 1);
    }
    const bool has_ends = e.contains("ends");
    const bool has_incidences = e.contains("incidences");
    if (has_ends == has_incidences)
      throw InvalidInput("edge '" + edge.id + "' needs exactly one of \"ends\" or \"incidences\"");
    if (has_ends) {
      const auto& ends = e["ends"];
      if (!ends.is_array() || ends.size() != 2)
        throw InvalidInput("edge '" + edge.id + "': \"ends\" must list two vertices");
      const int sign = e.contains("sign") ? unit_sign(e["sign"], "edge sign") : 1;
      const VertexIndex a = resolve(vertex_id(ends[0], "ends"));
      const VertexIndex b = resolve(vertex_id(ends[1], "ends"));
      if (a == b) throw InvalidInput("edge '" + edge.id + "' is a loop");
      edge.incidences = {{a, 1}, {b, -sign}};
    } else {
      if (e.contains("sign"))
        throw InvalidInput("edge '" + edge.id + "': \"sign\" is only valid with \"ends\"");
      const auto& list = e["incidences"];
      if (!list.is_array()) throw InvalidInput("\"incidences\" must be an array");
      for (const auto& inc : list) {
        if (!inc.is_object()) throw InvalidInput("each incidence must be an object");
        reject_unknown_keys(inc, {"vertex", "sigma"}, "incidence");
        if (!inc.contains("vertex") || !inc.contains("sigma"))
          throw InvalidInput("incidences need \"vertex\" and \"sigma\"");
        edge.incidences.push_back(
            {resolve(vertex_id(inc["vertex"], "incidence")), unit_sign(inc["sigma"], "sigma")});
      }
    }
    edges.push_back(std::move(edge));
  }
  return IncidenceStructure(std::move(vertices), std::move(edges));
}

IncidenceStructure parse_graph_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw InvalidInput(std::string("malformed JSON: ") + err.what());
  }
  return parse_graph(doc);
}

IncidenceStructure read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_json(buffer.str());
}

Json graph_to_json(const IncidenceStructure& g, bool incidence_form) {
  Json doc = Json::object();
  doc["vertices"] = g.vertices();
  Json edges = Json::array();
  for (const Edge& edge : g.edges()) {
    Json e = Json::object();
    e["id"] = edge.id;
    if (!incidence_form && g.is_two_uniform() && edge.incidences[0].sigma == 1) {
      e["ends"] = {g.vertex_name(edge.incidences[0].vertex),
                   g.vertex_name(edge.incidences[1].vertex)};
      e["sign"] = -edge.incidences[0].sigma * edge.incidences[1].sigma;
    } else {
      Json incs = Json::array();
      for (const Incidence& inc : edge.incidences)
        incs.push_back({{"vertex", g.vertex_name(inc.vertex)}, {"sigma", inc.sigma}});
      e["incidences"] = std::move(incs);
    }
    edges.push_back(std::move(e));
  }
  doc["edges"] = std::move(edges);
  return doc;
}

Json integer_to_json(const Integer& value) {
  if (fits_int64(value)) return static_cast<std::int64_t>(value);
  return value.str();
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kirch
