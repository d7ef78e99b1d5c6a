#include "kirch/incidence.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

#include "kirch/error.hpp"

namespace kirch {

IncidenceStructure::IncidenceStructure(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), at_(vertices_.size()) {
  std::unordered_set<std::string> names;
  for (const auto& v : vertices_) {
    if (v.empty()) throw InvalidInput("empty vertex id");
    if (!names.insert(v).second) throw InvalidInput("duplicate vertex id '" + v + "'");
  }
  std::unordered_set<std::string> edge_names;
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.id.empty()) throw InvalidInput("empty edge id");
    if (!edge_names.insert(edge.id).second)
      throw InvalidInput("duplicate edge id '" + edge.id + "'");
    if (edge.incidences.empty()) throw InvalidInput("edge '" + edge.id + "' has no incidences");
    std::set<VertexIndex> seen;
    for (std::size_t p = 0; p < edge.incidences.size(); ++p) {
      const Incidence& inc = edge.incidences[p];
      if (inc.vertex >= vertices_.size())
        throw InvalidInput("edge '" + edge.id + "' references an unknown vertex");
      if (inc.sigma != 1 && inc.sigma != -1)
        throw InvalidInput("edge '" + edge.id + "' has an incidence sign other than +1/-1");
      if (!seen.insert(inc.vertex).second)
        throw InvalidInput("edge '" + edge.id + "' meets vertex '" + vertices_[inc.vertex] +
                           "' twice (loops are not supported)");
      at_[inc.vertex].push_back({e, p});
    }
    if (edge.incidences.size() != 2) two_uniform_ = false;
  }
}

std::optional<VertexIndex> IncidenceStructure::find_vertex(std::string_view id) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), id);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<VertexIndex>(it - vertices_.begin());
}

VertexIndex IncidenceStructure::index_of(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw InvalidInput("unknown vertex '" + std::string(id) + "'");
}

std::optional<EdgeIndex> IncidenceStructure::find_edge(std::string_view id) const {
  for (EdgeIndex e = 0; e < edges_.size(); ++e)
    if (edges_[e].id == id) return e;
  return std::nullopt;
}

void IncidenceStructure::require_two_uniform(std::string_view operation) const {
  if (!two_uniform_)
    throw InvalidInput(std::string(operation) + " requires a signed graph (every edge a 2-edge)");
}

int IncidenceStructure::adjacency_sign(EdgeIndex e) const {
  const Edge& edge = edges_.at(e);
  if (edge.incidences.size() != 2) throw InvalidInput("edge '" + edge.id + "' is not a 2-edge");
  return -edge.incidences[0].sigma * edge.incidences[1].sigma;
}

int IncidenceStructure::adjacency_sign(EdgeIndex e, std::size_t tail_position,
                                       std::size_t head_position) const {
  const Edge& edge = edges_.at(e);
  return -edge.incidences.at(tail_position).sigma * edge.incidences.at(head_position).sigma;
}

VertexIndex IncidenceStructure::other_end(EdgeIndex e, VertexIndex v) const {
  const Edge& edge = edges_.at(e);
  if (edge.incidences.size() != 2) throw InvalidInput("edge '" + edge.id + "' is not a 2-edge");
  if (edge.incidences[0].vertex == v) return edge.incidences[1].vertex;
  if (edge.incidences[1].vertex == v) return edge.incidences[0].vertex;
  throw InvalidInput("edge '" + edge.id + "' does not meet vertex '" + vertices_.at(v) + "'");
}

bool IncidenceStructure::all_positive() const {
  for (const Edge& edge : edges_)
    for (std::size_t i = 0; i < edge.incidences.size(); ++i)
      for (std::size_t j = i + 1; j < edge.incidences.size(); ++j)
        if (edge.incidences[i].sigma * edge.incidences[j].sigma != -1) return false;
  return true;
}

bool IncidenceStructure::all_negative() const {
  for (const Edge& edge : edges_)
    for (std::size_t i = 0; i < edge.incidences.size(); ++i)
      for (std::size_t j = i + 1; j < edge.incidences.size(); ++j)
        if (edge.incidences[i].sigma * edge.incidences[j].sigma != 1) return false;
  return true;
}

IncidenceStructure IncidenceStructure::with_uniform_sign(int sign) const {
  if (sign != 1 && sign != -1) throw InvalidInput("sign must be +1 or -1");
  std::vector<Edge> edges = edges_;
  for (Edge& edge : edges) {
    if (sign == 1 && edge.incidences.size() > 2)
      throw InvalidInput("edge '" + edge.id + "' has more than two incidences and cannot be all-positive");
    for (std::size_t p = 0; p < edge.incidences.size(); ++p)
      edge.incidences[p].sigma = (p == 0) ? 1 : -sign;
  }
  return IncidenceStructure(vertices_, std::move(edges));
}

IncidenceStructure from_signed_edges(std::vector<std::string> vertices,
                                     const std::vector<SignedEdge>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  auto lookup = [&](const std::string& id) -> VertexIndex {
    auto it = std::find(vertices.begin(), vertices.end(), id);
    if (it == vertices.end()) throw InvalidInput("unknown vertex '" + id + "'");
    return static_cast<VertexIndex>(it - vertices.begin());
  };
  for (const SignedEdge& se : edges) {
    if (se.sign != 1 && se.sign != -1)
      throw InvalidInput("edge '" + se.id + "' sign must be +1 or -1");
    const VertexIndex a = lookup(se.first);
    const VertexIndex b = lookup(se.second);
    if (a == b) throw InvalidInput("edge '" + se.id + "' is a loop");
    out.push_back(Edge{se.id, {{a, 1}, {b, -se.sign}}});
  }
  return IncidenceStructure(std::move(vertices), std::move(out));
}

SignedGraphView signed_view(const IncidenceStructure& g) {
  g.require_two_uniform("signed_view");
  SignedGraphView view;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    view.adjacencies.push_back(
        {e, edge.incidences[0].vertex, edge.incidences[1].vertex, g.adjacency_sign(e)});
  }
  return view;
}

std::vector<SignedEdge> to_signed_edges(const IncidenceStructure& g) {
  std::vector<SignedEdge> out;
  for (const auto& adj : signed_view(g).adjacencies)
    out.push_back({g.edge(adj.edge).id, g.vertex_name(adj.first), g.vertex_name(adj.second),
                   adj.sign});
  return out;
}

std::size_t multiplicity(const IncidenceStructure& g, VertexIndex a, VertexIndex b) {
  std::size_t count = 0;
  for (const IncidenceRef& ref : g.incidences_at(a)) {
    for (const Incidence& inc : g.edge(ref.edge).incidences)
      if (inc.vertex == b && b != a) ++count;
  }
  return count;
}

std::optional<EdgeIndex> edge_between(const IncidenceStructure& g, VertexIndex a, VertexIndex b) {
  for (const IncidenceRef& ref : g.incidences_at(a))
    for (const Incidence& inc : g.edge(ref.edge).incidences)
      if (inc.vertex == b && b != a) return ref.edge;
  return std::nullopt;
}

IntMatrix incidence_matrix(const IncidenceStructure& g) {
  IntMatrix h(g.vertex_count(), g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    for (const Incidence& inc : g.edge(e).incidences) h(inc.vertex, e) += inc.sigma;
  return h;
}

IntMatrix degree_matrix(const IncidenceStructure& g) {
  IntMatrix d(g.vertex_count(), g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) d(v, v) = g.degree(v);
  return d;
}

IntMatrix adjacency_matrix(const IncidenceStructure& g) {
  IntMatrix a(g.vertex_count(), g.vertex_count());
  for (const Edge& edge : g.edges())
    for (const Incidence& i : edge.incidences)
      for (const Incidence& j : edge.incidences)
        if (i.vertex != j.vertex) a(i.vertex, j.vertex) += -i.sigma * j.sigma;
  return a;
}

IntMatrix laplacian(const IncidenceStructure& g) { return degree_matrix(g) - adjacency_matrix(g); }

IntMatrix signless_laplacian(const IncidenceStructure& g) {
  return laplacian(g.with_uniform_sign(-1));
}

LoadedGraph local_loading(const IncidenceStructure& g, VertexIndex w1, VertexIndex w2) {
  if (w1 >= g.vertex_count() || w2 >= g.vertex_count())
    throw InvalidInput("local loading at an unknown vertex");
  if (w1 == w2) throw InvalidInput("local loading needs two distinct vertices");
  if (auto e = edge_between(g, w1, w2)) return {g, *e, false};

  std::string id = "load_" + g.vertex_name(w1) + "_" + g.vertex_name(w2);
  while (g.find_edge(id)) id += "'";
  std::vector<Edge> edges = g.edges();
  edges.push_back(Edge{id, {{w1, 1}, {w2, -1}}});
  const EdgeIndex added = edges.size() - 1;
  return {IncidenceStructure(g.vertices(), std::move(edges)), added, true};
}

IncidenceStructure random_signed_graph(std::size_t n, double edge_probability,
                                       double negative_probability, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("random graph needs at least one vertex");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0) ||
      !(negative_probability >= 0.0 && negative_probability <= 1.0))
    throw InvalidInput("probabilities must lie in [0, 1]");

  // Uniform doubles from the raw engine output; distribution objects are not
  // reproducible across standard libraries.
  std::mt19937_64 engine(seed);
  auto uniform = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };

  std::vector<std::string> vertices;
  for (std::size_t i = 1; i <= n; ++i) vertices.push_back(std::to_string(i));
  std::vector<SignedEdge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool present = uniform() < edge_probability;
      const bool negative = uniform() < negative_probability;
      if (present)
        edges.push_back({"e" + std::to_string(edges.size() + 1), vertices[i], vertices[j],
                         negative ? -1 : 1});
    }
  return from_signed_edges(std::move(vertices), edges);
}

}  // namespace kirch
