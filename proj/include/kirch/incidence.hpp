#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kirch/matrix.hpp"

namespace kirch {

/// Position of a vertex in the structure's vertex order.
using VertexIndex = std::size_t;
/// Position of an edge in the structure's edge order.
using EdgeIndex = std::size_t;

inline constexpr EdgeIndex kVirtualEdge = static_cast<EdgeIndex>(-1);

struct Incidence {
  VertexIndex vertex;
  int sigma;  // +1 or -1
  bool operator==(const Incidence&) const = default;
};

struct Edge {
  std::string id;
  std::vector<Incidence> incidences;
  bool operator==(const Edge&) const = default;
};

/// An incidence at a vertex, addressed as (edge, position within the edge).
struct IncidenceRef {
  EdgeIndex edge;
  std::size_t position;
  bool operator==(const IncidenceRef&) const = default;
};

/// Oriented incidence structure: vertices, edges, and signed incidences.
/// Immutable after construction. Edges may hold any positive number of
/// incidences, each at a distinct vertex; 2-uniform structures are the
/// bidirected graphs (orientations of signed graphs).
class IncidenceStructure {
 public:
  IncidenceStructure() = default;
  IncidenceStructure(std::vector<std::string> vertices, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::string& vertex_name(VertexIndex v) const { return vertices_.at(v); }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  /// Throws InvalidInput for unknown ids.
  VertexIndex index_of(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;

  /// Incidences sitting at `v`, in edge order.
  const std::vector<IncidenceRef>& incidences_at(VertexIndex v) const { return at_.at(v); }
  std::size_t degree(VertexIndex v) const { return at_.at(v).size(); }

  bool is_two_uniform() const { return two_uniform_; }
  /// Throws InvalidInput naming `operation` unless every edge is a 2-edge.
  void require_two_uniform(std::string_view operation) const;

  /// -sigma(i) sigma(j) for the two incidences of a 2-edge.
  int adjacency_sign(EdgeIndex e) const;
  /// -sigma(i) sigma(j) for two incidences of the same edge.
  int adjacency_sign(EdgeIndex e, std::size_t tail_position, std::size_t head_position) const;
  /// The far endpoint of a 2-edge seen from `v`.
  VertexIndex other_end(EdgeIndex e, VertexIndex v) const;

  bool all_positive() const;
  bool all_negative() const;

  /// Same incidences, signs chosen so that every adjacency is `sign`.
  IncidenceStructure with_uniform_sign(int sign) const;

  bool operator==(const IncidenceStructure&) const = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<IncidenceRef>> at_;
  bool two_uniform_ = true;
};

struct SignedEdge {
  std::string id;
  std::string first;
  std::string second;
  int sign = 1;
};

/// Orients a signed graph: the first incidence gets sigma = +1, the second
/// sigma = -sign, so that the adjacency sign equals the requested sign.
IncidenceStructure from_signed_edges(std::vector<std::string> vertices,
                                     const std::vector<SignedEdge>& edges);

/// Per-edge adjacency signs of a bidirected graph, in edge order.
struct SignedGraphView {
  struct Adjacency {
    EdgeIndex edge;
    VertexIndex first;
    VertexIndex second;
    int sign;
  };
  std::vector<Adjacency> adjacencies;
};

SignedGraphView signed_view(const IncidenceStructure& g);
/// Inverse of from_signed_edges on 2-uniform structures.
std::vector<SignedEdge> to_signed_edges(const IncidenceStructure& g);

/// Number of edges joining a and b (a != b).
std::size_t multiplicity(const IncidenceStructure& g, VertexIndex a, VertexIndex b);
/// Lowest-index edge containing both a and b.
std::optional<EdgeIndex> edge_between(const IncidenceStructure& g, VertexIndex a, VertexIndex b);

IntMatrix incidence_matrix(const IncidenceStructure& g);
IntMatrix degree_matrix(const IncidenceStructure& g);
IntMatrix adjacency_matrix(const IncidenceStructure& g);
IntMatrix laplacian(const IncidenceStructure& g);
/// Laplacian of the all-negative reorientation.
IntMatrix signless_laplacian(const IncidenceStructure& g);

/// G with a {w1,w2} edge guaranteed: the existing lowest-index one, or a new
/// positive 2-edge appended at the end.
struct LoadedGraph {
  IncidenceStructure graph;
  EdgeIndex edge;
  bool added;
};

LoadedGraph local_loading(const IncidenceStructure& g, VertexIndex w1, VertexIndex w2);

/// Seeded G(n, p) with each present edge negative with probability q.
/// Vertices are "1".."n", edges "e1".. in lexicographic pair order.
IncidenceStructure random_signed_graph(std::size_t n, double edge_probability,
                                       double negative_probability, std::uint64_t seed);

}  // namespace kirch
