#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kirch/activation.hpp"
#include "kirch/contributor.hpp"
#include "kirch/incidence.hpp"
#include "kirch/integer.hpp"

namespace kirch {

// Edge signs play no part here: every count is taken on the underlying graph.

using EdgeSet = std::vector<EdgeIndex>;  // sorted edge indices

struct ForestLimits {
  std::size_t max_subsets = 50'000'000;
};

std::vector<EdgeSet> spanning_trees(const IncidenceStructure& g, const ForestLimits& limits = {});
/// Acyclic edge sets with exactly |V| - 2 edges, i.e. spanning forests with two
/// components.
std::vector<EdgeSet> spanning_two_forests(const IncidenceStructure& g,
                                          const ForestLimits& limits = {});

/// Every spanning 2-forest of g with its component labels (0 or 1 per vertex,
/// 0 for the component of vertex 0). Built once, queried many times.
class TwoForestTable {
 public:
  explicit TwoForestTable(const IncidenceStructure& g, const ForestLimits& limits = {});

  const std::vector<EdgeSet>& forests() const { return forests_; }
  const std::vector<std::vector<unsigned char>>& components() const { return components_; }

  /// <u1w1, u2w2>: forests with u1, w1 in one component and u2, w2 in the other.
  Integer count_pairs(VertexIndex u1, VertexIndex w1, VertexIndex u2, VertexIndex w2) const;
  /// [u1u2, w1w2] = <u1w1, u2w2> - <u1w2, u2w1>.
  Integer tutte_transpedance(VertexIndex u1, VertexIndex u2, VertexIndex w1, VertexIndex w2) const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<EdgeSet> forests_;
  std::vector<std::vector<unsigned char>> components_;
};

Integer count_pairs(const IncidenceStructure& g, VertexIndex u1, VertexIndex w1, VertexIndex u2,
                    VertexIndex w2);
Integer tutte_transpedance(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                           VertexIndex w1, VertexIndex w2);

struct RootedTree {
  VertexIndex root;
  EdgeSet edges;
  std::vector<VertexIndex> vertices;  // sorted
  bool operator==(const RootedTree&) const = default;
};

struct TwoArborescence {
  RootedTree tree1;  // rooted at u1
  RootedTree tree2;  // rooted at u2
  VertexIndex w1;
  VertexIndex w2;
  int sign = 1;  // +1 when w1 shares a tree with u1, -1 when crossed
  bool operator==(const TwoArborescence&) const = default;
};

/// The 2-arborescences counted by [u1u2, w1w2], with their signs.
std::vector<TwoArborescence> tutte_two_arborescences(const IncidenceStructure& g, VertexIndex u1,
                                                     VertexIndex u2, VertexIndex w1,
                                                     VertexIndex w2,
                                                     const ForestLimits& limits = {});

/// Mark the path from each w to its root; path vertices step to their parents,
/// every other non-root vertex backsteps on its parent edge.
Contributor arbor_to_contributor(const IncidenceStructure& g, const TwoArborescence& f);
/// Inverse of arbor_to_contributor. Rejects contributors outside the trivial
/// reduced classes.
TwoArborescence contributor_to_arbor(const IncidenceStructure& g, const Contributor& c);

struct SourceSinkPath {
  std::vector<VertexIndex> vertices;  // u1 ... u2
  std::vector<std::string> edges;     // edge ids, one fewer than vertices
  std::string loaded_edge;            // the e_{w1w2} edge the path runs through
};

/// The u1u2-path of a reduced nonzero contributor through e_{w1w2} in the
/// local loading of g.
SourceSinkPath unique_path(const IncidenceStructure& g, const Contributor& c);

struct TreeSortGroup {
  SourceSinkPath path;
  std::vector<std::vector<std::string>> trees;  // sorted edge ids; a loaded edge may be new
};

struct SourceEdgeFlow {
  VertexIndex neighbor;
  std::size_t multiplicity = 0;
  Integer trees = 0;  // signed count of trivial contributors for (source, neighbor)
};

struct TreeSortReport {
  VertexIndex source;
  VertexIndex sink;
  std::vector<TreeSortGroup> groups;
  std::vector<SourceEdgeFlow> outflow;
  Integer total_outflow = 0;
  Integer tau = 0;
  std::size_t completions = 0;  // trivial contributors examined
  bool all_spanning_trees = true;
};

/// Completes every trivial reduced contributor, over every ordered adjacent
/// (w1, w2), with its loaded edge and sorts the resulting spanning trees by
/// their source-sink path.
TreeSortReport tree_sort_report(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                const EnumerationLimits& limits = {});

}  // namespace kirch
