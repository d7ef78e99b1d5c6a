#include "kirch/arborescence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "kirch/error.hpp"

namespace kirch {

namespace {

// Union-find with undo, for backtracking over edge subsets.
class RollbackForest {
 public:
  explicit RollbackForest(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    return true;
  }

  void undo() {
    const std::size_t b = history_.back();
    history_.pop_back();
    size_[parent_[b]] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> history_;
};

void acyclic_subsets(const IncidenceStructure& g, std::size_t k, const ForestLimits& limits,
                     const std::function<void(const EdgeSet&, const RollbackForest&)>& visit) {
  g.require_two_uniform("spanning forest enumeration");
  const std::size_t m = g.edge_count();
  RollbackForest forest(g.vertex_count());
  EdgeSet chosen;
  std::size_t examined = 0;
  std::function<void(std::size_t)> descend = [&](std::size_t next) {
    if (++examined > limits.max_subsets)
      throw CapabilityError("forest enumeration exceeded the cap of " +
                            std::to_string(limits.max_subsets) + " subsets");
    if (chosen.size() == k) {
      visit(chosen, forest);
      return;
    }
    for (std::size_t e = next; e + (k - chosen.size()) <= m; ++e) {
      const auto& inc = g.edge(e).incidences;
      if (!forest.unite(inc[0].vertex, inc[1].vertex)) continue;
      chosen.push_back(e);
      descend(e + 1);
      chosen.pop_back();
      forest.undo();
    }
  };
  descend(0);
}

void check_vertex(const IncidenceStructure& g, VertexIndex v) {
  if (v >= g.vertex_count()) throw InvalidInput("unknown vertex index");
}

// Parent edge of every non-root vertex of the tree on `edges` rooted at `root`.
std::map<VertexIndex, EdgeIndex> parent_edges(const IncidenceStructure& g, const RootedTree& t) {
  std::map<VertexIndex, EdgeIndex> parent;
  std::vector<VertexIndex> frontier{t.root};
  std::set<VertexIndex> reached{t.root};
  while (!frontier.empty()) {
    const VertexIndex v = frontier.back();
    frontier.pop_back();
    for (EdgeIndex e : t.edges) {
      const auto& inc = g.edge(e).incidences;
      VertexIndex other;
      if (inc[0].vertex == v) other = inc[1].vertex;
      else if (inc[1].vertex == v) other = inc[0].vertex;
      else continue;
      if (!reached.insert(other).second) continue;
      parent[other] = e;
      frontier.push_back(other);
    }
  }
  if (reached.size() != t.vertices.size() || t.edges.size() + 1 != t.vertices.size())
    throw InvalidInput("tree edges do not span a tree on its vertices");
  return parent;
}

RootedTree component_tree(const IncidenceStructure& g, const EdgeSet& forest,
                          const std::vector<unsigned char>& comp, VertexIndex root) {
  RootedTree t;
  t.root = root;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (comp[v] == comp[root]) t.vertices.push_back(v);
  for (EdgeIndex e : forest)
    if (comp[g.edge(e).incidences[0].vertex] == comp[root]) t.edges.push_back(e);
  return t;
}

}  // namespace

std::vector<EdgeSet> spanning_trees(const IncidenceStructure& g, const ForestLimits& limits) {
  std::vector<EdgeSet> out;
  if (g.vertex_count() == 0) return out;
  acyclic_subsets(g, g.vertex_count() - 1, limits,
                  [&](const EdgeSet& s, const RollbackForest&) { out.push_back(s); });
  return out;
}

std::vector<EdgeSet> spanning_two_forests(const IncidenceStructure& g, const ForestLimits& limits) {
  std::vector<EdgeSet> out;
  if (g.vertex_count() < 2) return out;
  acyclic_subsets(g, g.vertex_count() - 2, limits,
                  [&](const EdgeSet& s, const RollbackForest&) { out.push_back(s); });
  return out;
}

TwoForestTable::TwoForestTable(const IncidenceStructure& g, const ForestLimits& limits)
    : vertex_count_(g.vertex_count()) {
  if (vertex_count_ < 2) return;
  acyclic_subsets(g, vertex_count_ - 2, limits, [&](const EdgeSet& s, const RollbackForest& f) {
    forests_.push_back(s);
    std::vector<unsigned char> comp(vertex_count_);
    const std::size_t first = f.find(0);
    for (VertexIndex v = 0; v < vertex_count_; ++v) comp[v] = f.find(v) == first ? 0 : 1;
    components_.push_back(std::move(comp));
  });
}

Integer TwoForestTable::count_pairs(VertexIndex u1, VertexIndex w1, VertexIndex u2,
                                    VertexIndex w2) const {
  for (VertexIndex v : {u1, w1, u2, w2})
    if (v >= vertex_count_) throw InvalidInput("unknown vertex index");
  Integer count = 0;
  for (const auto& comp : components_)
    if (comp[u1] == comp[w1] && comp[u2] == comp[w2] && comp[u1] != comp[u2]) ++count;
  return count;
}

Integer TwoForestTable::tutte_transpedance(VertexIndex u1, VertexIndex u2, VertexIndex w1,
                                           VertexIndex w2) const {
  return count_pairs(u1, w1, u2, w2) - count_pairs(u1, w2, u2, w1);
}

Integer count_pairs(const IncidenceStructure& g, VertexIndex u1, VertexIndex w1, VertexIndex u2,
                    VertexIndex w2) {
  return TwoForestTable(g).count_pairs(u1, w1, u2, w2);
}

Integer tutte_transpedance(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                           VertexIndex w1, VertexIndex w2) {
  return TwoForestTable(g).tutte_transpedance(u1, u2, w1, w2);
}

std::vector<TwoArborescence> tutte_two_arborescences(const IncidenceStructure& g, VertexIndex u1,
                                                     VertexIndex u2, VertexIndex w1,
                                                     VertexIndex w2,
                                                     const ForestLimits& limits) {
  for (VertexIndex v : {u1, u2, w1, w2}) check_vertex(g, v);
  std::vector<TwoArborescence> out;
  const TwoForestTable table(g, limits);
  for (std::size_t i = 0; i < table.forests().size(); ++i) {
    const auto& comp = table.components()[i];
    if (comp[u1] == comp[u2]) continue;
    int sign = 0;
    if (comp[w1] == comp[u1] && comp[w2] == comp[u2]) sign = 1;
    else if (comp[w2] == comp[u1] && comp[w1] == comp[u2]) sign = -1;
    if (sign == 0) continue;
    const EdgeSet& forest = table.forests()[i];
    out.push_back({component_tree(g, forest, comp, u1), component_tree(g, forest, comp, u2), w1,
                   w2, sign});
  }
  return out;
}

Contributor arbor_to_contributor(const IncidenceStructure& g, const TwoArborescence& f) {
  g.require_two_uniform("arborescence bijection");
  const RootedTree* trees[2] = {&f.tree1, &f.tree2};
  std::vector<int> owner(g.vertex_count(), -1);
  for (int i = 0; i < 2; ++i)
    for (VertexIndex v : trees[i]->vertices) {
      check_vertex(g, v);
      if (owner[v] != -1) throw InvalidInput("the two trees overlap");
      owner[v] = i;
    }
  if (std::count(owner.begin(), owner.end(), -1) != 0)
    throw InvalidInput("the two trees do not cover every vertex");
  check_vertex(g, f.w1);
  check_vertex(g, f.w2);
  const int expected = f.sign > 0 ? 0 : 1;
  if (owner[f.w1] != expected || owner[f.w2] != 1 - expected)
    throw InvalidInput("marked vertices disagree with the arborescence sign");

  Contributor c;
  c.restriction = {{f.tree1.root, f.tree2.root}, {f.w1, f.w2}};
  for (int i = 0; i < 2; ++i) {
    const auto parent = parent_edges(g, *trees[i]);
    const VertexIndex marked = owner[f.w1] == i ? f.w1 : f.w2;
    std::set<VertexIndex> on_path;
    for (VertexIndex v = marked; v != trees[i]->root;) {
      on_path.insert(v);
      v = g.other_end(parent.at(v), v);
    }
    for (const auto& [v, e] : parent)
      c.moves.push_back(on_path.count(v) ? adjacency_move(g, e, v) : backstep_move(g, e, v));
  }
  std::sort(c.moves.begin(), c.moves.end());
  return c;
}

TwoArborescence contributor_to_arbor(const IncidenceStructure& g, const Contributor& c) {
  g.require_two_uniform("arborescence bijection");
  const Restriction& r = c.restriction;
  if (r.u.size() != 2 || r.w.size() != 2)
    throw InvalidInput("contributor is not reduced against two pairs");
  validate_contributor(g, c);

  const std::size_t n = g.vertex_count();
  std::vector<EdgeIndex> tail_edge(n, kVirtualEdge);
  for (const Move& m : c.moves) tail_edge[m.tail] = m.edge;
  std::vector<int> owner(n, -1);
  owner[r.u[0]] = 0;
  owner[r.u[1]] = 1;
  for (VertexIndex v = 0; v < n; ++v) {
    std::vector<VertexIndex> walk;
    VertexIndex at = v;
    while (owner[at] == -1) {
      if (walk.size() > n) throw InvalidInput("contributor is not in a trivial class");
      walk.push_back(at);
      at = g.other_end(tail_edge[at], at);
    }
    for (VertexIndex x : walk) owner[x] = owner[at];
  }

  TwoArborescence f;
  RootedTree* trees[2] = {&f.tree1, &f.tree2};
  for (int i = 0; i < 2; ++i) trees[i]->root = r.u[i];
  for (VertexIndex v = 0; v < n; ++v) {
    trees[owner[v]]->vertices.push_back(v);
    if (tail_edge[v] != kVirtualEdge) trees[owner[v]]->edges.push_back(tail_edge[v]);
  }
  for (RootedTree* t : trees) std::sort(t->edges.begin(), t->edges.end());
  f.w1 = r.w[0];
  f.w2 = r.w[1];
  if (owner[f.w1] == owner[f.w2]) throw InvalidInput("contributor is not in a trivial class");
  f.sign = owner[f.w1] == 0 ? 1 : -1;

  Contributor back = arbor_to_contributor(g, f);
  if (back.moves != c.moves) throw InvalidInput("contributor is not in a trivial class");
  return f;
}

SourceSinkPath unique_path(const IncidenceStructure& g, const Contributor& c) {
  g.require_two_uniform("path extraction");
  const Restriction& r = c.restriction;
  if (r.u.size() != 2 || r.w.size() != 2)
    throw InvalidInput("contributor is not reduced against two pairs");
  if (r.u[0] == r.u[1] || r.w[0] == r.w[1]) throw InvalidInput("degenerate restriction");
  const ComponentDecomposition d = decompose(g, c);

  struct Half {
    std::vector<VertexIndex> vertices;  // from its w to its u
    std::vector<std::string> edges;
  };
  Half halves[2];
  for (int i = 0; i < 2; ++i) {
    const VertexIndex u = r.u[i];
    if (std::find(r.w.begin(), r.w.end(), u) != r.w.end()) {
      halves[i].vertices = {u};
      continue;
    }
    auto it = std::find_if(d.paths.begin(), d.paths.end(),
                           [u](const OpenPath& p) { return p.end == u; });
    if (it == d.paths.end()) throw InvalidInput("contributor has no path into a source or sink");
    halves[i].vertices.push_back(it->start);
    for (const Move& m : it->moves) {
      halves[i].vertices.push_back(m.head);
      halves[i].edges.push_back(g.edge(m.edge).id);
    }
  }

  const VertexIndex wa = halves[0].vertices.front();
  const VertexIndex wb = halves[1].vertices.front();
  const LoadedGraph loaded = local_loading(g, wa, wb);
  SourceSinkPath path;
  path.loaded_edge = loaded.graph.edge(loaded.edge).id;
  path.vertices.assign(halves[0].vertices.rbegin(), halves[0].vertices.rend());
  path.edges.assign(halves[0].edges.rbegin(), halves[0].edges.rend());
  path.edges.push_back(path.loaded_edge);
  path.vertices.insert(path.vertices.end(), halves[1].vertices.begin(), halves[1].vertices.end());
  path.edges.insert(path.edges.end(), halves[1].edges.begin(), halves[1].edges.end());

  std::vector<VertexIndex> seen = path.vertices;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InvalidInput("extracted walk repeats a vertex");
  return path;
}

TreeSortReport tree_sort_report(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                const EnumerationLimits& limits) {
  g.require_two_uniform("tree sorting");
  check_vertex(g, u1);
  check_vertex(g, u2);
  if (u1 == u2) throw InvalidInput("source and sink must differ");

  TreeSortReport report;
  report.source = u1;
  report.sink = u2;
  report.tau = tree_number(laplacian(g.with_uniform_sign(1)));

  std::map<std::vector<std::string>, std::size_t> group_of;  // path edge ids -> group
  std::vector<std::set<std::vector<std::string>>> seen;
  const std::size_t n = g.vertex_count();
  for (VertexIndex x = 0; x < n; ++x)
    for (VertexIndex y = 0; y < n; ++y) {
      if (x == y) continue;
      const std::size_t mult = multiplicity(g, x, y);
      if (mult == 0) continue;
      SourceEdgeFlow flow{y, mult, 0};
      const LoadedGraph loaded = local_loading(g, x, y);
      for (const Contributor& c : trivial_reduced_classes(g, {{u1, u2}, {x, y}}, limits)) {
        ++report.completions;
        const TwoArborescence f = contributor_to_arbor(g, c);
        if (x == u1) flow.trees += f.sign;

        EdgeSet tree = f.tree1.edges;
        tree.insert(tree.end(), f.tree2.edges.begin(), f.tree2.edges.end());
        tree.push_back(loaded.edge);
        RollbackForest check(n);
        bool acyclic = true;
        for (EdgeIndex e : tree) {
          const auto& inc = loaded.graph.edge(e).incidences;
          acyclic = check.unite(inc[0].vertex, inc[1].vertex) && acyclic;
        }
        if (!acyclic || tree.size() + 1 != n) report.all_spanning_trees = false;

        std::vector<std::string> ids;
        for (EdgeIndex e : tree) ids.push_back(loaded.graph.edge(e).id);
        std::sort(ids.begin(), ids.end());

        SourceSinkPath path = unique_path(g, c);
        auto [it, fresh] = group_of.try_emplace(path.edges, report.groups.size());
        if (fresh) {
          report.groups.push_back({std::move(path), {}});
          seen.emplace_back();
        }
        if (seen[it->second].insert(ids).second) report.groups[it->second].trees.push_back(ids);
      }
      if (x == u1) {
        report.total_outflow += flow.trees * static_cast<long long>(mult);
        report.outflow.push_back(std::move(flow));
      }
    }
  for (auto& group : report.groups) std::sort(group.trees.begin(), group.trees.end());
  return report;
}

}  // namespace kirch
