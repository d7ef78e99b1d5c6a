#include "kirch/activation.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "kirch/error.hpp"

namespace kirch {

namespace {

constexpr std::size_t kMaxClassRank = 20;
constexpr std::size_t kMaxPosetSize = 4096;

bool has_repeats(std::vector<VertexIndex> values) {
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) != values.end();
}

void check_restriction(const IncidenceStructure& g, const Restriction& r) {
  if (r.u.size() != r.w.size()) throw InvalidInput("restriction lists u and w differ in length");
  for (VertexIndex v : r.u)
    if (v >= g.vertex_count()) throw InvalidInput("restriction names an unknown vertex");
  for (VertexIndex v : r.w)
    if (v >= g.vertex_count()) throw InvalidInput("restriction names an unknown vertex");
}

// Mixed-radix walk over one incidence choice per listed vertex.
class TailMapCounter {
 public:
  TailMapCounter(const IncidenceStructure& g, std::vector<VertexIndex> vertices)
      : g_(g), vertices_(std::move(vertices)), digits_(vertices_.size(), 0) {
    for (VertexIndex v : vertices_)
      if (g.degree(v) == 0) empty_ = true;
  }

  bool empty() const { return empty_; }

  std::vector<TailChoice> current() const {
    std::vector<TailChoice> out;
    out.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const IncidenceRef& ref = g_.incidences_at(vertices_[i])[digits_[i]];
      out.push_back({vertices_[i], ref.edge, ref.position});
    }
    return out;
  }

  bool advance() {
    for (std::size_t i = vertices_.size(); i-- > 0;) {
      if (++digits_[i] < g_.degree(vertices_[i])) return true;
      digits_[i] = 0;
    }
    return false;
  }

 private:
  const IncidenceStructure& g_;
  std::vector<VertexIndex> vertices_;
  std::vector<std::size_t> digits_;
  bool empty_ = false;
};

void count_tail_map(std::size_t& seen, const EnumerationLimits& limits) {
  if (++seen > limits.max_contributors)
    throw CapabilityError("tail-map enumeration exceeded the cap of " +
                          std::to_string(limits.max_contributors));
}

std::vector<VertexIndex> free_vertices(const IncidenceStructure& g, const Restriction& r) {
  std::vector<char> in_u(g.vertex_count(), 0);
  for (VertexIndex v : r.u) in_u[v] = 1;
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (!in_u[v]) out.push_back(v);
  return out;
}

std::vector<std::pair<EdgeIndex, std::size_t>> incidences_used(const Contributor& c) {
  std::set<std::pair<EdgeIndex, std::size_t>> used;
  for (const Move& m : c.moves) {
    used.insert({m.edge, m.tail_position});
    used.insert({m.edge, m.head_position});
  }
  return {used.begin(), used.end()};
}

using CircleKey = std::vector<std::tuple<EdgeIndex, std::size_t, std::size_t>>;

std::set<CircleKey> circle_keys(const ComponentDecomposition& d) {
  std::set<CircleKey> keys;
  for (const Circle& circle : d.circles) {
    CircleKey key;
    for (const Move& m : circle.moves) key.emplace_back(m.edge, m.tail_position, m.head_position);
    std::sort(key.begin(), key.end());
    keys.insert(std::move(key));
  }
  return keys;
}

ActivationClass summarize_generic(const IncidenceStructure& g, std::vector<TailChoice> tails,
                                  std::vector<Contributor> members) {
  ActivationClass cls;
  cls.tailmap = std::move(tails);
  cls.members = std::move(members);
  cls.boolean = false;
  for (const Contributor& c : cls.members) {
    const ComponentDecomposition d = decompose(g, c);
    cls.sum_sgn_d += sgn_d(d);
    for (const Circle& circle : d.circles)
      if (circle.sign > 0) cls.positive_circle_free = false;
  }
  if (cls.members.size() > kMaxPosetSize) return cls;
  const ClassPoset poset = class_poset(g, cls);
  for (std::size_t r : poset.rank) cls.rank = std::max(cls.rank, r);
  if (poset.maximal.size() == 1) {
    cls.maximal = poset.maximal.front();
    cls.eta = decompose(g, cls.members[*cls.maximal]).negative_circles();
  }
  return cls;
}

// Members of one tail map found by backtracking over head positions.
std::vector<Contributor> members_for_tails(const IncidenceStructure& g,
                                           const std::vector<TailChoice>& tails,
                                           const Restriction& stored,
                                           const std::vector<char>& head_ok,
                                           const std::vector<long>& required_head) {
  std::vector<Contributor> out;
  Contributor current;
  current.restriction = stored;
  std::vector<char> used(g.vertex_count(), 0);
  std::function<void(std::size_t)> descend = [&](std::size_t depth) {
    if (depth == tails.size()) {
      out.push_back(current);
      return;
    }
    const TailChoice& t = tails[depth];
    const Edge& edge = g.edge(t.edge);
    for (std::size_t q = 0; q < edge.incidences.size(); ++q) {
      const VertexIndex head = edge.incidences[q].vertex;
      if (!head_ok[head] || used[head]) continue;
      if (required_head[t.vertex] >= 0 && static_cast<long>(head) != required_head[t.vertex])
        continue;
      used[head] = 1;
      current.moves.push_back(Move{t.vertex, t.edge, t.position, q, head});
      descend(depth + 1);
      current.moves.pop_back();
      used[head] = 0;
    }
  };
  descend(0);
  return out;
}

std::vector<ActivationClass> generic_classes(const IncidenceStructure& g, const ClassQuery& query,
                                             const EnumerationLimits& limits) {
  const Restriction& r = query.restriction;
  const std::size_t n = g.vertex_count();
  std::vector<char> head_ok(n, 1);
  std::vector<long> required(n, -1);
  Restriction stored;
  std::vector<VertexIndex> tails_over;
  if (query.reduced) {
    for (VertexIndex w : r.w) head_ok[w] = 0;
    stored = r;
    tails_over = free_vertices(g, r);
  } else {
    for (std::size_t i = 0; i < r.u.size(); ++i) required[r.u[i]] = static_cast<long>(r.w[i]);
    tails_over = free_vertices(g, Restriction{});
  }

  std::vector<ActivationClass> out;
  TailMapCounter counter(g, tails_over);
  if (counter.empty()) return out;
  std::size_t seen = 0;
  do {
    count_tail_map(seen, limits);
    auto tails = counter.current();
    auto members = members_for_tails(g, tails, stored, head_ok, required);
    if (!members.empty()) out.push_back(summarize_generic(g, std::move(tails), std::move(members)));
  } while (counter.advance());
  return out;
}

ActivationClass expand_boolean(const IncidenceStructure& g, const BooleanTailClass& bc,
                               const Restriction& filter) {
  if (bc.rank() > kMaxClassRank)
    throw CapabilityError("activation class of rank " + std::to_string(bc.rank()) +
                          " is too large to materialize");
  ActivationClass cls;
  cls.tailmap = bc.tails;
  cls.boolean = true;
  const std::uint64_t count = std::uint64_t{1} << bc.rank();
  std::uint64_t always_on = ~std::uint64_t{0};
  std::uint64_t ever_on = 0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    Contributor c = bc.member(mask);
    bool keep = true;
    for (std::size_t i = 0; i < filter.u.size() && keep; ++i) {
      auto it = std::find_if(c.moves.begin(), c.moves.end(),
                             [&](const Move& m) { return m.tail == filter.u[i]; });
      keep = it != c.moves.end() && it->head == filter.w[i];
    }
    if (!keep) continue;
    always_on &= mask;
    ever_on |= mask;
    cls.sum_sgn_d += sgn_d(g, c);
    cls.members.push_back(std::move(c));
  }
  if (cls.members.empty()) return cls;
  const std::uint64_t varying = ever_on & ~always_on;
  for (std::size_t i = 0; i < bc.rank(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (varying & bit) cls.circles.push_back(bc.circles[i]);
    if ((ever_on & bit) && bc.circles[i].sign > 0) cls.positive_circle_free = false;
    if ((ever_on & bit) && bc.circles[i].sign < 0) ++cls.eta;
  }
  cls.rank = cls.circles.size();
  cls.maximal = cls.members.size() - 1;
  return cls;
}

}  // namespace

Contributor BooleanTailClass::member(std::uint64_t mask) const {
  Contributor c = least;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (!(mask & (std::uint64_t{1} << i))) continue;
    for (const Move& m : circles[i].moves) {
      auto it = std::lower_bound(c.moves.begin(), c.moves.end(), m.tail,
                                 [](const Move& x, VertexIndex t) { return x.tail < t; });
      *it = m;
    }
  }
  return c;
}

Contributor BooleanTailClass::maximal() const {
  return member(circles.empty() ? 0 : (~std::uint64_t{0} >> (64 - circles.size())));
}

void for_each_boolean_class(const IncidenceStructure& g, const Restriction& r,
                            const std::function<void(const BooleanTailClass&)>& visit,
                            const EnumerationLimits& limits) {
  g.require_two_uniform("Boolean activation classes");
  check_restriction(g, r);
  if (has_repeats(r.u) || has_repeats(r.w)) return;

  const std::size_t n = g.vertex_count();
  std::vector<char> in_u(n, 0), in_w(n, 0);
  for (VertexIndex v : r.u) in_u[v] = 1;
  for (VertexIndex v : r.w) in_w[v] = 1;
  const std::vector<VertexIndex> free = free_vertices(g, r);

  TailMapCounter counter(g, free);
  if (counter.empty()) return;

  constexpr VertexIndex kNone = static_cast<VertexIndex>(-1);
  std::vector<VertexIndex> next(n, kNone);
  std::vector<EdgeIndex> tail_edge(n, kVirtualEdge);
  std::vector<char> on_path(n), end_used(n), color(n);
  std::size_t seen = 0;
  do {
    count_tail_map(seen, limits);
    BooleanTailClass bc;
    bc.tails = counter.current();
    for (const TailChoice& t : bc.tails) {
      tail_edge[t.vertex] = t.edge;
      next[t.vertex] = g.other_end(t.edge, t.vertex);
    }

    // Each w outside U must run along tail edges, avoiding W, into U.
    std::fill(on_path.begin(), on_path.end(), 0);
    std::fill(end_used.begin(), end_used.end(), 0);
    bool valid = true;
    for (VertexIndex w : r.w) {
      if (in_u[w]) continue;
      on_path[w] = 1;
      VertexIndex at = w;
      while (valid) {
        const VertexIndex to = next[at];
        if (in_w[to]) {
          valid = false;
        } else if (in_u[to]) {
          if (end_used[to]) valid = false;
          end_used[to] = 1;
          break;
        } else if (on_path[to]) {
          valid = false;
        } else {
          on_path[to] = 1;
          at = to;
        }
      }
      if (!valid) break;
    }
    if (!valid) continue;

    auto off_path = [&](VertexIndex v) { return !in_u[v] && !on_path[v]; };
    std::fill(color.begin(), color.end(), 0);
    for (VertexIndex start : free) {
      if (!off_path(start) || color[start]) continue;
      std::vector<VertexIndex> walk;
      VertexIndex y = start;
      while (off_path(y) && color[y] == 0) {
        color[y] = 1;
        walk.push_back(y);
        y = next[y];
      }
      if (off_path(y) && color[y] == 1) {
        std::vector<VertexIndex> cycle;
        for (VertexIndex x = y;;) {
          cycle.push_back(x);
          x = next[x];
          if (x == y) break;
        }
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        Circle circle;
        for (VertexIndex x : cycle) {
          circle.moves.push_back(adjacency_move(g, tail_edge[x], x));
          circle.sign *= g.adjacency_sign(tail_edge[x]);
        }
        bc.circles.push_back(std::move(circle));
      }
      for (VertexIndex x : walk) color[x] = 2;
    }

    bc.least.restriction = r;
    for (VertexIndex v : free)
      bc.least.moves.push_back(on_path[v] ? adjacency_move(g, tail_edge[v], v)
                                          : backstep_move(g, tail_edge[v], v));
    visit(bc);
  } while (counter.advance());
}

std::vector<ActivationClass> tail_classes(const IncidenceStructure& g, const ClassQuery& query,
                                          const EnumerationLimits& limits) {
  check_restriction(g, query.restriction);
  if (has_repeats(query.restriction.u) || has_repeats(query.restriction.w)) return {};
  if (!g.is_two_uniform()) return generic_classes(g, query, limits);

  std::vector<ActivationClass> out;
  const bool filtering = !query.reduced && !query.restriction.u.empty();
  const Restriction walk = filtering ? Restriction{} : query.restriction;
  for_each_boolean_class(
      g, walk,
      [&](const BooleanTailClass& bc) {
        ActivationClass cls = expand_boolean(g, bc, filtering ? query.restriction : Restriction{});
        if (!cls.members.empty()) out.push_back(std::move(cls));
      },
      limits);
  return out;
}

ClassPoset class_poset(const IncidenceStructure& g, const ActivationClass& cls) {
  const std::size_t n = cls.members.size();
  if (n > kMaxPosetSize) throw CapabilityError("class too large for an explicit poset");
  ClassPoset poset;
  poset.size = n;

  std::vector<std::set<CircleKey>> circles(n);
  std::vector<std::vector<std::pair<EdgeIndex, std::size_t>>> incidences(n);
  std::vector<std::size_t> components(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ComponentDecomposition d = decompose(g, cls.members[i]);
    circles[i] = circle_keys(d);
    incidences[i] = incidences_used(cls.members[i]);
    components[i] = d.circles.size() + d.backsteps.size() + d.paths.size();
  }

  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const bool by_circles = std::includes(circles[b].begin(), circles[b].end(),
                                            circles[a].begin(), circles[a].end());
      // On 2-edges every adjacency is unique, so circle sets alone order the class.
      const bool by_packing = !g.is_two_uniform() && incidences[a] == incidences[b] &&
                              components[a] > components[b];
      leq[a][b] = a == b || by_circles || by_packing;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (leq[a][k])
        for (std::size_t b = 0; b < n; ++b)
          if (leq[k][b]) leq[a][b] = 1;

  auto less = [&](std::size_t a, std::size_t b) { return a != b && leq[a][b] && !leq[b][a]; };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (leq[a][b] && leq[b][a]) poset.antisymmetric = false;
      if (!leq[a][b] && !leq[b][a]) poset.incomparable.emplace_back(a, b);
    }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!less(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (less(a, c) && less(c, b)) cover = false;
      if (cover) poset.covers.emplace_back(a, b);
    }

  // Longest chain below each element; `less` is acyclic on a strict order.
  poset.rank.assign(n, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<std::size_t> below(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (less(b, a)) ++below[a];
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return below[x] < below[y]; });
  for (std::size_t a : order)
    for (std::size_t b = 0; b < n; ++b)
      if (less(b, a)) poset.rank[a] = std::max(poset.rank[a], poset.rank[b] + 1);

  for (std::size_t a = 0; a < n; ++a) {
    bool is_min = true, is_max = true;
    for (std::size_t b = 0; b < n; ++b) {
      if (less(b, a)) is_min = false;
      if (less(a, b)) is_max = false;
    }
    if (is_min) poset.minimal.push_back(a);
    if (is_max) poset.maximal.push_back(a);
  }
  return poset;
}

Integer transpedance_d_activation(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                  VertexIndex w1, VertexIndex w2,
                                  const EnumerationLimits& limits) {
  const Restriction r{{u1, u2}, {w1, w2}};
  check_restriction(g, r);
  if (u1 == u2 || w1 == w2) return 0;
  Integer total = 0;
  for_each_boolean_class(
      g, r,
      [&](const BooleanTailClass& bc) {
        for (const Circle& circle : bc.circles)
          if (circle.sign > 0) return;  // the class cancels
        const Contributor m = bc.maximal();
        const ComponentDecomposition d = decompose(g, m);
        total += Integer(sgn_d(d)) << d.negative_circles();
      },
      limits);
  return total;
}

Integer transpedance_activation(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                VertexIndex w1, VertexIndex w2, Form form,
                                const EnumerationLimits& limits) {
  if (form == Form::Determinant) return transpedance_d_activation(g, u1, u2, w1, w2, limits);
  const Restriction r{{u1, u2}, {w1, w2}};
  check_restriction(g, r);
  if (u1 == u2 || w1 == w2) return 0;
  Integer total = 0;
  for_each_boolean_class(
      g, r,
      [&](const BooleanTailClass& bc) {
        Integer factor = sgn_p(g, bc.least);
        for (const Circle& circle : bc.circles) {
          const int ratio = parity_sign(circle.length() + (circle.sign < 0 ? 1 : 0));
          if (ratio < 0) return;
          factor *= 2;
        }
        total += factor;
      },
      limits);
  return total;
}

std::vector<Contributor> trivial_reduced_classes(const IncidenceStructure& g, const Restriction& r,
                                                 const EnumerationLimits& limits) {
  std::vector<Contributor> out;
  for_each_boolean_class(
      g, r,
      [&](const BooleanTailClass& bc) {
        if (bc.circles.empty()) out.push_back(bc.least);
      },
      limits);
  return out;
}

}  // namespace kirch
