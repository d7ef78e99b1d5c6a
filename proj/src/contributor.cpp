#include "kirch/contributor.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "kirch/error.hpp"

namespace kirch {

std::size_t ComponentDecomposition::negative_circles() const {
  return static_cast<std::size_t>(
      std::count_if(circles.begin(), circles.end(), [](const Circle& c) { return c.sign < 0; }));
}

Move adjacency_move(const IncidenceStructure& g, EdgeIndex e, VertexIndex tail) {
  const Edge& edge = g.edge(e);
  if (edge.incidences.size() != 2) throw InvalidInput("adjacency move needs a 2-edge");
  const std::size_t t = edge.incidences[0].vertex == tail ? 0 : 1;
  if (edge.incidences[t].vertex != tail) throw InvalidInput("edge does not meet the tail vertex");
  return Move{tail, e, t, 1 - t, edge.incidences[1 - t].vertex};
}

Move backstep_move(const IncidenceStructure& g, EdgeIndex e, VertexIndex tail) {
  const Edge& edge = g.edge(e);
  for (std::size_t p = 0; p < edge.incidences.size(); ++p)
    if (edge.incidences[p].vertex == tail) return Move{tail, e, p, p, tail};
  throw InvalidInput("edge does not meet the tail vertex");
}

namespace {

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

// Depth-first search over the free (tail) vertices in order, choosing for each
// a move whose head is still available.
class Search {
 public:
  Search(const IncidenceStructure& g, const Restriction& r, std::size_t cap,
         std::atomic<std::size_t>& counter)
      : g_(g), cap_(cap), counter_(counter), used_(g.vertex_count(), 0),
        last_reach_(g.vertex_count(), -1) {
    const std::size_t n = g.vertex_count();
    std::vector<char> is_tail(n, 1), head_ok(n, 1);
    for (VertexIndex v : r.u) is_tail[v] = 0;
    for (VertexIndex v : r.w) head_ok[v] = 0;
    for (VertexIndex v = 0; v < n; ++v) {
      if (!is_tail[v]) continue;
      std::vector<Move> options;
      for (const IncidenceRef& ref : g.incidences_at(v)) {
        const Edge& edge = g.edge(ref.edge);
        for (std::size_t q = 0; q < edge.incidences.size(); ++q) {
          const VertexIndex head = edge.incidences[q].vertex;
          if (head_ok[head]) options.push_back(Move{v, ref.edge, ref.position, q, head});
        }
      }
      tails_.push_back(v);
      candidates_.push_back(std::move(options));
    }
    for (VertexIndex v = 0; v < n; ++v)
      if (head_ok[v]) required_.push_back(v);
    for (std::size_t d = 0; d < candidates_.size(); ++d)
      for (const Move& m : candidates_[d]) last_reach_[m.head] = static_cast<long>(d);
    current_.restriction = r;
    current_.moves.reserve(tails_.size());
  }

  std::size_t depth_count() const { return tails_.size(); }
  const std::vector<Move>& candidates(std::size_t depth) const { return candidates_[depth]; }

  template <typename Visit>
  void run(Visit&& visit) {
    if (!feasible(0)) return;
    descend(0, visit);
  }

  // Runs only the subtrees whose first move index satisfies `pick`.
  template <typename Pick, typename Visit>
  void run_partition(Pick&& pick, Visit&& visit) {
    if (tails_.empty()) {
      if (pick(0)) emit(visit);
      return;
    }
    if (!feasible(0)) return;
    const auto& first = candidates_[0];
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (!pick(i)) continue;
      if (!try_move(first[i], 0, visit)) continue;
    }
  }

 private:
  template <typename Visit>
  void emit(Visit& visit) {
    if (counter_.fetch_add(1, std::memory_order_relaxed) + 1 > cap_)
      throw CapabilityError("contributor enumeration exceeded the cap of " +
                            std::to_string(cap_));
    visit(current_);
  }

  // Every still-unused required head must be reachable from some later tail.
  bool feasible(std::size_t depth) const {
    for (VertexIndex h : required_)
      if (!used_[h] && last_reach_[h] < static_cast<long>(depth)) return false;
    return true;
  }

  template <typename Visit>
  bool try_move(const Move& m, std::size_t depth, Visit& visit) {
    if (used_[m.head]) return false;
    used_[m.head] = 1;
    current_.moves.push_back(m);
    if (feasible(depth + 1)) descend(depth + 1, visit);
    current_.moves.pop_back();
    used_[m.head] = 0;
    return true;
  }

  template <typename Visit>
  void descend(std::size_t depth, Visit& visit) {
    if (depth == tails_.size()) {
      emit(visit);
      return;
    }
    for (const Move& m : candidates_[depth]) try_move(m, depth, visit);
  }

  const IncidenceStructure& g_;
  std::size_t cap_;
  std::atomic<std::size_t>& counter_;
  std::vector<VertexIndex> tails_;
  std::vector<std::vector<Move>> candidates_;
  std::vector<VertexIndex> required_;
  std::vector<char> used_;
  std::vector<long> last_reach_;
  Contributor current_;
};

}  // namespace

void for_each_reduced_nonzero(const IncidenceStructure& g, const Restriction& r,
                              const std::function<void(const Contributor&)>& visit,
                              const EnumerationLimits& limits) {
  check_restriction(g, r);
  if (has_repeats(r.u) || has_repeats(r.w)) return;
  std::atomic<std::size_t> counter{0};
  Search search(g, r, limits.max_contributors, counter);
  search.run(visit);
}

std::vector<Contributor> enumerate_reduced_nonzero(const IncidenceStructure& g,
                                                   const Restriction& r,
                                                   const EnumerationLimits& limits) {
  std::vector<Contributor> out;
  for_each_reduced_nonzero(g, r, [&](const Contributor& c) { out.push_back(c); }, limits);
  return out;
}

void for_each_contributor(const IncidenceStructure& g,
                          const std::function<void(const Contributor&)>& visit,
                          const EnumerationLimits& limits) {
  for_each_reduced_nonzero(g, Restriction{}, visit, limits);
}

std::vector<Contributor> enumerate_contributors(const IncidenceStructure& g,
                                                const EnumerationLimits& limits) {
  return enumerate_reduced_nonzero(g, Restriction{}, limits);
}

std::size_t count_contributors(const IncidenceStructure& g, const EnumerationLimits& limits) {
  std::size_t count = 0;
  for_each_contributor(g, [&](const Contributor&) { ++count; }, limits);
  return count;
}

void validate_contributor(const IncidenceStructure& g, const Contributor& c) {
  const Restriction& r = c.restriction;
  check_restriction(g, r);
  if (has_repeats(r.u) || has_repeats(r.w))
    throw InvalidInput("contributor restriction repeats a vertex");
  const std::size_t n = g.vertex_count();
  std::vector<char> is_tail(n, 1), head_ok(n, 1), seen_head(n, 0);
  for (VertexIndex v : r.u) is_tail[v] = 0;
  for (VertexIndex v : r.w) head_ok[v] = 0;
  std::size_t expected = 0;
  for (VertexIndex v = 0; v < n; ++v) expected += is_tail[v];
  if (c.moves.size() != expected) throw InvalidInput("contributor has the wrong number of moves");
  VertexIndex next_tail = 0;
  for (const Move& m : c.moves) {
    while (next_tail < n && !is_tail[next_tail]) ++next_tail;
    if (m.tail != next_tail) throw InvalidInput("contributor moves are not one per free vertex in order");
    ++next_tail;
    if (m.is_virtual() || m.edge >= g.edge_count())
      throw InvalidInput("contributor move uses an edge that is not in the graph");
    const Edge& edge = g.edge(m.edge);
    if (m.tail_position >= edge.incidences.size() || m.head_position >= edge.incidences.size() ||
        edge.incidences[m.tail_position].vertex != m.tail ||
        edge.incidences[m.head_position].vertex != m.head)
      throw InvalidInput("contributor move does not match its edge's incidences");
    if (!head_ok[m.head]) throw InvalidInput("contributor maps onto a removed head");
    if (seen_head[m.head]) throw InvalidInput("contributor heads are not distinct");
    seen_head[m.head] = 1;
  }
}

namespace {

int move_sign(const IncidenceStructure& g, const Move& m) {
  return g.adjacency_sign(m.edge, m.tail_position, m.head_position);
}

}  // namespace

ComponentDecomposition decompose(const IncidenceStructure& g, const Contributor& c) {
  validate_contributor(g, c);
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> move_of(n, kNone);
  for (std::size_t i = 0; i < c.moves.size(); ++i) move_of[c.moves[i].tail] = i;

  ComponentDecomposition d;
  std::vector<char> done(c.moves.size(), 0);
  for (std::size_t i = 0; i < c.moves.size(); ++i)
    if (c.moves[i].is_backstep()) {
      d.backsteps.push_back(c.moves[i]);
      done[i] = 1;
    }

  std::vector<char> in_u(n, 0);
  for (VertexIndex v : c.restriction.u) in_u[v] = 1;
  for (VertexIndex w : c.restriction.w) {
    if (in_u[w]) continue;
    OpenPath path{w, w, {}, 1};
    VertexIndex at = w;
    while (!in_u[at]) {
      const std::size_t i = move_of[at];
      done[i] = 1;
      path.moves.push_back(c.moves[i]);
      path.sign *= move_sign(g, c.moves[i]);
      at = c.moves[i].head;
    }
    path.end = at;
    d.paths.push_back(std::move(path));
  }

  for (std::size_t i = 0; i < c.moves.size(); ++i) {
    if (done[i]) continue;
    Circle circle;
    std::size_t j = i;
    while (!done[j]) {
      done[j] = 1;
      circle.moves.push_back(c.moves[j]);
      circle.sign *= move_sign(g, c.moves[j]);
      j = move_of[c.moves[j].head];
    }
    d.circles.push_back(std::move(circle));
  }

  // Cycle structure of the completed permutation.
  std::vector<VertexIndex> image(n);
  for (VertexIndex v = 0; v < n; ++v) image[v] = v;
  for (const Move& m : c.moves) image[m.tail] = m.head;
  for (std::size_t i = 0; i < c.restriction.u.size(); ++i)
    image[c.restriction.u[i]] = c.restriction.w[i];
  std::vector<char> visited(n, 0);
  for (VertexIndex v = 0; v < n; ++v) {
    if (visited[v]) continue;
    std::size_t length = 0;
    for (VertexIndex x = v; !visited[x]; x = image[x]) {
      visited[x] = 1;
      ++length;
    }
    if (length >= 2 && length % 2 == 0) ++d.even_circles;
  }

  d.backstep_count = d.backsteps.size();
  for (const Circle& circle : d.circles) d.negative_components += circle.sign < 0;
  for (const OpenPath& path : d.paths) d.negative_components += path.sign < 0;
  return d;
}

Contributor unreduce(const Contributor& c) {
  Contributor out;
  out.moves = c.moves;
  for (std::size_t i = 0; i < c.restriction.u.size(); ++i)
    out.moves.push_back(Move{c.restriction.u[i], kVirtualEdge, 0, 0, c.restriction.w[i]});
  std::sort(out.moves.begin(), out.moves.end(),
            [](const Move& a, const Move& b) { return a.tail < b.tail; });
  return out;
}

int sgn_d(const ComponentDecomposition& d) {
  return parity_sign(d.even_circles + d.negative_components + d.backstep_count);
}

int sgn_p(const ComponentDecomposition& d) {
  return parity_sign(d.negative_components + d.backstep_count);
}

int sgn_d(const IncidenceStructure& g, const Contributor& c) { return sgn_d(decompose(g, c)); }
int sgn_p(const IncidenceStructure& g, const Contributor& c) { return sgn_p(decompose(g, c)); }

int contributor_sign(const IncidenceStructure& g, const Contributor& c, Form form) {
  const ComponentDecomposition d = decompose(g, c);
  return form == Form::Determinant ? sgn_d(d) : sgn_p(d);
}

Integer transpedance_bruteforce(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                VertexIndex w1, VertexIndex w2, Form form,
                                const EnumerationLimits& limits) {
  const Restriction r{{u1, u2}, {w1, w2}};
  check_restriction(g, r);
  if (u1 == u2 || w1 == w2) return 0;

  std::atomic<std::size_t> counter{0};
  auto signed_sum = [&](auto&& pick) {
    long long sum = 0;
    Search search(g, r, limits.max_contributors, counter);
    search.run_partition(pick, [&](const Contributor& c) { sum += contributor_sign(g, c, form); });
    return sum;
  };

  const unsigned threads = std::max(1u, limits.threads);
  if (threads == 1) return signed_sum([](std::size_t) { return true; });

  std::vector<long long> partial(threads, 0);
  std::vector<std::exception_ptr> failures(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        partial[t] = signed_sum([&](std::size_t i) { return i % threads == t; });
      } catch (...) {
        failures[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  Integer total = 0;
  for (long long p : partial) total += p;
  return total;
}

Integer transpedance_d_bruteforce(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                  VertexIndex w1, VertexIndex w2,
                                  const EnumerationLimits& limits) {
  return transpedance_bruteforce(g, u1, u2, w1, w2, Form::Determinant, limits);
}

Integer transpedance_p_bruteforce(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                  VertexIndex w1, VertexIndex w2,
                                  const EnumerationLimits& limits) {
  return transpedance_bruteforce(g, u1, u2, w1, w2, Form::Permanent, limits);
}

}  // namespace kirch
