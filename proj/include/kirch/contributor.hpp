#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kirch/incidence.hpp"
#include "kirch/integer.hpp"
#include "kirch/matrix.hpp"

namespace kirch {

/// One directed step of a contributor: leave `tail` through the incidence at
/// `tail_position` of `edge`, arrive through `head_position`. A backstep
/// enters and leaves through the same incidence. Virtual moves (the u -> w
/// maps a reduced contributor was cut against) carry kVirtualEdge.
struct Move {
  VertexIndex tail;
  EdgeIndex edge;
  std::size_t tail_position;
  std::size_t head_position;
  VertexIndex head;

  bool is_backstep() const { return edge != kVirtualEdge && tail_position == head_position; }
  bool is_virtual() const { return edge == kVirtualEdge; }
  auto operator<=>(const Move&) const = default;
};

/// Vertex lists a reduced contributor is taken against; both empty for total
/// contributors.
struct Restriction {
  std::vector<VertexIndex> u;
  std::vector<VertexIndex> w;
  bool operator==(const Restriction&) const = default;
};

/// Moves ordered by tail vertex. For a reduced contributor the tails are V\U
/// and the heads V\W.
struct Contributor {
  std::vector<Move> moves;
  Restriction restriction;
  bool operator==(const Contributor&) const = default;
  auto operator<=>(const Contributor& other) const { return moves <=> other.moves; }
};

struct Circle {
  std::vector<Move> moves;  // closed walk, starting at its smallest tail
  int sign = 1;
  std::size_t length() const { return moves.size(); }
};

struct OpenPath {
  VertexIndex start;  // in W\U
  VertexIndex end;    // in U\W
  std::vector<Move> moves;
  int sign = 1;
};

struct ComponentDecomposition {
  std::vector<Circle> circles;
  std::vector<Move> backsteps;
  std::vector<OpenPath> paths;
  std::size_t even_circles = 0;         // ec, counted on the unreduced completion
  std::size_t negative_components = 0;  // nc: negative circles and open paths
  std::size_t backstep_count = 0;       // bs

  std::size_t negative_circles() const;
};

struct EnumerationLimits {
  std::size_t max_contributors = 10'000'000;
  unsigned threads = 1;
};

/// Every contributor of g, depth-first over vertices in order. `visit` sees a
/// reused buffer; copy it to keep it. Exceeding the cap throws CapabilityError.
void for_each_contributor(const IncidenceStructure& g,
                          const std::function<void(const Contributor&)>& visit,
                          const EnumerationLimits& limits = {});
std::vector<Contributor> enumerate_contributors(const IncidenceStructure& g,
                                                const EnumerationLimits& limits = {});
std::size_t count_contributors(const IncidenceStructure& g, const EnumerationLimits& limits = {});

/// Reduced contributors against (u, w) whose moves all exist in g. Repeated
/// entries in u or in w give the empty set.
void for_each_reduced_nonzero(const IncidenceStructure& g, const Restriction& r,
                              const std::function<void(const Contributor&)>& visit,
                              const EnumerationLimits& limits = {});
std::vector<Contributor> enumerate_reduced_nonzero(const IncidenceStructure& g,
                                                   const Restriction& r,
                                                   const EnumerationLimits& limits = {});

/// Throws InvalidInput unless c is a nonzero reduced contributor of g against
/// its restriction.
void validate_contributor(const IncidenceStructure& g, const Contributor& c);

ComponentDecomposition decompose(const IncidenceStructure& g, const Contributor& c);

/// Closes c with the virtual moves u_i -> w_i.
Contributor unreduce(const Contributor& c);

int sgn_d(const ComponentDecomposition& d);
int sgn_p(const ComponentDecomposition& d);
int sgn_d(const IncidenceStructure& g, const Contributor& c);
int sgn_p(const IncidenceStructure& g, const Contributor& c);
int contributor_sign(const IncidenceStructure& g, const Contributor& c, Form form);

/// Sum of sgn_D (or sgn_P) over the nonzero reduced contributors against
/// ((u1,u2),(w1,w2)).
Integer transpedance_bruteforce(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                VertexIndex w1, VertexIndex w2, Form form,
                                const EnumerationLimits& limits = {});
Integer transpedance_d_bruteforce(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                  VertexIndex w1, VertexIndex w2,
                                  const EnumerationLimits& limits = {});
Integer transpedance_p_bruteforce(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                  VertexIndex w1, VertexIndex w2,
                                  const EnumerationLimits& limits = {});

/// Move constructors used by the other modules.
Move adjacency_move(const IncidenceStructure& g, EdgeIndex e, VertexIndex tail);
Move backstep_move(const IncidenceStructure& g, EdgeIndex e, VertexIndex tail);

}  // namespace kirch
