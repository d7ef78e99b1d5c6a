#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "kirch/contributor.hpp"

namespace kirch {

/// The incidence a vertex leaves through.
struct TailChoice {
  VertexIndex vertex;
  EdgeIndex edge;
  std::size_t position;
  bool operator==(const TailChoice&) const = default;
};

/// A tail-equivalence class of a bidirected graph, in compressed form: the
/// least member (every circle packed into backsteps) plus the circles that can
/// be activated independently. Member `mask` activates the circles whose bits
/// are set, so the class is the Boolean lattice on `circles`.
struct BooleanTailClass {
  std::vector<TailChoice> tails;
  Contributor least;
  std::vector<Circle> circles;

  std::size_t rank() const { return circles.size(); }
  Contributor member(std::uint64_t mask) const;
  Contributor maximal() const;
};

/// Visits every nonempty (reduced, when r is non-empty) tail class of a
/// bidirected graph by iterating tail maps. Repeated entries in r.u or r.w
/// give no classes. The cap bounds the number of tail maps examined.
void for_each_boolean_class(const IncidenceStructure& g, const Restriction& r,
                            const std::function<void(const BooleanTailClass&)>& visit,
                            const EnumerationLimits& limits = {});

struct ActivationClass {
  std::vector<TailChoice> tailmap;
  std::vector<Contributor> members;  // least element first
  std::vector<Circle> circles;       // activatable circles (Boolean classes only)
  bool boolean = false;
  std::size_t rank = 0;                 // circle count if Boolean, poset height otherwise
  std::optional<std::size_t> maximal;   // member index, when the maximum is unique
  std::size_t eta = 0;                  // negative circles of the maximal member
  bool positive_circle_free = true;     // no member contains a positive circle
  Integer sum_sgn_d = 0;
};

struct ClassQuery {
  Restriction restriction;  // empty: unrestricted classes
  bool reduced = true;      // false: keep the u_i -> w_i moves (they must exist in G)
};

/// Tail-equivalence classes. Bidirected graphs go through the Boolean
/// construction; other structures enumerate each tail map's members directly
/// and carry no Boolean claim.
std::vector<ActivationClass> tail_classes(const IncidenceStructure& g, const ClassQuery& query = {},
                                          const EnumerationLimits& limits = {});

struct ClassPoset {
  std::size_t size = 0;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (lower, upper)
  std::vector<std::size_t> minimal;
  std::vector<std::size_t> maximal;
  std::vector<std::size_t> rank;  // longest chain below each member
  std::vector<std::pair<std::size_t, std::size_t>> incomparable;
  bool antisymmetric = true;
};

/// Order on a class: c <= c' when the circles of c are among those of c', or,
/// on structures with larger edges, when both use the same incidences and c
/// has more components. The relation is closed transitively before the covers
/// are read off.
ClassPoset class_poset(const IncidenceStructure& g, const ActivationClass& cls);

/// sum over positive-circle-free maximal elements m of sgn_D(m) * 2^eta(m).
Integer transpedance_d_activation(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                  VertexIndex w1, VertexIndex w2,
                                  const EnumerationLimits& limits = {});

/// Class-wise evaluation for either form. For the permanent each class sums to
/// sgn_P(least) * prod over circles of (1 + (-1)^(length + [circle negative])).
Integer transpedance_activation(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                VertexIndex w1, VertexIndex w2, Form form,
                                const EnumerationLimits& limits = {});

/// Members of the singleton reduced classes.
std::vector<Contributor> trivial_reduced_classes(const IncidenceStructure& g, const Restriction& r,
                                                 const EnumerationLimits& limits = {});

}  // namespace kirch
