#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "kirch/contributor.hpp"
#include "kirch/error.hpp"
#include "oracles.hpp"

using namespace kirch;
using namespace kirch::testing;

namespace {

std::size_t count_identity(const std::vector<Contributor>& cs) {
  std::size_t n = 0;
  for (const Contributor& c : cs) {
    bool all = true;
    for (const Move& m : c.moves) all = all && m.is_backstep();
    n += all;
  }
  return n;
}

}  // namespace

TEST_CASE("contributor counts") {
  const auto single = from_signed_edges({"a", "b"}, {{"e", "a", "b", 1}});
  CHECK(count_contributors(single) == 2);

  const auto all = enumerate_contributors(k3());
  CHECK(all.size() == 16);
  CHECK(count_identity(all) == 8);
  std::size_t transpositions = 0, three_circles = 0;
  for (const Contributor& c : all) {
    const auto d = decompose(k3(), c);
    for (const Circle& circle : d.circles) {
      transpositions += circle.length() == 2;
      three_circles += circle.length() == 3;
    }
  }
  CHECK(transpositions == 6);
  CHECK(three_circles == 2);
  CHECK(count_contributors(p3()) == 4);
  CHECK(count_contributors(triple_edge()) == 6);
}

TEST_CASE("enumeration is duplicate-free and matches perm of the signless Laplacian") {
  for (const IncidenceStructure& g : random_corpus(40)) {
    auto all = enumerate_contributors(g);
    std::set<Contributor> unique(all.begin(), all.end());
    CHECK(unique.size() == all.size());
    CHECK(Integer(all.size()) == permanent(signless_laplacian(g)));
    for (const Contributor& c : all) validate_contributor(g, c);
  }
}

TEST_CASE("hypergraph contributors are counted by the permanent of |H||H|^T") {
  for (const IncidenceStructure& g : {fig6_hypergraph(), triple_edge()}) {
    const IntMatrix l = laplacian(g.with_uniform_sign(-1));
    CHECK(Integer(count_contributors(g)) == permanent(l));
  }
}

TEST_CASE("reduced nonzero contributors of K3") {
  const IncidenceStructure g = k3();
  const auto ab_ab = enumerate_reduced_nonzero(g, {{0, 1}, {0, 1}});
  REQUIRE(ab_ab.size() == 2);
  for (const Contributor& c : ab_ab) {
    REQUIRE(c.moves.size() == 1);
    CHECK(c.moves[0].tail == 2);
    CHECK(c.moves[0].is_backstep());
  }
  const auto ab_ac = enumerate_reduced_nonzero(g, {{0, 1}, {0, 2}});
  REQUIRE(ab_ac.size() == 1);
  CHECK(ab_ac[0].moves[0].head == 1);
  CHECK(enumerate_reduced_nonzero(g, {{0, 0}, {0, 1}}).empty());
  CHECK(enumerate_reduced_nonzero(g, {{0, 1}, {2, 2}}).empty());
  CHECK_THROWS_AS(enumerate_reduced_nonzero(g, {{0, 7}, {0, 1}}), InvalidInput);
}

TEST_CASE("decomposition counters") {
  const IncidenceStructure g = k3();
  const Contributor backstep = enumerate_reduced_nonzero(g, {{0, 1}, {0, 1}})[0];
  auto d = decompose(g, backstep);
  CHECK(d.even_circles == 0);
  CHECK(d.negative_components == 0);
  CHECK(d.backstep_count == 1);
  CHECK(sgn_d(d) == -1);

  const Contributor forced = enumerate_reduced_nonzero(g, {{0, 1}, {0, 2}})[0];
  d = decompose(g, forced);
  CHECK(d.even_circles == 1);
  CHECK(d.negative_components == 0);
  CHECK(d.backstep_count == 0);
  REQUIRE(d.paths.size() == 1);
  CHECK(d.paths[0].start == 2);
  CHECK(d.paths[0].end == 1);

  Contributor identity;
  for (VertexIndex v = 0; v < 3; ++v) identity.moves.push_back(backstep_move(g, v == 2 ? 1 : 0, v));
  CHECK(sgn_p(g, identity) == -1);

  // C5 against (1,3),(1,2): 2 -> 3 and the 4-5 two-circle.
  const IncidenceStructure c5 = cycle(5);
  Contributor two_circle;
  two_circle.restriction = {{0, 2}, {0, 1}};
  two_circle.moves = {adjacency_move(c5, 1, 1), adjacency_move(c5, 3, 3), adjacency_move(c5, 3, 4)};
  validate_contributor(c5, two_circle);
  d = decompose(c5, two_circle);
  CHECK(d.even_circles == 2);
  CHECK(d.negative_components == 0);
  CHECK(d.backstep_count == 0);
  CHECK(sgn_d(d) == 1);
}

TEST_CASE("unreducing closes every path with a virtual move") {
  const IncidenceStructure g = cycle(5);
  for (const Contributor& c : enumerate_reduced_nonzero(g, {{0, 2}, {0, 1}})) {
    const Contributor closed = unreduce(c);
    CHECK(closed.moves.size() == 5);
    std::size_t virtual_moves = 0;
    for (const Move& m : closed.moves) virtual_moves += m.is_virtual();
    CHECK(virtual_moves == 2);
    std::set<VertexIndex> heads;
    for (const Move& m : closed.moves) heads.insert(m.head);
    CHECK(heads.size() == 5);
  }
}

TEST_CASE("circle signs") {
  // Two parallel edges make a 2-circle whose sign is their product; one edge
  // traversed both ways is always positive.
  const auto g = from_signed_edges({"a", "b"}, {{"p", "a", "b", 1}, {"n", "a", "b", -1}});
  std::size_t mixed = 0, repeated = 0;
  for (const Contributor& c : enumerate_contributors(g)) {
    const auto d = decompose(g, c);
    if (d.circles.empty()) continue;
    REQUIRE(d.circles.size() == 1);
    const Circle& circle = d.circles[0];
    if (circle.moves[0].edge != circle.moves[1].edge) {
      ++mixed;
      CHECK(circle.sign == -1);
    } else {
      ++repeated;
      CHECK(circle.sign == 1);
    }
  }
  CHECK(mixed == 2);
  CHECK(repeated == 2);

  for (const Contributor& c : enumerate_contributors(k3(-1))) {
    const auto d = decompose(k3(-1), c);
    for (const Circle& circle : d.circles)
      CHECK(circle.sign == (circle.length() == 2 ? 1 : -1));
  }
}

TEST_CASE("even circles match the cycle type of the completed permutation") {
  for (const IncidenceStructure& g : random_corpus(30)) {
    const std::size_t n = g.vertex_count();
    for (VertexIndex u2 = 1; u2 < n; ++u2)
      for (VertexIndex w2 = 0; w2 < n; ++w2) {
        if (w2 == 1) continue;
        for (const Contributor& c : enumerate_reduced_nonzero(g, {{0, u2}, {1, w2}})) {
          std::vector<VertexIndex> image(n);
          for (const Move& m : unreduce(c).moves) image[m.tail] = m.head;
          std::vector<bool> seen(n, false);
          std::size_t even = 0;
          for (VertexIndex v = 0; v < n; ++v) {
            std::size_t length = 0;
            for (VertexIndex x = v; !seen[x]; x = image[x]) {
              seen[x] = true;
              ++length;
            }
            even += length > 0 && length % 2 == 0;
          }
          CHECK(decompose(g, c).even_circles == even);
        }
      }
  }
}

TEST_CASE("brute-force transpedances") {
  CHECK(transpedance_d_bruteforce(k3(), 0, 1, 0, 1) == -2);
  CHECK(transpedance_d_bruteforce(cycle(5), 0, 2, 0, 1) == -3);
  CHECK(transpedance_d_bruteforce(house(-1), 0, 1, 0, 1) == -12);
  CHECK(transpedance_d_bruteforce(house(1), 0, 1, 0, 1) == -8);
  CHECK(transpedance_p_bruteforce(k3(-1), 0, 1, 0, 1) == -2);
  CHECK(transpedance_d_bruteforce(k3(), 0, 0, 0, 1) == 0);
  CHECK(transpedance_p_bruteforce(k3(), 0, 1, 2, 2) == 0);
}

TEST_CASE("brute force agrees with the expansion oracle on signed graphs") {
  for (const IncidenceStructure& g : random_corpus(60)) {
    const IntMatrix l = laplacian(g);
    const std::size_t n = g.vertex_count();
    for (VertexIndex u1 = 0; u1 < n; ++u1)
      for (VertexIndex u2 = 0; u2 < n; ++u2)
        for (VertexIndex w1 = 0; w1 < n; ++w1)
          for (VertexIndex w2 = 0; w2 < n; ++w2)
            for (Form form : {Form::Determinant, Form::Permanent})
              REQUIRE(transpedance_bruteforce(g, u1, u2, w1, w2, form) ==
                      oracle::total_minor_coefficient(l, u1, w1, u2, w2, form));
  }
}

TEST_CASE("hypergraph transpedances match the expansion oracle") {
  const IncidenceStructure g = fig6_hypergraph();
  const IntMatrix l = laplacian(g);
  for (VertexIndex u1 = 0; u1 < 3; ++u1)
    for (VertexIndex u2 = 0; u2 < 3; ++u2)
      for (VertexIndex w1 = 0; w1 < 3; ++w1)
        for (VertexIndex w2 = 0; w2 < 3; ++w2)
          for (Form form : {Form::Determinant, Form::Permanent})
            CHECK(transpedance_bruteforce(g, u1, u2, w1, w2, form) ==
                  oracle::total_minor_coefficient(l, u1, w1, u2, w2, form));
}

TEST_CASE("threaded enumeration gives identical sums") {
  const IncidenceStructure g = random_signed_graph(7, 0.7, 0.4, 99);
  for (unsigned threads : {1u, 2u, 4u}) {
    EnumerationLimits limits;
    limits.threads = threads;
    CHECK(transpedance_d_bruteforce(g, 0, 1, 2, 3, limits) ==
          totalminor_coeff2(laplacian(g), 0, 2, 1, 3));
  }
}

TEST_CASE("the enumeration cap is enforced") {
  EnumerationLimits limits;
  limits.max_contributors = 10;
  CHECK_THROWS_AS(count_contributors(k3(), limits), CapabilityError);
  limits.max_contributors = 16;
  CHECK(count_contributors(k3(), limits) == 16);
}

TEST_CASE("validation rejects inconsistent contributors") {
  const IncidenceStructure g = k3();
  Contributor c;
  c.restriction = {{0, 1}, {0, 1}};
  c.moves = {adjacency_move(g, 1, 2)};  // c -> a, but a is in W
  CHECK_THROWS_AS(validate_contributor(g, c), InvalidInput);
  CHECK_THROWS_AS(decompose(g, c), InvalidInput);
  c.moves = {};
  CHECK_THROWS_AS(validate_contributor(g, c), InvalidInput);
}
