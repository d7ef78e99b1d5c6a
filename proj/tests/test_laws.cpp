#include "corpus.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "kirch/error.hpp"
#include "kirch/graph_io.hpp"
#include "kirch/laws.hpp"
#include "kirch/matrix.hpp"
#include "oracles.hpp"

using namespace kirch;
using namespace kirch::testing;
using namespace kirch::oracle;

namespace {

Integer label(const EdgeLabeling& l, VertexIndex w1, VertexIndex w2) {
  for (const EdgeLabel& e : l.labels)
    if (e.w1 == w1 && e.w2 == w2) return e.value;
  FAIL("no label for pair");
  return 0;
}

IncidenceStructure st_negative() {
  return from_signed_edges({"a", "b", "c", "d"}, {{"ab", "a", "b", -1},
                                                   {"bc", "b", "c", 1},
                                                   {"cd", "c", "d", 1},
                                                   {"da", "d", "a", 1},
                                                   {"ac", "a", "c", 1}});
}

const Method kAll[] = {Method::Contributor, Method::Activation, Method::Cofactor};

}  // namespace

TEST_CASE("method names round trip") {
  for (Method m : {Method::Contributor, Method::Activation, Method::Cofactor, Method::Arborescence})
    CHECK(parse_method(method_name(m)) == m);
  CHECK(parse_form("det") == Form::Determinant);
  CHECK(parse_form("perm") == Form::Permanent);
  CHECK_THROWS_AS(parse_method("magic"), InvalidInput);
  CHECK_THROWS_AS(parse_form("pfaffian"), InvalidInput);
}

TEST_CASE("house values by every method") {
  for (Method m : kAll) {
    CHECK(transpedance(house(-1), 0, 1, 0, 1, Form::Determinant, m) == -12);
    CHECK(transpedance(house(1), 0, 1, 0, 1, Form::Determinant, m) == -8);
  }
  CHECK(transpedance(house(1), 0, 1, 0, 1, Form::Determinant, Method::Arborescence) == -8);
  CHECK_THROWS_AS(transpedance(house(-1), 0, 1, 0, 1, Form::Determinant, Method::Arborescence),
                  CapabilityError);
  CHECK_THROWS_AS(transpedance(house(1), 0, 1, 0, 1, Form::Permanent, Method::Arborescence),
                  CapabilityError);
}

TEST_CASE("permanent form on the all-negative triangle") {
  for (Method m : kAll) CHECK(transpedance(k3(-1), 0, 1, 0, 1, Form::Permanent, m) == -2);
}

TEST_CASE("methods agree with the matrix oracle on random signed graphs") {
  for (const IncidenceStructure& g : random_corpus(30)) {
    const IntMatrix lap = laplacian(g);
    const std::size_t n = g.vertex_count();
    for (VertexIndex u1 = 0; u1 < n; ++u1)
      for (VertexIndex u2 = 0; u2 < n; ++u2)
        for (VertexIndex w1 = 0; w1 < n; ++w1)
          for (VertexIndex w2 = 0; w2 < n; ++w2) {
            if (u1 == u2 || w1 == w2) continue;
            for (Form f : {Form::Determinant, Form::Permanent}) {
              const Integer expected = total_minor_coefficient(lap, u1, w1, u2, w2, f);
              for (Method m : kAll) CHECK(transpedance(g, u1, u2, w1, w2, f, m) == expected);
            }
          }
  }
}

TEST_CASE("triangle labels") {
  const EdgeLabeling l = label_edges(k3(), 0, 1, Form::Determinant, Method::Contributor);
  CHECK(l.labels.size() == 6);
  CHECK(label(l, 0, 1) == -2);
  CHECK(label(l, 0, 2) == -1);
  CHECK(label(l, 2, 1) == -1);
  CHECK(label(l, 1, 0) == 2);
  REQUIRE(l.tau.has_value());
  CHECK(*l.tau == 3);
}

TEST_CASE("pentagon labels") {
  const EdgeLabeling l = label_edges(cycle(5), 0, 2, Form::Determinant, Method::Activation);
  CHECK(label(l, 0, 1) == -3);
  CHECK(label(l, 0, 4) == -2);
  CHECK(label(l, 1, 2) == -3);
  CHECK(*l.tau == 5);
}

TEST_CASE("signed labelings carry no tree number") {
  CHECK_FALSE(label_edges(house(-1), 0, 1, Form::Determinant, Method::Cofactor).tau.has_value());
}

TEST_CASE("square vertex balances") {
  const VertexConservation v = check_vertex_conservation(cycle(4), 0, 2);
  CHECK(v.verdict.holds);
  CHECK(v.tau == 4);
  REQUIRE(v.balances.size() == 4);
  const int expected[] = {4, 0, -4, 0};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(v.balances[i].net == expected[i]);
    CHECK(v.balances[i].expected == expected[i]);
    CHECK(v.balances[i].trivial_out - v.balances[i].trivial_in == expected[i]);
  }
}

TEST_CASE("conservation on all-positive graphs") {
  for (std::size_t n = 3; n <= 4; ++n)
    for (const IncidenceStructure& g : connected_simple_graphs(n)) {
      const auto sink = static_cast<VertexIndex>(n - 1);
      const CycleConservation c = check_cycle_conservation(g, 0, sink);
      CHECK(c.verdict.holds);
      CHECK(c.residuals.empty());
      const VertexConservation v = check_vertex_conservation(g, 0, sink);
      CHECK(v.verdict.holds);
      CHECK(v.balances[0].net == spanning_tree_count(g));
    }
}

TEST_CASE("a negative edge away from the source breaks conservation") {
  const CycleConservation c = check_cycle_conservation(house(-1), 0, 1);
  CHECK_FALSE(c.verdict.holds);
  CHECK_FALSE(c.verdict.guaranteed);
  CHECK_FALSE(c.residuals.empty());
  CHECK_FALSE(c.verdict.witness.empty());
  for (const TripleResidual& r : c.residuals) CHECK(r.residual != 0);

  const VertexConservation v = check_vertex_conservation(house(-1), 0, 1);
  CHECK_FALSE(v.verdict.holds);
  CHECK(v.tau == 11);
}

TEST_CASE("a negative source-sink edge keeps every law") {
  const LawReport r = full_report(st_negative(), 0, 1);
  CHECK_FALSE(r.all_positive);
  CHECK(r.all_hold());
  CHECK(r.cycle_residuals.empty());
  CHECK(r.tau == 8);
}

TEST_CASE("full report on all-positive graphs") {
  for (const IncidenceStructure& g : {k3(), p3(), cycle(4), cycle(5), house(1)}) {
    const LawReport r = full_report(g, 0, 1);
    CHECK(r.laws.size() == 8);
    for (const LawVerdict& law : r.laws) {
      INFO(law.law << ": " << law.witness);
      CHECK(law.holds);
      CHECK(law.checked > 0);
    }
    CHECK(r.law("path-property").holds);
  }
  CHECK_THROWS(full_report(k3(), 0, 1).law("nonsense"));
}

TEST_CASE("unconditional laws hold on signed graphs") {
  for (const IncidenceStructure& g : random_corpus(20)) {
    const LawReport r = full_report(g, 0, 1);
    for (const char* name : {"degeneracy", "energy-reversal", "path-property", "boolean-classes",
                             "permanent-count", "parity-polarity"}) {
      INFO(name);
      CHECK(r.law(name).holds);
    }
  }
}

TEST_CASE("permanent laws") {
  for (const IncidenceStructure& g : {k3(), k3(-1), cycle(4), house(-1)}) {
    const LawVerdict v = check_permanent_laws(g, 0, 1);
    INFO(v.witness);
    CHECK(v.holds);
  }
}
