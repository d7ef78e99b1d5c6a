#pragma once

#include "kirch/incidence.hpp"

namespace kirch::testing {

inline IncidenceStructure k3(int sign = 1) {
  return from_signed_edges({"a", "b", "c"},
                           {{"ab", "a", "b", sign}, {"ac", "a", "c", sign}, {"bc", "b", "c", sign}});
}

inline IncidenceStructure p3() {
  return from_signed_edges({"a", "b", "c"}, {{"ab", "a", "b", 1}, {"bc", "b", "c", 1}});
}

inline IncidenceStructure cycle(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  std::vector<SignedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& a = names[i];
    const std::string& b = names[(i + 1) % n];
    edges.push_back({a + b, a, b, 1});
  }
  return from_signed_edges(names, edges);
}

inline IncidenceStructure house(int sign34) {
  return from_signed_edges({"1", "2", "3", "4", "5"}, {{"12", "1", "2", 1},
                                                        {"23", "2", "3", 1},
                                                        {"34", "3", "4", sign34},
                                                        {"45", "4", "5", 1},
                                                        {"51", "5", "1", 1},
                                                        {"35", "3", "5", 1}});
}

inline IncidenceStructure fig6_hypergraph() {
  return IncidenceStructure({"v1", "v2", "v3"},
                            {Edge{"e1", {{0, 1}, {1, -1}, {2, -1}}}, Edge{"e2", {{1, 1}, {2, 1}}}});
}

inline IncidenceStructure triple_edge() {
  return IncidenceStructure({"x", "y", "z"}, {Edge{"e", {{0, 1}, {1, 1}, {2, 1}}}});
}

}  // namespace kirch::testing
