#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kirch/activation.hpp"
#include "kirch/arborescence.hpp"
#include "kirch/contributor.hpp"

namespace kirch {

enum class Method { Contributor, Activation, Cofactor, Arborescence };

Method parse_method(std::string_view name);
std::string_view method_name(Method m);
Form parse_form(std::string_view name);  // "det" or "perm"
std::string_view form_name(Form f);

struct EvaluationOptions {
  EnumerationLimits limits;
  std::size_t max_permanent_order = kDefaultPermanentLimit;
};

/// [u1u2, w1w2] in the contributor convention of `form`. The arborescence
/// method gives (-1)^|V| times Tutte's value and exists only for the
/// determinant on all-positive graphs.
Integer transpedance(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2, VertexIndex w1,
                     VertexIndex w2, Form form, Method method,
                     const EvaluationOptions& options = {});

struct EdgeLabel {
  VertexIndex w1;
  VertexIndex w2;
  std::size_t multiplicity;
  Integer value;
};

struct EdgeLabeling {
  VertexIndex source;
  VertexIndex sink;
  Form form;
  Method method;
  std::vector<EdgeLabel> labels;  // every ordered adjacent pair, lexicographic
  std::optional<Integer> tau;     // all-positive graphs only
};

EdgeLabeling label_edges(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2, Form form,
                         Method method, const EvaluationOptions& options = {});

struct TripleResidual {
  VertexIndex a, b, c;
  Integer residual;  // [u1u2,ab]_D + [u1u2,bc]_D + [u1u2,ca]_D
};

struct VertexBalance {
  VertexIndex vertex;
  Integer net;       // sum over neighbours y of mult(v,y) * Tutte [u1u2, vy]
  Integer expected;  // tau * (delta(u1,v) - delta(u2,v))
  Integer trivial_out;  // trivial contributors carrying the flow out of v
  Integer trivial_in;
};

struct LawVerdict {
  std::string law;
  bool holds = true;
  bool guaranteed = true;  // false where the law may legitimately fail (signed graphs)
  std::size_t checked = 0;
  std::string witness;  // first failure, empty when the law holds
  std::string note;
};

struct CycleConservation {
  LawVerdict verdict;
  std::vector<TripleResidual> residuals;  // nonzero ones only
};

struct VertexConservation {
  LawVerdict verdict;
  std::vector<VertexBalance> balances;
  Integer tau = 0;
};

CycleConservation check_cycle_conservation(const IncidenceStructure& g, VertexIndex u1,
                                           VertexIndex u2, Method method = Method::Contributor,
                                           const EvaluationOptions& options = {});
VertexConservation check_vertex_conservation(const IncidenceStructure& g, VertexIndex u1,
                                             VertexIndex u2, Method method = Method::Contributor,
                                             const EvaluationOptions& options = {});
LawVerdict check_permanent_laws(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                Method method = Method::Contributor,
                                const EvaluationOptions& options = {});

struct LawReport {
  VertexIndex source;
  VertexIndex sink;
  Method method;
  bool all_positive;
  std::vector<LawVerdict> laws;
  std::vector<TripleResidual> cycle_residuals;
  std::vector<VertexBalance> vertex_balances;
  Integer tau = 0;

  bool all_hold() const;
  const LawVerdict& law(std::string_view name) const;
};

/// Runs every law: degeneracy, energy-reversal, cycle-conservation,
/// vertex-conservation, path-property, boolean-classes, permanent-count and
/// parity-polarity.
LawReport full_report(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                      Method method = Method::Contributor, const EvaluationOptions& options = {});

}  // namespace kirch
