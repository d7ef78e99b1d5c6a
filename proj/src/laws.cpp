#include "kirch/laws.hpp"

#include <algorithm>
#include <stdexcept>

#include "kirch/error.hpp"

namespace kirch {

namespace {

void check_vertex(const IncidenceStructure& g, VertexIndex v) {
  if (v >= g.vertex_count()) throw InvalidInput("unknown vertex index");
}

std::string names(const IncidenceStructure& g, std::initializer_list<VertexIndex> vs) {
  std::string out = "(";
  for (VertexIndex v : vs) {
    if (out.size() > 1) out += ",";
    out += g.vertex_name(v);
  }
  return out + ")";
}

// A record of the first failure, and a running count of what was checked.
class Tally {
 public:
  explicit Tally(std::string law, bool guaranteed = true) {
    verdict_.law = std::move(law);
    verdict_.guaranteed = guaranteed;
  }

  void expect(bool ok, const std::function<std::string()>& witness) {
    ++verdict_.checked;
    if (ok || !verdict_.holds) {
      if (!ok) verdict_.holds = false;
      return;
    }
    verdict_.holds = false;
    verdict_.witness = witness();
  }

  void note(std::string text) { verdict_.note = std::move(text); }
  LawVerdict done() { return std::move(verdict_); }

 private:
  LawVerdict verdict_;
};

// Values [s t, a b] for every ordered pair a != b.
class PairTable {
 public:
  PairTable(const IncidenceStructure& g, VertexIndex s, VertexIndex t, Form form, Method method,
            const EvaluationOptions& options)
      : n_(g.vertex_count()), values_(n_ * n_) {
    for (VertexIndex a = 0; a < n_; ++a)
      for (VertexIndex b = 0; b < n_; ++b)
        if (a != b) values_[a * n_ + b] = transpedance(g, s, t, a, b, form, method, options);
  }

  const Integer& operator()(VertexIndex a, VertexIndex b) const { return values_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<Integer> values_;
};

template <typename F>
void for_each_adjacent_pair(const IncidenceStructure& g, F&& f) {
  for (VertexIndex a = 0; a < g.vertex_count(); ++a)
    for (VertexIndex b = 0; b < g.vertex_count(); ++b)
      if (a != b) {
        const std::size_t mult = multiplicity(g, a, b);
        if (mult > 0) f(a, b, mult);
      }
}

Method permanent_method(Method m) { return m == Method::Arborescence ? Method::Contributor : m; }

LawVerdict degeneracy(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2, Method method,
                      const EvaluationOptions& options) {
  Tally tally("degeneracy");
  const std::size_t n = g.vertex_count();
  for (Form form : {Form::Determinant, Form::Permanent}) {
    const Method m = form == Form::Permanent ? permanent_method(method) : method;
    const std::string tag(form_name(form));
    for (VertexIndex w = 0; w < n; ++w) {
      const Integer v = transpedance(g, u1, u2, w, w, form, m, options);
      tally.expect(v == 0, [&] {
        return tag + " " + names(g, {u1, u2, w, w}) + " = " + to_string(v);
      });
    }
    for (VertexIndex u : {u1, u2})
      for (VertexIndex a = 0; a < n; ++a)
        for (VertexIndex b = 0; b < n; ++b) {
          if (a == b) continue;
          const Integer v = transpedance(g, u, u, a, b, form, m, options);
          tally.expect(v == 0, [&] {
            return tag + " " + names(g, {u, u, a, b}) + " = " + to_string(v);
          });
        }
  }
  return tally.done();
}

LawVerdict energy_reversal(const IncidenceStructure& g, const PairTable& forward,
                           const PairTable& backward) {
  Tally tally("energy-reversal");
  for_each_adjacent_pair(g, [&](VertexIndex a, VertexIndex b, std::size_t) {
    tally.expect(forward(a, b) == -forward(b, a), [&] {
      return "w-swap at " + names(g, {a, b}) + ": " + to_string(forward(a, b)) + " vs " +
             to_string(forward(b, a));
    });
    tally.expect(backward(a, b) == -forward(a, b), [&] {
      return "u-swap at " + names(g, {a, b}) + ": " + to_string(forward(a, b)) + " vs " +
             to_string(backward(a, b));
    });
  });
  return tally.done();
}

CycleConservation cycle_conservation(const IncidenceStructure& g, const PairTable& d) {
  CycleConservation out;
  Tally tally("cycle-conservation", g.all_positive());
  const std::size_t n = g.vertex_count();
  for (VertexIndex a = 0; a < n; ++a)
    for (VertexIndex b = a + 1; b < n; ++b)
      for (VertexIndex c = b + 1; c < n; ++c) {
        Integer residual = d(a, b) + d(b, c) + d(c, a);
        tally.expect(residual == 0, [&] {
          return "triple " + names(g, {a, b, c}) + " residual " + to_string(residual);
        });
        if (residual != 0) out.residuals.push_back({a, b, c, std::move(residual)});
      }
  if (!g.all_positive()) tally.note("not guaranteed on signed graphs; residuals reported");
  out.verdict = tally.done();
  return out;
}

VertexConservation vertex_conservation(const IncidenceStructure& g, VertexIndex u1,
                                       VertexIndex u2, const PairTable& d,
                                       const EvaluationOptions& options) {
  VertexConservation out;
  const std::size_t n = g.vertex_count();
  out.tau = tree_number(laplacian(g.with_uniform_sign(1)));
  const int polarity = parity_sign(n);

  // Flow carried by trivial classes: p(v, y) counts the ones with sgn_T = +1.
  std::vector<Integer> carried(n * n);
  for_each_adjacent_pair(g, [&](VertexIndex a, VertexIndex b, std::size_t) {
    for (const Contributor& c : trivial_reduced_classes(g, {{u1, u2}, {a, b}}, options.limits))
      if (contributor_to_arbor(g, c).sign > 0) ++carried[a * n + b];
  });

  Tally labels("vertex-conservation", g.all_positive());
  bool counts_ok = true;
  std::string count_witness;
  for (VertexIndex v = 0; v < n; ++v) {
    VertexBalance bal{v, 0, 0, 0, 0};
    bal.expected = out.tau * ((v == u1 ? 1 : 0) - (v == u2 ? 1 : 0));
    for (VertexIndex y = 0; y < n; ++y) {
      if (y == v) continue;
      const std::size_t mult = multiplicity(g, v, y);
      if (mult == 0) continue;
      const long long m = static_cast<long long>(mult);
      bal.net += d(v, y) * polarity * m;
      bal.trivial_out += carried[v * n + y] * m;
      bal.trivial_in += carried[y * n + v] * m;
    }
    labels.expect(bal.net == bal.expected, [&] {
      return "vertex " + g.vertex_name(v) + " net " + to_string(bal.net) + ", expected " +
             to_string(bal.expected);
    });
    if (bal.trivial_out - bal.trivial_in != bal.expected && counts_ok) {
      counts_ok = false;
      count_witness = "trivial classes at vertex " + g.vertex_name(v) + ": out " +
                      to_string(bal.trivial_out) + ", in " + to_string(bal.trivial_in);
    }
    out.balances.push_back(std::move(bal));
  }
  out.verdict = labels.done();
  if (!counts_ok) {
    // The class counts are structural, so a mismatch is never excused.
    out.verdict.holds = false;
    out.verdict.guaranteed = true;
    out.verdict.witness = count_witness;
  }
  if (!g.all_positive())
    out.verdict.note = "label balance not guaranteed on signed graphs; trivial-class counts are";
  return out;
}

LawVerdict path_property(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                         const EvaluationOptions& options) {
  Tally tally("path-property");
  for_each_adjacent_pair(g, [&](VertexIndex a, VertexIndex b, std::size_t) {
    for_each_reduced_nonzero(
        g, {{u1, u2}, {a, b}},
        [&](const Contributor& c) {
          std::string failure;
          try {
            const SourceSinkPath p = unique_path(g, c);
            const LoadedGraph loaded = local_loading(g, a, b);
            if (p.vertices.front() != u1 || p.vertices.back() != u2)
              failure = "path does not join source and sink";
            for (std::size_t i = 0; failure.empty() && i < p.edges.size(); ++i) {
              const auto e = loaded.graph.find_edge(p.edges[i]);
              const auto& inc = loaded.graph.edge(*e).incidences;
              const bool joins = (inc[0].vertex == p.vertices[i] && inc[1].vertex == p.vertices[i + 1]) ||
                                 (inc[1].vertex == p.vertices[i] && inc[0].vertex == p.vertices[i + 1]);
              if (!joins) failure = "edge " + p.edges[i] + " does not join its path neighbours";
            }
            if (failure.empty() &&
                std::count(p.edges.begin(), p.edges.end(), loaded.graph.edge(loaded.edge).id) != 1)
              failure = "path misses the loaded edge";
          } catch (const InvalidInput& e) {
            failure = e.what();
          }
          tally.expect(failure.empty(),
                       [&] { return "pair " + names(g, {a, b}) + ": " + failure; });
        },
        options.limits);
  });
  return tally.done();
}

LawVerdict boolean_classes(const IncidenceStructure& g, const EvaluationOptions& options) {
  Tally tally("boolean-classes");
  std::size_t total = 0;
  for (const ActivationClass& cls : tail_classes(g, {}, options.limits)) {
    const std::size_t size = cls.members.size();
    total += size;
    tally.expect(cls.rank < 64 && size == (std::size_t{1} << cls.rank), [&] {
      return "class of size " + std::to_string(size) + " has rank " + std::to_string(cls.rank);
    });
    std::vector<Contributor> sorted = cls.members;
    std::sort(sorted.begin(), sorted.end());
    tally.expect(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                 [] { return std::string("class repeats a member"); });
    std::size_t identities = 0;
    bool shared_tails = true;
    for (const Contributor& c : cls.members) {
      bool identity = true;
      for (std::size_t i = 0; i < c.moves.size(); ++i) {
        identity = identity && c.moves[i].is_backstep();
        const TailChoice& t = cls.tailmap[i];
        shared_tails = shared_tails && c.moves[i].tail == t.vertex &&
                       c.moves[i].edge == t.edge && c.moves[i].tail_position == t.position;
      }
      identities += identity ? 1 : 0;
    }
    const auto& least = cls.members.front().moves;
    const bool least_is_identity =
        std::all_of(least.begin(), least.end(), [](const Move& m) { return m.is_backstep(); });
    tally.expect(identities == 1 && least_is_identity,
                 [&] { return "class holds " + std::to_string(identities) + " identity clones"; });
    tally.expect(shared_tails, [] { return std::string("class members disagree on a tail"); });
  }
  const Integer perm_q = permanent(signless_laplacian(g), options.max_permanent_order);
  tally.expect(Integer(total) == perm_q, [&] {
    return "class sizes sum to " + std::to_string(total) + ", perm(Q) = " + to_string(perm_q);
  });
  return tally.done();
}

LawVerdict permanent_laws(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                          Method method, const EvaluationOptions& options,
                          const PairTable& forward, const PairTable& backward) {
  Tally tally("permanent-count");
  const std::size_t n = g.vertex_count();
  for (VertexIndex w = 0; w < n; ++w) {
    const Integer v = transpedance(g, u1, u2, w, w, Form::Permanent, method, options);
    tally.expect(v == 0, [&] { return "perm degeneracy " + names(g, {u1, u2, w, w}); });
  }
  for_each_adjacent_pair(g, [&](VertexIndex a, VertexIndex b, std::size_t) {
    tally.expect(forward(a, b) == forward(b, a) && backward(a, b) == forward(a, b), [&] {
      return "perm reversal at " + names(g, {a, b}) + ": " + to_string(forward(a, b)) + ", " +
             to_string(forward(b, a)) + ", " + to_string(backward(a, b));
    });
  });
  if (g.all_negative()) {
    for (VertexIndex a = 0; a < n; ++a)
      for (VertexIndex b = 0; b < n; ++b) {
        if (a == b) continue;
        const Integer count =
            enumerate_reduced_nonzero(g, {{u1, u2}, {a, b}}, options.limits).size();
        const Integer expected = count * parity_sign(n);
        tally.expect(forward(a, b) == expected, [&] {
          return "all-negative count at " + names(g, {a, b}) + ": " + to_string(forward(a, b)) +
                 " vs " + to_string(expected);
        });
      }
  } else {
    tally.note("signed count identity applies to all-negative graphs only");
  }
  const Integer contributors = count_contributors(g, options.limits);
  const Integer perm_q = permanent(signless_laplacian(g), options.max_permanent_order);
  tally.expect(contributors == perm_q, [&] {
    return std::string("contributors ") + to_string(contributors) + ", perm(Q) " +
           to_string(perm_q);
  });
  return tally.done();
}

LawVerdict parity_polarity(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                           const PairTable& d) {
  Tally tally("parity-polarity");
  if (!g.all_positive()) {
    tally.note("applies to all-positive graphs only");
    return tally.done();
  }
  const std::size_t n = g.vertex_count();
  const TwoForestTable forests(g);
  const IntMatrix l = laplacian(g);
  for (VertexIndex a = 0; a < n; ++a)
    for (VertexIndex b = 0; b < n; ++b) {
      if (a == b) continue;
      const Integer tutte = forests.tutte_transpedance(u1, u2, a, b);
      const Integer cofactor = ordered_second_cofactor(l, u1, a, u2, b);
      tally.expect(tutte == d(a, b) * parity_sign(n) && cofactor == tutte, [&] {
        return "pair " + names(g, {a, b}) + ": Tutte " + to_string(tutte) + ", cofactor " +
               to_string(cofactor) + ", D " + to_string(d(a, b));
      });
    }
  return tally.done();
}

void check_endpoints(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2) {
  g.require_two_uniform("law checks");
  check_vertex(g, u1);
  check_vertex(g, u2);
  if (u1 == u2) throw InvalidInput("source and sink must differ");
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "contributor") return Method::Contributor;
  if (name == "activation") return Method::Activation;
  if (name == "cofactor") return Method::Cofactor;
  if (name == "arborescence") return Method::Arborescence;
  throw InvalidInput("unknown method '" + std::string(name) + "'");
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Contributor: return "contributor";
    case Method::Activation: return "activation";
    case Method::Cofactor: return "cofactor";
    case Method::Arborescence: return "arborescence";
  }
  return "?";
}

Form parse_form(std::string_view name) {
  if (name == "det") return Form::Determinant;
  if (name == "perm") return Form::Permanent;
  throw InvalidInput("unknown sign '" + std::string(name) + "'");
}

std::string_view form_name(Form f) { return f == Form::Determinant ? "det" : "perm"; }

Integer transpedance(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2, VertexIndex w1,
                     VertexIndex w2, Form form, Method method, const EvaluationOptions& options) {
  for (VertexIndex v : {u1, u2, w1, w2}) check_vertex(g, v);
  switch (method) {
    case Method::Contributor:
      return transpedance_bruteforce(g, u1, u2, w1, w2, form, options.limits);
    case Method::Activation: {
      if (g.is_two_uniform()) return transpedance_activation(g, u1, u2, w1, w2, form, options.limits);
      Integer total = 0;
      for (const ActivationClass& cls : tail_classes(g, {{{u1, u2}, {w1, w2}}}, options.limits))
        for (const Contributor& c : cls.members) total += contributor_sign(g, c, form);
      return total;
    }
    case Method::Cofactor:
      return totalminor_coeff2(laplacian(g), u1, w1, u2, w2, form, options.max_permanent_order);
    case Method::Arborescence:
      if (form != Form::Determinant)
        throw CapabilityError("the arborescence method has no permanent form");
      if (!g.is_two_uniform() || !g.all_positive())
        throw CapabilityError("the arborescence method needs an all-positive graph");
      return tutte_transpedance(g, u1, u2, w1, w2) * parity_sign(g.vertex_count());
  }
  throw InvalidInput("unknown method");
}

EdgeLabeling label_edges(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2, Form form,
                         Method method, const EvaluationOptions& options) {
  check_vertex(g, u1);
  check_vertex(g, u2);
  if (u1 == u2) throw InvalidInput("source and sink must differ");
  if (method == Method::Arborescence && (form != Form::Determinant || !g.all_positive() ||
                                         !g.is_two_uniform()))
    throw CapabilityError("the arborescence method needs an all-positive graph and det sign");
  EdgeLabeling out{u1, u2, form, method, {}, std::nullopt};
  for (VertexIndex a = 0; a < g.vertex_count(); ++a)
    for (VertexIndex b = 0; b < g.vertex_count(); ++b) {
      if (a == b) continue;
      const std::size_t mult = multiplicity(g, a, b);
      if (mult == 0) continue;
      out.labels.push_back({a, b, mult, transpedance(g, u1, u2, a, b, form, method, options)});
    }
  if (g.is_two_uniform() && g.all_positive()) out.tau = tree_number(laplacian(g));
  return out;
}

CycleConservation check_cycle_conservation(const IncidenceStructure& g, VertexIndex u1,
                                           VertexIndex u2, Method method,
                                           const EvaluationOptions& options) {
  check_endpoints(g, u1, u2);
  return cycle_conservation(g, PairTable(g, u1, u2, Form::Determinant, method, options));
}

VertexConservation check_vertex_conservation(const IncidenceStructure& g, VertexIndex u1,
                                             VertexIndex u2, Method method,
                                             const EvaluationOptions& options) {
  check_endpoints(g, u1, u2);
  return vertex_conservation(g, u1, u2, PairTable(g, u1, u2, Form::Determinant, method, options),
                             options);
}

LawVerdict check_permanent_laws(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2,
                                Method method, const EvaluationOptions& options) {
  check_endpoints(g, u1, u2);
  method = permanent_method(method);
  return permanent_laws(g, u1, u2, method, options,
                        PairTable(g, u1, u2, Form::Permanent, method, options),
                        PairTable(g, u2, u1, Form::Permanent, method, options));
}

bool LawReport::all_hold() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawVerdict& v) { return v.holds; });
}

const LawVerdict& LawReport::law(std::string_view name) const {
  for (const LawVerdict& v : laws)
    if (v.law == name) return v;
  throw std::out_of_range("no law named " + std::string(name));
}

LawReport full_report(const IncidenceStructure& g, VertexIndex u1, VertexIndex u2, Method method,
                      const EvaluationOptions& options) {
  check_endpoints(g, u1, u2);
  if (method == Method::Arborescence && !g.all_positive())
    throw CapabilityError("the arborescence method needs an all-positive graph");
  LawReport report{u1, u2, method, g.all_positive(), {}, {}, {}, 0};

  const PairTable d_forward(g, u1, u2, Form::Determinant, method, options);
  const PairTable d_backward(g, u2, u1, Form::Determinant, method, options);
  const Method pm = permanent_method(method);
  const PairTable p_forward(g, u1, u2, Form::Permanent, pm, options);
  const PairTable p_backward(g, u2, u1, Form::Permanent, pm, options);

  report.laws.push_back(degeneracy(g, u1, u2, method, options));
  report.laws.push_back(energy_reversal(g, d_forward, d_backward));
  CycleConservation cycles = cycle_conservation(g, d_forward);
  report.laws.push_back(std::move(cycles.verdict));
  report.cycle_residuals = std::move(cycles.residuals);
  VertexConservation vertices = vertex_conservation(g, u1, u2, d_forward, options);
  report.laws.push_back(std::move(vertices.verdict));
  report.vertex_balances = std::move(vertices.balances);
  report.tau = vertices.tau;
  report.laws.push_back(path_property(g, u1, u2, options));
  report.laws.push_back(boolean_classes(g, options));
  report.laws.push_back(permanent_laws(g, u1, u2, pm, options, p_forward, p_backward));
  report.laws.push_back(parity_polarity(g, u1, u2, d_forward));
  return report;
}

}  // namespace kirch
