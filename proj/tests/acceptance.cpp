// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "kirch/laws.hpp"
#include "oracles.hpp"

using namespace kirch;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t checks = 0;

  void expect(bool ok, const std::function<std::string()>& why) {
    ++checks;
    if (ok || !pass) {
      pass = pass && ok;
      return;
    }
    pass = false;
    detail = why();
  }
};

std::string describe(const IncidenceStructure& g) {
  std::string s = std::to_string(g.vertex_count()) + " vertices:";
  for (const auto& e : to_signed_edges(g))
    s += " " + e.first + e.second + (e.sign < 0 ? "-" : "");
  return s;
}

std::string tuple(VertexIndex a, VertexIndex b, VertexIndex c, VertexIndex d) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
         std::to_string(d) + ")";
}

template <typename F>
void for_each_query(const IncidenceStructure& g, F&& f) {
  const std::size_t n = g.vertex_count();
  for (VertexIndex u1 = 0; u1 < n; ++u1)
    for (VertexIndex u2 = 0; u2 < n; ++u2) {
      if (u1 == u2) continue;
      for (VertexIndex w1 = 0; w1 < n; ++w1)
        for (VertexIndex w2 = 0; w2 < n; ++w2)
          if (w1 != w2) f(u1, u2, w1, w2);
    }
}

IncidenceStructure house(int sign34) {
  return from_signed_edges({"1", "2", "3", "4", "5"}, {{"12", "1", "2", 1},
                                                        {"23", "2", "3", 1},
                                                        {"34", "3", "4", sign34},
                                                        {"45", "4", "5", 1},
                                                        {"51", "5", "1", 1},
                                                        {"35", "3", "5", 1}});
}

Outcome criterion_house() {
  Outcome out;
  const auto t0 = Clock::now();
  for (int sign : {-1, 1}) {
    const IncidenceStructure g = house(sign);
    const Integer expected = sign < 0 ? -12 : -8;
    const IntMatrix l = laplacian(g);
    const Integer oracle = oracle::total_minor_coefficient(l, 0, 0, 1, 1, Form::Determinant);
    const Integer coeff = totalminor_coeff2(l, 0, 0, 1, 1);
    const Integer brute = transpedance_d_bruteforce(g, 0, 1, 0, 1);
    const Integer act = transpedance_d_activation(g, 0, 1, 0, 1);
    out.expect(oracle == expected && coeff == expected && brute == expected && act == expected,
               [&] {
                 return "sign34=" + std::to_string(sign) + ": oracle " + to_string(oracle) +
                        " coeff " + to_string(coeff) + " brute " + to_string(brute) +
                        " activation " + to_string(act);
               });
    if (sign > 0) continue;

    // Non-cancelling contributors: classes of the flat enumeration whose
    // signed sum survives.
    const auto all = enumerate_reduced_nonzero(g, {{0, 1}, {0, 1}});
    std::size_t surviving = 0, clones = 0, odd_circles = 0;
    bool all_minus_one = true;
    for (const auto& [key, members] : oracle::group_by_tails(all)) {
      int sum = 0;
      for (const Contributor& c : members) sum += sgn_d(g, c);
      if (sum == 0) continue;
      for (const Contributor& c : members) {
        ++surviving;
        all_minus_one = all_minus_one && sgn_d(g, c) == -1;
        const ComponentDecomposition d = decompose(g, c);
        if (d.circles.empty()) ++clones;
        else if (d.circles.size() == 1 && d.circles[0].length() % 2 == 1) ++odd_circles;
      }
    }
    out.expect(surviving == 12 && clones == 10 && odd_circles == 2 && all_minus_one, [&] {
      return std::to_string(surviving) + " surviving, " + std::to_string(clones) + " clones, " +
             std::to_string(odd_circles) + " odd circles";
    });
  }
  const double elapsed = seconds_since(t0);
  out.expect(elapsed < 1.0, [&] { return "took " + std::to_string(elapsed) + " s"; });
  out.detail = out.pass ? "-12 and -8 reproduced, 12 contributors signed -1, " +
                              std::to_string(elapsed) + " s"
                        : out.detail;
  return out;
}

Outcome criterion_methods(const std::vector<IncidenceStructure>& corpus) {
  Outcome out;
  std::size_t queries = 0;
  for (const IncidenceStructure& g : corpus) {
    const IntMatrix l = laplacian(g);
    const bool positive = g.all_positive();
    const int polarity = parity_sign(g.vertex_count());
    std::optional<TwoForestTable> forests;
    if (positive) forests.emplace(g);
    for_each_query(g, [&](VertexIndex u1, VertexIndex u2, VertexIndex w1, VertexIndex w2) {
      ++queries;
      for (Form form : {Form::Determinant, Form::Permanent}) {
        const Integer brute = transpedance_bruteforce(g, u1, u2, w1, w2, form);
        const Integer act = transpedance_activation(g, u1, u2, w1, w2, form);
        const Integer coeff = totalminor_coeff2(l, u1, w1, u2, w2, form);
        out.expect(brute == act && act == coeff, [&] {
          return describe(g) + " " + tuple(u1, u2, w1, w2) + " " +
                 std::string(form_name(form)) + ": brute " + to_string(brute) + " activation " +
                 to_string(act) + " matrix " + to_string(coeff);
        });
        if (form != Form::Determinant || !positive) continue;
        const Integer tutte = forests->tutte_transpedance(u1, u2, w1, w2);
        const Integer cofactor = ordered_second_cofactor(l, u1, w1, u2, w2);
        out.expect(tutte * polarity == brute && cofactor == tutte, [&] {
          return describe(g) + " " + tuple(u1, u2, w1, w2) + ": Tutte " + to_string(tutte) +
                 " cofactor " + to_string(cofactor) + " D " + to_string(brute);
        });
      }
    });
  }
  if (out.pass) out.detail = std::to_string(queries) + " queries, det and perm";
  return out;
}

Outcome criterion_boolean(const std::vector<IncidenceStructure>& corpus) {
  Outcome out;
  std::size_t classes_seen = 0;
  for (const IncidenceStructure& g : corpus) {
    const auto classes = tail_classes(g);
    Integer degree_product = 1;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) degree_product *= g.degree(v);
    std::size_t total = 0;
    std::set<std::vector<Contributor>> built;
    for (const ActivationClass& cls : classes) {
      ++classes_seen;
      total += cls.members.size();
      std::size_t clones = 0;
      for (const Contributor& c : cls.members) {
        bool identity = true;
        for (const Move& m : c.moves) identity = identity && m.is_backstep();
        clones += identity;
      }
      out.expect(cls.members.size() == (std::size_t{1} << cls.rank) && clones == 1, [&] {
        return describe(g) + ": class of size " + std::to_string(cls.members.size()) +
               ", rank " + std::to_string(cls.rank) + ", " + std::to_string(clones) + " clones";
      });
      std::vector<Contributor> sorted = cls.members;
      std::sort(sorted.begin(), sorted.end());
      built.insert(std::move(sorted));
    }
    const Integer perm_q = permanent(signless_laplacian(g));
    out.expect(Integer(total) == perm_q && Integer(classes.size()) == degree_product, [&] {
      return describe(g) + ": sizes sum to " + std::to_string(total) + ", perm(Q) " +
             to_string(perm_q);
    });

    std::set<std::vector<Contributor>> grouped;
    for (auto& [key, members] : oracle::group_by_tails(enumerate_contributors(g))) {
      std::sort(members.begin(), members.end());
      grouped.insert(members);
    }
    out.expect(built == grouped,
               [&] { return describe(g) + ": classes differ from grouped enumeration"; });
  }
  if (out.pass) out.detail = std::to_string(classes_seen) + " classes";
  return out;
}

Outcome criterion_laws(const std::vector<IncidenceStructure>& corpus) {
  Outcome out;
  std::size_t reports = 0, paths = 0;
  for (const IncidenceStructure& g : corpus) {
    const Integer tau = tree_number(laplacian(g.with_uniform_sign(1)));
    for (VertexIndex u1 = 0; u1 < g.vertex_count(); ++u1)
      for (VertexIndex u2 = u1 + 1; u2 < g.vertex_count(); ++u2) {
        const LawReport report = full_report(g, u1, u2);
        ++reports;
        paths += report.law("path-property").checked;
        std::vector<std::string> required = {"degeneracy", "energy-reversal", "path-property"};
        if (g.all_positive())
          required.insert(required.end(), {"cycle-conservation", "vertex-conservation",
                                           "parity-polarity"});
        for (const std::string& name : required) {
          const LawVerdict& v = report.law(name);
          out.expect(v.holds, [&] {
            return describe(g) + " (" + std::to_string(u1) + "," + std::to_string(u2) + ") " +
                   name + ": " + v.witness;
          });
        }
        if (!g.all_positive()) continue;
        const VertexBalance& source = report.vertex_balances[u1];
        out.expect(report.tau == tau && source.net == tau, [&] {
          return describe(g) + ": source outflow " + to_string(source.net) + ", tau " +
                 to_string(tau);
        });
      }
  }
  if (out.pass)
    out.detail = std::to_string(reports) + " reports, " + std::to_string(paths) + " paths extracted";
  return out;
}

Outcome criterion_permanent(const std::vector<IncidenceStructure>& corpus) {
  Outcome out;
  std::size_t queries = 0;
  for (const IncidenceStructure& positive : corpus) {
    const IncidenceStructure g = positive.with_uniform_sign(-1);
    const IntMatrix l = laplacian(g);
    const int polarity = parity_sign(g.vertex_count());
    for_each_query(g, [&](VertexIndex u1, VertexIndex u2, VertexIndex w1, VertexIndex w2) {
      ++queries;
      const Integer value = totalminor_coeff2(l, u1, w1, u2, w2, Form::Permanent);
      const Integer count = enumerate_reduced_nonzero(g, {{u1, u2}, {w1, w2}}).size();
      out.expect(value == count * polarity, [&] {
        return describe(g) + " " + tuple(u1, u2, w1, w2) + ": P " + to_string(value) +
               ", count " + to_string(count);
      });
    });
  }
  const auto k3 = from_signed_edges({"a", "b", "c"}, {{"ab", "a", "b", 1},
                                                       {"ac", "a", "c", 1},
                                                       {"bc", "b", "c", 1}});
  const auto p3 = from_signed_edges({"a", "b", "c"}, {{"ab", "a", "b", 1}, {"bc", "b", "c", 1}});
  const Integer k3q = permanent(signless_laplacian(k3));
  const Integer p3q = permanent(signless_laplacian(p3));
  out.expect(k3q == 16 && p3q == 4,
             [&] { return "perm(Q): K3 " + to_string(k3q) + ", P3 " + to_string(p3q); });
  if (out.pass) out.detail = std::to_string(queries) + " all-negative queries, perm(Q) 16 and 4";
  return out;
}

Outcome criterion_bijection(const std::vector<IncidenceStructure>& corpus) {
  Outcome out;
  std::size_t elements = 0;
  for (const IncidenceStructure& g : corpus) {
    if (!g.all_positive()) continue;
    const int polarity = parity_sign(g.vertex_count());
    for_each_query(g, [&](VertexIndex u1, VertexIndex u2, VertexIndex w1, VertexIndex w2) {
      const auto forests = tutte_two_arborescences(g, u1, u2, w1, w2);
      std::set<Contributor> images;
      for (const TwoArborescence& f : forests) {
        ++elements;
        const Contributor c = arbor_to_contributor(g, f);
        const TwoArborescence back = contributor_to_arbor(g, c);
        out.expect(back == f && f.sign == polarity * sgn_d(g, c), [&] {
          return describe(g) + " " + tuple(u1, u2, w1, w2) + ": forest round trip or sign";
        });
        images.insert(c);
      }
      const auto trivial = trivial_reduced_classes(g, {{u1, u2}, {w1, w2}});
      std::set<Contributor> trivial_set(trivial.begin(), trivial.end());
      out.expect(images == trivial_set && images.size() == forests.size(), [&] {
        return describe(g) + " " + tuple(u1, u2, w1, w2) + ": " +
               std::to_string(forests.size()) + " forests, " + std::to_string(trivial.size()) +
               " trivial contributors";
      });
      for (const Contributor& c : trivial) {
        ++elements;
        out.expect(arbor_to_contributor(g, contributor_to_arbor(g, c)) == c, [&] {
          return describe(g) + " " + tuple(u1, u2, w1, w2) + ": contributor round trip";
        });
      }
    });
  }
  if (out.pass) out.detail = std::to_string(elements) + " elements mapped both ways";
  return out;
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  std::vector<IncidenceStructure> corpus = testing::exhaustive_corpus();
  const std::size_t exhaustive = corpus.size();
  for (auto& g : testing::random_corpus(200)) corpus.push_back(std::move(g));
  std::printf("corpus: %zu connected simple graphs on 3-5 vertices, %zu random signed graphs\n",
              exhaustive, corpus.size() - exhaustive);

  struct Entry {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria = {
      {"AC1 house golden values", [] { return criterion_house(); }},
      {"AC2 method agreement", [&] { return criterion_methods(corpus); }},
      {"AC3 Boolean classes", [&] { return criterion_boolean(corpus); }},
      {"AC4 law suite", [&] { return criterion_laws(corpus); }},
      {"AC5 permanent laws", [&] { return criterion_permanent(corpus); }},
      {"AC6 bijection round trip", [&] { return criterion_bijection(corpus); }},
  };

  bool all = true;
  for (const Entry& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::printf("%s %s: %s (%zu checks, %.2f s)\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), o.checks, seconds_since(start));
    std::fflush(stdout);
  }
  const double total = seconds_since(t0);
  const bool in_time = total < 300.0;
  std::printf("%s total runtime under 5 min: %.2f s\n", in_time ? "PASS" : "FAIL", total);
  return all && in_time ? 0 : 1;
}
