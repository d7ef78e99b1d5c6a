#include "kirch/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "kirch/emit.hpp"
#include "kirch/error.hpp"

namespace kirch::cli {

namespace {

struct Options {
  std::string graph;
  std::string format;
  std::string source, sink;
  std::vector<std::string> pair;
  std::string method = "contributor";
  std::string sign = "det";
  unsigned threads = 1;
  std::size_t max_contributors = EnumerationLimits{}.max_contributors;
  std::size_t max_perm_order = kDefaultPermanentLimit;

  std::string kind = "laplacian";
  bool signless = false;
  std::string what = "contributors";
  bool unreduced = false;

  std::size_t n = 0;
  double p = 0.5, q = 0.0;
  std::uint64_t seed = 1;
  std::string output;
};

void add_graph(CLI::App* sub, Options& o) {
  sub->add_option("-g,--graph", o.graph, "Graph JSON file")->required();
}

void add_format(CLI::App* sub, Options& o, const std::string& fallback) {
  sub->add_option("--format", o.format, "json, text, dot or csv (default " + fallback + ")");
}

void add_caps(CLI::App* sub, Options& o) {
  sub->add_option("--threads", o.threads, "Worker threads for enumeration")
      ->check(CLI::Range(1u, 256u));
  sub->add_option("--max-contributors", o.max_contributors, "Enumeration cap")
      ->envname("KIRCH_MAX_CONTRIBUTORS");
  sub->add_option("--max-perm-order", o.max_perm_order, "Largest permanent evaluated");
}

void add_endpoints(CLI::App* sub, Options& o, bool required) {
  auto* s = sub->add_option("-s,--source", o.source, "Source vertex u1");
  auto* t = sub->add_option("-t,--sink", o.sink, "Sink vertex u2");
  if (required) {
    s->required();
    t->required();
  }
}

void add_pair(CLI::App* sub, Options& o, bool required) {
  auto* opt = sub->add_option("--pair", o.pair, "Edge endpoints w1,w2")->delimiter(',')->expected(2);
  if (required) opt->required();
}

void add_method(CLI::App* sub, Options& o, bool with_sign) {
  sub->add_option("--method", o.method, "contributor, activation, cofactor or arborescence")
      ->capture_default_str();
  if (with_sign) sub->add_option("--sign", o.sign, "det or perm")->capture_default_str();
}

EvaluationOptions evaluation(const Options& o) {
  EvaluationOptions e;
  e.limits.max_contributors = o.max_contributors;
  e.limits.threads = o.threads;
  e.max_permanent_order = o.max_perm_order;
  return e;
}

IntMatrix matrix_of_kind(const IncidenceStructure& g, const std::string& kind) {
  if (kind == "laplacian") return laplacian(g);
  if (kind == "signless") return signless_laplacian(g);
  if (kind == "incidence") return incidence_matrix(g);
  if (kind == "adjacency") return adjacency_matrix(g);
  if (kind == "degree") return degree_matrix(g);
  throw InvalidInput("unknown matrix kind '" + kind + "'");
}

std::optional<Restriction> restriction_of(const IncidenceStructure& g, const Options& o) {
  const bool any = !o.source.empty() || !o.sink.empty() || !o.pair.empty();
  if (!any) return std::nullopt;
  if (o.source.empty() || o.sink.empty() || o.pair.size() != 2)
    throw InvalidInput("a restriction needs --source, --sink and --pair");
  return Restriction{{g.index_of(o.source), g.index_of(o.sink)},
                     {g.index_of(o.pair[0]), g.index_of(o.pair[1])}};
}

Restriction required_restriction(const IncidenceStructure& g, const Options& o) {
  auto r = restriction_of(g, o);
  if (!r) throw InvalidInput("this enumeration needs --source, --sink and --pair");
  return *r;
}

int enumerate(const IncidenceStructure& g, const Options& o, OutputFormat f, std::ostream& out) {
  const EvaluationOptions e = evaluation(o);
  if (o.what == "contributors") {
    const auto r = restriction_of(g, o);
    out << emit_contributors(g, r ? enumerate_reduced_nonzero(g, *r, e.limits)
                                  : enumerate_contributors(g, e.limits),
                             f);
  } else if (o.what == "classes") {
    ClassQuery query;
    if (auto r = restriction_of(g, o)) query.restriction = *r;
    query.reduced = !o.unreduced;
    out << emit_classes(g, tail_classes(g, query, e.limits), f);
  } else if (o.what == "arborescences") {
    const Restriction r = required_restriction(g, o);
    out << emit_arborescences(g, tutte_two_arborescences(g, r.u[0], r.u[1], r.w[0], r.w[1]), f);
  } else if (o.what == "paths") {
    if (f != OutputFormat::Json) throw CapabilityError("paths are emitted as json only");
    Json all = Json::array();
    for (const Contributor& c : enumerate_reduced_nonzero(g, required_restriction(g, o), e.limits))
      all.push_back(path_to_json(g, unique_path(g, c)));
    out << all.dump(2) << "\n";
  } else if (o.what == "trees") {
    if (o.source.empty() || o.sink.empty())
      throw InvalidInput("tree sorting needs --source and --sink");
    out << emit_tree_sort(g, tree_sort_report(g, g.index_of(o.source), g.index_of(o.sink), e.limits),
                          f);
  } else {
    throw InvalidInput("unknown enumeration '" + o.what + "'");
  }
  return kOk;
}

int dispatch(CLI::App& app, const Options& o, std::ostream& out) {
  if (app.got_subcommand("gen")) {
    const IncidenceStructure g = random_signed_graph(o.n, o.p, o.q, o.seed);
    const std::string text = graph_to_json(g).dump(2) + "\n";
    if (o.output.empty() || o.output == "-") {
      out << text;
    } else {
      std::ofstream file(o.output, std::ios::binary);
      if (!file || !(file << text)) throw InvalidInput("cannot write " + o.output);
    }
    return kOk;
  }

  const IncidenceStructure g = read_graph_file(o.graph);
  const OutputFormat f =
      parse_format(!o.format.empty() ? o.format : app.got_subcommand("enumerate") ? "json" : "text");
  const EvaluationOptions e = evaluation(o);

  if (app.got_subcommand("matrix")) {
    out << emit_matrix(matrix_of_kind(g, o.kind), f);
  } else if (app.got_subcommand("tau")) {
    out << emit_integer(tree_number(laplacian(g)), f);
  } else if (app.got_subcommand("det")) {
    out << emit_integer(determinant(laplacian(g)), f);
  } else if (app.got_subcommand("perm")) {
    out << emit_integer(permanent(o.signless ? signless_laplacian(g) : laplacian(g), o.max_perm_order),
                        f);
  } else if (app.got_subcommand("transpedance")) {
    const Restriction r = required_restriction(g, o);
    out << emit_integer(transpedance(g, r.u[0], r.u[1], r.w[0], r.w[1], parse_form(o.sign),
                                     parse_method(o.method), e),
                        f);
  } else if (app.got_subcommand("label")) {
    out << emit_labeling(g,
                         label_edges(g, g.index_of(o.source), g.index_of(o.sink),
                                     parse_form(o.sign), parse_method(o.method), e),
                         f);
  } else if (app.got_subcommand("verify")) {
    const LawReport report =
        full_report(g, g.index_of(o.source), g.index_of(o.sink), parse_method(o.method), e);
    out << emit_report(g, report, f);
    return report.all_hold() ? kOk : kViolation;
  } else if (app.got_subcommand("enumerate")) {
    return enumerate(g, o, f, out);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact Kirchhoff transpedances on signed graphs", "kirch"};
  app.require_subcommand(1);

  auto* matrix = app.add_subcommand("matrix", "Print a graph matrix");
  add_graph(matrix, o);
  add_format(matrix, o, "text");
  matrix->add_option("--kind", o.kind, "laplacian, signless, incidence, adjacency or degree")
      ->capture_default_str();

  auto* tau = app.add_subcommand("tau", "Tree number: first principal minor of L");
  add_graph(tau, o);
  add_format(tau, o, "text");

  auto* det = app.add_subcommand("det", "Determinant of L");
  add_graph(det, o);
  add_format(det, o, "text");

  auto* perm = app.add_subcommand("perm", "Permanent of L");
  add_graph(perm, o);
  add_format(perm, o, "text");
  perm->add_flag("--signless", o.signless, "Use the signless Laplacian");
  perm->add_option("--max-perm-order", o.max_perm_order, "Largest permanent evaluated");

  auto* trans = app.add_subcommand("transpedance", "One transpedance [u1u2, w1w2]");
  add_graph(trans, o);
  add_format(trans, o, "text");
  add_endpoints(trans, o, true);
  add_pair(trans, o, true);
  add_method(trans, o, true);
  add_caps(trans, o);

  auto* label = app.add_subcommand("label", "Label every ordered adjacency");
  add_graph(label, o);
  add_format(label, o, "text");
  add_endpoints(label, o, true);
  add_method(label, o, true);
  add_caps(label, o);

  auto* verify = app.add_subcommand("verify", "Check every law for a source and sink");
  add_graph(verify, o);
  add_format(verify, o, "text");
  add_endpoints(verify, o, true);
  add_method(verify, o, false);
  add_caps(verify, o);

  auto* enumerate = app.add_subcommand("enumerate", "List contributors, classes, forests or paths");
  add_graph(enumerate, o);
  add_format(enumerate, o, "json");
  add_endpoints(enumerate, o, false);
  add_pair(enumerate, o, false);
  add_caps(enumerate, o);
  enumerate->add_option("--what", o.what, "contributors, classes, arborescences, paths or trees")
      ->capture_default_str();
  enumerate->add_flag("--unreduced", o.unreduced, "Keep the u -> w moves in restricted classes");

  auto* gen = app.add_subcommand("gen", "Seeded random signed graph");
  gen->add_option("--n", o.n, "Vertex count")->required();
  gen->add_option("--p", o.p, "Edge probability")->capture_default_str();
  gen->add_option("--q", o.q, "Negative-edge probability")->capture_default_str();
  gen->add_option("--seed", o.seed, "Seed")->capture_default_str();
  gen->add_option("-o,--output", o.output, "Output file (stdout when absent)");

  std::vector<const char*> argv{"kirch"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    return dispatch(app, o, out);
  } catch (const CapabilityError& e) {
    err << "error: " << e.what() << "\n";
    return kCapability;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

}  // namespace kirch::cli
