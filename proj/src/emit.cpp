#include "kirch/emit.hpp"

#include <sstream>

#include "kirch/error.hpp"

namespace kirch {

namespace {

std::string unsupported(std::string_view what, OutputFormat f) {
  throw CapabilityError("no " + std::string(format_name(f)) + " rendering for " +
                        std::string(what));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

// CSV cells only need quoting when they carry a separator or a quote.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json vertex_list(const IncidenceStructure& g, const std::vector<VertexIndex>& vs) {
  Json out = Json::array();
  for (VertexIndex v : vs) out.push_back(g.vertex_name(v));
  return out;
}

Json edge_list(const IncidenceStructure& g, const EdgeSet& es) {
  Json out = Json::array();
  for (EdgeIndex e : es) out.push_back(g.edge(e).id);
  return out;
}

Json verdict_to_json(const LawVerdict& v) {
  Json j;
  j["law"] = v.law;
  j["holds"] = v.holds;
  j["guaranteed"] = v.guaranteed;
  j["checked"] = v.checked;
  j["witness"] = v.witness;
  j["note"] = v.note;
  return j;
}

Json residual_to_json(const IncidenceStructure& g, const TripleResidual& r) {
  Json j;
  j["triple"] = vertex_list(g, {r.a, r.b, r.c});
  j["residual"] = integer_to_json(r.residual);
  return j;
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "text") return OutputFormat::Text;
  if (name == "dot") return OutputFormat::Dot;
  if (name == "csv") return OutputFormat::Csv;
  throw CapabilityError("unsupported format '" + std::string(name) + "'");
}

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Text: return "text";
    case OutputFormat::Dot: return "dot";
    case OutputFormat::Csv: return "csv";
  }
  return "?";
}

Json contributor_to_json(const IncidenceStructure& g, const Contributor& c) {
  Json moves = Json::array();
  for (const Move& m : c.moves) {
    Json j;
    j["tail"] = g.vertex_name(m.tail);
    j["edge"] = m.is_virtual() ? Json(nullptr) : Json(g.edge(m.edge).id);
    j["head"] = g.vertex_name(m.head);
    moves.push_back(std::move(j));
  }
  return moves;
}

Json class_to_json(const IncidenceStructure& g, const ActivationClass& cls) {
  Json tails = Json::array();
  for (const TailChoice& t : cls.tailmap) {
    Json j;
    j["vertex"] = g.vertex_name(t.vertex);
    j["edge"] = g.edge(t.edge).id;
    j["incidence"] = t.position;
    tails.push_back(std::move(j));
  }
  Json j;
  j["tailmap"] = std::move(tails);
  j["size"] = cls.members.size();
  j["rank"] = cls.rank;
  j["boolean"] = cls.boolean;
  j["maximal"] = cls.maximal ? contributor_to_json(g, cls.members[*cls.maximal]) : Json(nullptr);
  j["eta"] = cls.eta;
  j["positive_circle_free"] = cls.positive_circle_free;
  j["sum_sgnD"] = integer_to_json(cls.sum_sgn_d);
  return j;
}

Json arborescence_to_json(const IncidenceStructure& g, const TwoArborescence& f) {
  auto tree = [&](const RootedTree& t) {
    Json j;
    j["root"] = g.vertex_name(t.root);
    j["edges"] = edge_list(g, t.edges);
    return j;
  };
  Json j;
  j["tree1"] = tree(f.tree1);
  j["tree2"] = tree(f.tree2);
  j["sgnT"] = f.sign;
  return j;
}

Json path_to_json(const IncidenceStructure& g, const SourceSinkPath& p) {
  Json j;
  j["vertices"] = vertex_list(g, p.vertices);
  j["edges"] = p.edges;
  j["loaded_edge"] = p.loaded_edge;
  return j;
}

Json labeling_to_json(const IncidenceStructure& g, const EdgeLabeling& labeling) {
  Json labels = Json::array();
  for (const EdgeLabel& l : labeling.labels) {
    Json j;
    j["w1"] = g.vertex_name(l.w1);
    j["w2"] = g.vertex_name(l.w2);
    j["multiplicity"] = l.multiplicity;
    j["value"] = integer_to_json(l.value);
    labels.push_back(std::move(j));
  }
  Json j;
  j["source"] = g.vertex_name(labeling.source);
  j["sink"] = g.vertex_name(labeling.sink);
  j["sign"] = form_name(labeling.form);
  j["method"] = method_name(labeling.method);
  j["labels"] = std::move(labels);
  j["tau"] = labeling.tau ? integer_to_json(*labeling.tau) : Json(nullptr);
  return j;
}

Json report_to_json(const IncidenceStructure& g, const LawReport& report) {
  Json laws = Json::array();
  for (const LawVerdict& v : report.laws) laws.push_back(verdict_to_json(v));
  Json residuals = Json::array();
  for (const TripleResidual& r : report.cycle_residuals) residuals.push_back(residual_to_json(g, r));
  Json balances = Json::array();
  for (const VertexBalance& b : report.vertex_balances) {
    Json j;
    j["vertex"] = g.vertex_name(b.vertex);
    j["net"] = integer_to_json(b.net);
    j["expected"] = integer_to_json(b.expected);
    j["trivial_out"] = integer_to_json(b.trivial_out);
    j["trivial_in"] = integer_to_json(b.trivial_in);
    balances.push_back(std::move(j));
  }
  Json j;
  j["source"] = g.vertex_name(report.source);
  j["sink"] = g.vertex_name(report.sink);
  j["method"] = method_name(report.method);
  j["all_positive"] = report.all_positive;
  j["all_hold"] = report.all_hold();
  j["tau"] = integer_to_json(report.tau);
  j["laws"] = std::move(laws);
  j["cycle_residuals"] = std::move(residuals);
  j["vertex_balances"] = std::move(balances);
  return j;
}

Json tree_sort_to_json(const IncidenceStructure& g, const TreeSortReport& report) {
  Json groups = Json::array();
  for (const TreeSortGroup& group : report.groups) {
    Json j;
    j["path"] = path_to_json(g, group.path);
    j["trees"] = group.trees;
    groups.push_back(std::move(j));
  }
  Json outflow = Json::array();
  for (const SourceEdgeFlow& f : report.outflow) {
    Json j;
    j["neighbor"] = g.vertex_name(f.neighbor);
    j["multiplicity"] = f.multiplicity;
    j["trees"] = integer_to_json(f.trees);
    outflow.push_back(std::move(j));
  }
  Json j;
  j["source"] = g.vertex_name(report.source);
  j["sink"] = g.vertex_name(report.sink);
  j["tau"] = integer_to_json(report.tau);
  j["total_outflow"] = integer_to_json(report.total_outflow);
  j["completions"] = report.completions;
  j["all_spanning_trees"] = report.all_spanning_trees;
  j["outflow"] = std::move(outflow);
  j["groups"] = std::move(groups);
  return j;
}

std::string emit_integer(const Integer& value, OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return integer_to_json(value).dump() + "\n";
    case OutputFormat::Text:
    case OutputFormat::Csv: return to_string(value) + "\n";
    default: return unsupported("a scalar", f);
  }
}

std::string emit_matrix(const IntMatrix& m, OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return matrix_to_json(m).dump() + "\n";
    case OutputFormat::Text: {
      std::ostringstream out;
      out << m;
      return out.str();
    }
    case OutputFormat::Csv: {
      std::string out;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          if (j) out += ",";
          out += to_string(m(i, j));
        }
        out += "\n";
      }
      return out;
    }
    default: return unsupported("a matrix", f);
  }
}

std::string emit_labeling(const IncidenceStructure& g, const EdgeLabeling& labeling,
                          OutputFormat f) {
  std::string out;
  switch (f) {
    case OutputFormat::Json: return dump(labeling_to_json(g, labeling));
    case OutputFormat::Text:
      out = "source " + g.vertex_name(labeling.source) + ", sink " + g.vertex_name(labeling.sink) +
            ", sign " + std::string(form_name(labeling.form)) + ", method " +
            std::string(method_name(labeling.method)) + "\n";
      for (const EdgeLabel& l : labeling.labels) {
        out += g.vertex_name(l.w1) + " -> " + g.vertex_name(l.w2) + "  " + to_string(l.value);
        if (l.multiplicity > 1) out += "  (x" + std::to_string(l.multiplicity) + ")";
        out += "\n";
      }
      if (labeling.tau) out += "tau " + to_string(*labeling.tau) + "\n";
      return out;
    case OutputFormat::Dot:
      out = "digraph labeling {\n";
      out += "  // source " + g.vertex_name(labeling.source) + ", sink " +
             g.vertex_name(labeling.sink) + "\n";
      for (const EdgeLabel& l : labeling.labels)
        out += "  " + quoted(g.vertex_name(l.w1)) + " -> " + quoted(g.vertex_name(l.w2)) +
               " [label=\"" + to_string(l.value) + "\"];\n";
      return out + "}\n";
    case OutputFormat::Csv:
      out = "w1,w2,multiplicity,value\n";
      for (const EdgeLabel& l : labeling.labels)
        out += csv_cell(g.vertex_name(l.w1)) + "," + csv_cell(g.vertex_name(l.w2)) + "," +
               std::to_string(l.multiplicity) + "," + to_string(l.value) + "\n";
      return out;
  }
  return out;
}

std::string emit_report(const IncidenceStructure& g, const LawReport& report, OutputFormat f) {
  std::string out;
  switch (f) {
    case OutputFormat::Json: return dump(report_to_json(g, report));
    case OutputFormat::Text:
      out = "source " + g.vertex_name(report.source) + ", sink " + g.vertex_name(report.sink) +
            ", method " + std::string(method_name(report.method)) + ", tau " +
            to_string(report.tau) + "\n";
      for (const LawVerdict& v : report.laws) {
        out += v.law + ": " + (v.holds ? "holds" : "violated") + " (" +
               std::to_string(v.checked) + " checks)";
        if (!v.witness.empty()) out += "; " + v.witness;
        if (!v.note.empty()) out += "; " + v.note;
        out += "\n";
      }
      for (const TripleResidual& r : report.cycle_residuals)
        out += "residual " + g.vertex_name(r.a) + "," + g.vertex_name(r.b) + "," +
               g.vertex_name(r.c) + " = " + to_string(r.residual) + "\n";
      out += report.all_hold() ? "all laws hold\n" : "violations found\n";
      return out;
    case OutputFormat::Csv:
      out = "a,b,c,residual\n";
      for (const TripleResidual& r : report.cycle_residuals)
        out += csv_cell(g.vertex_name(r.a)) + "," + csv_cell(g.vertex_name(r.b)) + "," +
               csv_cell(g.vertex_name(r.c)) + "," + to_string(r.residual) + "\n";
      return out;
    default: return unsupported("a law report", f);
  }
}

std::string describe(const IncidenceStructure& g, const Contributor& c) {
  std::string out;
  for (const Move& m : c.moves) {
    if (!out.empty()) out += " ";
    const std::string edge = m.is_virtual() ? "virtual" : g.edge(m.edge).id;
    if (m.is_backstep()) out += g.vertex_name(m.tail) + "*(" + edge + ")";
    else out += g.vertex_name(m.tail) + "->" + g.vertex_name(m.head) + "(" + edge + ")";
  }
  return out;
}

std::string emit_contributors(const IncidenceStructure& g, const std::vector<Contributor>& cs,
                              OutputFormat f) {
  std::string out;
  switch (f) {
    case OutputFormat::Json: {
      Json all = Json::array();
      for (const Contributor& c : cs) all.push_back(contributor_to_json(g, c));
      return dump(all);
    }
    case OutputFormat::Text:
      for (const Contributor& c : cs) out += describe(g, c) + "\n";
      return out;
    case OutputFormat::Csv:
      out = "contributor,tail,edge,head\n";
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (const Move& m : cs[i].moves)
          out += std::to_string(i) + "," + csv_cell(g.vertex_name(m.tail)) + "," +
                 csv_cell(m.is_virtual() ? std::string() : g.edge(m.edge).id) + "," +
                 csv_cell(g.vertex_name(m.head)) + "\n";
      return out;
    default: return unsupported("contributors", f);
  }
}

std::string emit_classes(const IncidenceStructure& g, const std::vector<ActivationClass>& classes,
                         OutputFormat f) {
  std::string out;
  switch (f) {
    case OutputFormat::Json: {
      Json all = Json::array();
      for (const ActivationClass& cls : classes) all.push_back(class_to_json(g, cls));
      return dump(all);
    }
    case OutputFormat::Text:
      for (const ActivationClass& cls : classes) {
        out += "size " + std::to_string(cls.members.size()) + " rank " +
               std::to_string(cls.rank) + " eta " + std::to_string(cls.eta) + " sum " +
               to_string(cls.sum_sgn_d) + (cls.positive_circle_free ? "" : " positive-circle") +
               "\n";
        for (const Contributor& c : cls.members) out += "  " + describe(g, c) + "\n";
      }
      return out;
    default: return unsupported("activation classes", f);
  }
}

std::string emit_arborescences(const IncidenceStructure& g,
                               const std::vector<TwoArborescence>& forests, OutputFormat f) {
  std::string out;
  switch (f) {
    case OutputFormat::Json: {
      Json all = Json::array();
      for (const TwoArborescence& a : forests) all.push_back(arborescence_to_json(g, a));
      return dump(all);
    }
    case OutputFormat::Text:
      for (const TwoArborescence& a : forests) {
        out += a.sign > 0 ? "+ " : "- ";
        for (const RootedTree* t : {&a.tree1, &a.tree2}) {
          out += g.vertex_name(t->root) + "{";
          for (std::size_t i = 0; i < t->edges.size(); ++i)
            out += (i ? "," : "") + g.edge(t->edges[i]).id;
          out += "} ";
        }
        out.back() = '\n';
      }
      return out;
    default: return unsupported("arborescences", f);
  }
}

std::string emit_tree_sort(const IncidenceStructure& g, const TreeSortReport& report,
                           OutputFormat f) {
  std::string out;
  switch (f) {
    case OutputFormat::Json: return dump(tree_sort_to_json(g, report));
    case OutputFormat::Text:
      for (const TreeSortGroup& group : report.groups) {
        std::string walk;
        for (VertexIndex v : group.path.vertices) walk += (walk.empty() ? "" : "-") + g.vertex_name(v);
        out += walk + ": " + std::to_string(group.trees.size()) + " trees\n";
      }
      for (const SourceEdgeFlow& flow : report.outflow)
        out += g.vertex_name(report.source) + " -> " + g.vertex_name(flow.neighbor) + " carries " +
               to_string(flow.trees) + "\n";
      out += "outflow " + to_string(report.total_outflow) + ", tau " + to_string(report.tau) + "\n";
      return out;
    default: return unsupported("a tree sort", f);
  }
}

}  // namespace kirch
