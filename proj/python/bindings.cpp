#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kirch/arborescence.hpp"
#include "kirch/cli.hpp"
#include "kirch/emit.hpp"
#include "kirch/error.hpp"
#include "kirch/graph_io.hpp"
#include "kirch/laws.hpp"

namespace py = pybind11;
using namespace kirch;

namespace {

py::int_ to_py(const Integer& v) {
  const std::string digits = v.str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(digits.c_str(), nullptr, 10));
}

py::list matrix_to_py(const IntMatrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
    rows.append(row);
  }
  return rows;
}

IntMatrix kind_matrix(const IncidenceStructure& g, const std::string& kind) {
  if (kind == "laplacian") return laplacian(g);
  if (kind == "signless") return signless_laplacian(g);
  if (kind == "incidence") return incidence_matrix(g);
  if (kind == "adjacency") return adjacency_matrix(g);
  if (kind == "degree") return degree_matrix(g);
  throw InvalidInput("unknown matrix kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);

  py::class_<IncidenceStructure>(m, "Graph")
      .def_static("from_json", [](const std::string& text) { return parse_graph_json(text); })
      .def_static("from_file", [](const std::string& path) { return read_graph_file(path); })
      .def_property_readonly("vertices",
                             [](const IncidenceStructure& g) {
                               std::vector<std::string> out;
                               for (VertexIndex v = 0; v < g.vertex_count(); ++v)
                                 out.push_back(g.vertex_name(v));
                               return out;
                             })
      .def_property_readonly("all_positive", &IncidenceStructure::all_positive)
      .def("to_json", [](const IncidenceStructure& g) { return graph_to_json(g).dump(); })
      .def("__len__", &IncidenceStructure::vertex_count);

  m.def("matrix",
        [](const IncidenceStructure& g, const std::string& kind) {
          return matrix_to_py(kind_matrix(g, kind));
        },
        py::arg("graph"), py::arg("kind") = "laplacian");

  m.def("tree_number", [](const IncidenceStructure& g) { return to_py(tree_number(laplacian(g))); });

  m.def("transpedance",
        [](const IncidenceStructure& g, const std::string& u1, const std::string& u2,
           const std::string& w1, const std::string& w2, const std::string& sign,
           const std::string& method) {
          Integer v;
          {
            py::gil_scoped_release release;
            v = transpedance(g, g.index_of(u1), g.index_of(u2), g.index_of(w1), g.index_of(w2),
                             parse_form(sign), parse_method(method));
          }
          return to_py(v);
        },
        py::arg("graph"), py::arg("u1"), py::arg("u2"), py::arg("w1"), py::arg("w2"),
        py::arg("sign") = "det", py::arg("method") = "contributor");

  m.def("label_json",
        [](const IncidenceStructure& g, const std::string& source, const std::string& sink,
           const std::string& sign, const std::string& method) {
          const EdgeLabeling l = label_edges(g, g.index_of(source), g.index_of(sink),
                                             parse_form(sign), parse_method(method));
          return labeling_to_json(g, l).dump();
        },
        py::arg("graph"), py::arg("source"), py::arg("sink"), py::arg("sign") = "det",
        py::arg("method") = "contributor");

  m.def("verify_json",
        [](const IncidenceStructure& g, const std::string& source, const std::string& sink,
           const std::string& method) {
          const LawReport r =
              full_report(g, g.index_of(source), g.index_of(sink), parse_method(method));
          return report_to_json(g, r).dump();
        },
        py::arg("graph"), py::arg("source"), py::arg("sink"), py::arg("method") = "contributor");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
