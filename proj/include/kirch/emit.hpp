#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kirch/graph_io.hpp"
#include "kirch/laws.hpp"

namespace kirch {

enum class OutputFormat { Json, Text, Dot, Csv };

OutputFormat parse_format(std::string_view name);
std::string_view format_name(OutputFormat f);

// Every emitter returns the full artifact, newline-terminated. Combinations
// without a rendering throw CapabilityError.

Json contributor_to_json(const IncidenceStructure& g, const Contributor& c);
Json class_to_json(const IncidenceStructure& g, const ActivationClass& cls);
Json arborescence_to_json(const IncidenceStructure& g, const TwoArborescence& f);
Json path_to_json(const IncidenceStructure& g, const SourceSinkPath& p);
Json labeling_to_json(const IncidenceStructure& g, const EdgeLabeling& labeling);
Json report_to_json(const IncidenceStructure& g, const LawReport& report);
Json tree_sort_to_json(const IncidenceStructure& g, const TreeSortReport& report);

std::string emit_integer(const Integer& value, OutputFormat f);
std::string emit_matrix(const IntMatrix& m, OutputFormat f);
std::string emit_labeling(const IncidenceStructure& g, const EdgeLabeling& labeling,
                          OutputFormat f);
std::string emit_report(const IncidenceStructure& g, const LawReport& report, OutputFormat f);
std::string emit_contributors(const IncidenceStructure& g, const std::vector<Contributor>& cs,
                              OutputFormat f);
std::string emit_classes(const IncidenceStructure& g, const std::vector<ActivationClass>& classes,
                         OutputFormat f);
std::string emit_arborescences(const IncidenceStructure& g,
                               const std::vector<TwoArborescence>& forests, OutputFormat f);
std::string emit_tree_sort(const IncidenceStructure& g, const TreeSortReport& report,
                           OutputFormat f);

/// Compact one-line rendering, e.g. "a-(e1)->b c*" with * marking a backstep.
std::string describe(const IncidenceStructure& g, const Contributor& c);

}  // namespace kirch
