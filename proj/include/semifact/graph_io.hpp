// File formats: the graph JSON document, the matrix text format, vertex
// labelling maps, and report objects.

#ifndef SEMIFACT_GRAPH_IO_HPP
#define SEMIFACT_GRAPH_IO_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "semifact/graph.hpp"
#include "semifact/labelling.hpp"
#include "semifact/numeric.hpp"
#include "semifact/verdict.hpp"

namespace semifact {

// Mirrors the JSON schema: a named vertex/edge list with labels that are
// positive integers or the string "inf". Field order round-trips.
struct GraphDocument {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;

  LabelledGraph to_graph() const;
  static GraphDocument from_graph(const std::string& name, const LabelledGraph& g);

  friend bool operator==(const GraphDocument& a, const GraphDocument& b);
};

GraphDocument parse_graph_document(const std::string& text);
GraphDocument parse_graph_file(const std::string& path);
std::string serialize_graph_document(const GraphDocument& doc);

// Matrix text format: first line "rows cols", then row-major integers,
// whitespace separated.
IntMatrix parse_matrix_text(const std::string& text);
IntMatrix parse_matrix_file(const std::string& path);
std::string format_matrix_text(const IntMatrix& m);

// Vertex labellings serialize as {"vertex id": integer} objects; ids not
// present default to zero, unknown ids are rejected.
VertexLabelling parse_labelling_file(const std::string& path, const LabelledGraph& g);
std::string serialize_labelling(const LabelledGraph& g, const VertexLabelling& v);

// Report schema, version "1". Deterministic field order; identical inputs
// give byte-identical reports apart from the timings object.
nlohmann::ordered_json verdict_to_json(const Verdict& v);
nlohmann::ordered_json report_entry(const std::string& file, const GraphDocument& doc,
                                    const Verdict& v, double elapsed_ms);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace semifact

#endif  // SEMIFACT_GRAPH_IO_HPP
