#include "semifact/graph_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "semifact/circuit_matrix.hpp"
#include "semifact/labelling.hpp"
#include "semifact/zlinalg.hpp"

namespace semifact {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Big integers become JSON numbers when they fit in 64 bits, decimal
// strings otherwise.
ordered_json int_to_json(const Int& v) {
  if (fits_int64(v)) return to_int64(v);
  return to_string(v);
}

EdgeLabel label_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return EdgeLabel::infinity();
    throw ValidationError(where + ": label string must be \"inf\"");
  }
  if (!j.is_number_integer())
    throw ValidationError(where + ": label must be a positive integer or \"inf\"");
  std::int64_t v = j.get<std::int64_t>();
  if (v < 1) throw ValidationError(where + ": label must be >= 1, got " + std::to_string(v));
  return EdgeLabel::finite(v);
}

}  // namespace

LabelledGraph GraphDocument::to_graph() const {
  try {
    return build_graph(vertices, edges);
  } catch (const Error& e) {
    throw ValidationError(std::string("document '") + name + "': " + e.what());
  }
}

GraphDocument GraphDocument::from_graph(const std::string& name, const LabelledGraph& g) {
  GraphDocument doc;
  doc.name = name;
  doc.vertices = g.vertex_ids();
  for (const Edge& e : g.edges())
    doc.edges.push_back(EdgeSpec{e.id, g.vertex_id(e.source), g.vertex_id(e.target), e.label});
  return doc;
}

bool operator==(const GraphDocument& a, const GraphDocument& b) {
  if (a.name != b.name || a.vertices != b.vertices || a.edges.size() != b.edges.size())
    return false;
  for (size_t i = 0; i < a.edges.size(); ++i) {
    const EdgeSpec& x = a.edges[i];
    const EdgeSpec& y = b.edges[i];
    if (x.id != y.id || x.source != y.source || x.target != y.target || !(x.label == y.label))
      return false;
  }
  return true;
}

GraphDocument parse_graph_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!j.is_object()) throw ValidationError("top level: expected an object");
  GraphDocument doc;
  doc.name = j.value("name", "");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw ValidationError("missing or invalid \"vertices\" array");
  for (size_t i = 0; i < j["vertices"].size(); ++i) {
    const json& v = j["vertices"][i];
    if (!v.is_string())
      throw ValidationError("vertices[" + std::to_string(i) + "]: expected a string id");
    doc.vertices.push_back(v.get<std::string>());
  }
  if (!j.contains("edges") || !j["edges"].is_array())
    throw ValidationError("missing or invalid \"edges\" array");
  for (size_t i = 0; i < j["edges"].size(); ++i) {
    const json& e = j["edges"][i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!e.is_object()) throw ValidationError(where + ": expected an object");
    if (!e.contains("id") || !e["id"].is_string())
      throw ValidationError(where + ".id: expected a string");
    if (!e.contains("ends") || !e["ends"].is_array() || e["ends"].size() != 2 ||
        !e["ends"][0].is_string() || !e["ends"][1].is_string())
      throw ValidationError(where + ".ends: expected [source, target] ids");
    if (!e.contains("label")) throw ValidationError(where + ".label: missing");
    doc.edges.push_back(EdgeSpec{e["id"].get<std::string>(), e["ends"][0].get<std::string>(),
                                 e["ends"][1].get<std::string>(),
                                 label_from_json(e["label"], where + ".label")});
  }
  return doc;
}

GraphDocument parse_graph_file(const std::string& path) {
  try {
    return parse_graph_document(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string serialize_graph_document(const GraphDocument& doc) {
  ordered_json j;
  j["name"] = doc.name;
  j["vertices"] = doc.vertices;
  j["edges"] = ordered_json::array();
  for (const EdgeSpec& e : doc.edges) {
    ordered_json je;
    je["id"] = e.id;
    je["ends"] = {e.source, e.target};
    if (e.label.is_infinite())
      je["label"] = "inf";
    else
      je["label"] = e.label.value();
    j["edges"].push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

IntMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0)
    throw ParseError("matrix header must be \"rows cols\"");
  IntMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      std::string tok;
      if (!(in >> tok))
        throw ParseError("matrix body ended early at entry (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      try {
        m(i, j) = int_from_string(tok);
      } catch (const std::invalid_argument&) {
        throw ParseError("invalid integer '" + tok + "'");
      }
    }
  std::string extra;
  if (in >> extra) throw ParseError("unexpected trailing token '" + extra + "'");
  return m;
}

IntMatrix parse_matrix_file(const std::string& path) {
  try {
    return parse_matrix_text(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_matrix_text(const IntMatrix& m) {
  std::ostringstream out;
  out << m.rows() << " " << m.cols() << "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      out << to_string(m(i, j));
    }
    out << "\n";
  }
  return out.str();
}

VertexLabelling parse_labelling_file(const std::string& path, const LabelledGraph& g) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ValidationError(path + ": expected an id -> integer object");
  VertexLabelling v = VertexLabelling::Zero(g.vertex_count());
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto idx = g.find_vertex(it.key());
    if (!idx) throw ValidationError(path + ": unknown vertex '" + it.key() + "'");
    if (it.value().is_number_integer())
      v(*idx) = Int(static_cast<long>(it.value().get<std::int64_t>()));
    else if (it.value().is_string())
      v(*idx) = int_from_string(it.value().get<std::string>());
    else
      throw ValidationError(path + ": value for '" + it.key() + "' must be an integer");
  }
  return v;
}

std::string serialize_labelling(const LabelledGraph& g, const VertexLabelling& v) {
  ordered_json j;
  for (Index i = 0; i < g.vertex_count(); ++i) j[g.vertex_id(i)] = int_to_json(v(i));
  return j.dump(2) + "\n";
}

ordered_json verdict_to_json(const Verdict& v) {
  ordered_json j;
  j["circuit_coprime"] = v.circuit_coprime;
  j["semi_factorial"] = v.semi_factorial;
  j["neron_lft_model"] = v.neron_lft_model;
  j["method"] = method_name(v.method);
  if (v.failure) {
    ordered_json w;
    w["type"] = "circuit";
    w["prime"] = int_to_json(v.failure->prime);
    w["edges"] = v.failure->edges;
    j["witness"] = std::move(w);
  } else {
    ordered_json w;
    w["type"] = "snf_diagonal";
    w["diagonal"] = ordered_json::array();
    for (const Int& d : v.snf_diagonal) w["diagonal"].push_back(int_to_json(d));
    j["witness"] = std::move(w);
  }
  return j;
}

ordered_json report_entry(const std::string& file, const GraphDocument& doc, const Verdict& v,
                          double elapsed_ms) {
  LabelledGraph g = doc.to_graph();
  auto [gc, vmap] = contract_infinite(g);

  ordered_json j;
  j["schema_version"] = "1";
  j["file"] = file;
  j["name"] = doc.name;
  j["verdict"] = verdict_to_json(v);

  std::vector<Int> diag =
      v.snf_diagonal.empty() && gc.nullity() > 0
          ? snf(fundamental_circuit_matrix(gc, spanning_tree(gc), true).matrix).diagonal
          : v.snf_diagonal;
  j["snf_diagonal"] = ordered_json::array();
  for (const Int& d : diag) j["snf_diagonal"].push_back(int_to_json(d));

  ComponentGroup h = component_group(g);
  j["component_group"] = ordered_json::object();
  j["component_group"]["free_rank"] = h.free_rank;
  j["component_group"]["torsion"] = ordered_json::array();
  for (const Int& t : h.torsion) j["component_group"]["torsion"].push_back(int_to_json(t));

  // Exact orders used for matrix outputs, so results are reproducible.
  j["orders"] = ordered_json::object();
  j["orders"]["vertices"] = g.vertex_ids();
  j["orders"]["edges"] = g.edge_ids();

  j["timings"] = ordered_json::object();
  j["timings"]["total_ms"] = elapsed_ms;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

}  // namespace semifact
