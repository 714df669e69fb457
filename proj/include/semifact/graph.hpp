// Labelled multigraphs (loops and parallel edges allowed) and the purely
// graph-theoretic constructions on them: deterministic spanning trees,
// circuits, contraction of infinity-labelled edges, and blow-up graphs.
//
// Graphs are immutable values. Vertices and edges are addressed by string
// ids; all canonical orders (matrix columns, circuit starts, BFS ties) are
// the lexicographic order of those ids, so a graph's behaviour does not
// depend on the order ids appear in an input document.

#ifndef SEMIFACT_GRAPH_HPP
#define SEMIFACT_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semifact/errors.hpp"
#include "semifact/numeric.hpp"

namespace semifact {

// Edge label: a positive integer thickness or the symbol for infinity.
class EdgeLabel {
 public:
  static EdgeLabel finite(std::int64_t v) {
    if (v < 1) throw InvalidLabel("edge label must be >= 1, got " + std::to_string(v));
    return EdgeLabel(v);
  }
  static EdgeLabel infinity() { return EdgeLabel(kInf); }

  bool is_infinite() const { return value_ == kInf; }
  std::int64_t value() const { return value_; }  // finite labels only
  Int as_int() const { return Int(static_cast<long>(value_)); }

  std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;

 private:
  static constexpr std::int64_t kInf = -1;
  explicit EdgeLabel(std::int64_t v) : value_(v) {}
  std::int64_t value_ = 1;
};

struct EdgeSpec {
  std::string id;
  std::string source;
  std::string target;
  EdgeLabel label;
};

struct Edge {
  std::string id;
  Index source = 0;  // vertex index; records the reference orientation
  Index target = 0;
  EdgeLabel label = EdgeLabel::finite(1);
  bool is_loop() const { return source == target; }
};

// Finite connected multigraph with edge labels in Z>=1 or infinity.
class LabelledGraph {
 public:
  // Empty placeholder; every usable graph comes from build().
  LabelledGraph() = default;

  // Validates ids, endpoints, labels and connectivity. Vertices and edges
  // are stored sorted by id, so index order equals lexicographic id order.
  static LabelledGraph build(std::vector<std::string> vertices, std::vector<EdgeSpec> edges);

  Index vertex_count() const { return static_cast<Index>(vertex_ids_.size()); }
  Index edge_count() const { return static_cast<Index>(edges_.size()); }
  // |E| - |V| + 1, the number of independent circuits.
  Index nullity() const { return edge_count() - vertex_count() + 1; }

  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(Index e) const { return edges_[static_cast<size_t>(e)]; }
  const std::string& vertex_id(Index v) const { return vertex_ids_[static_cast<size_t>(v)]; }

  Index vertex_index(const std::string& id) const;  // throws DanglingEndpoint
  std::optional<Index> find_vertex(const std::string& id) const;
  std::optional<Index> find_edge(const std::string& id) const;

  // Incident edge indices in ascending order; loops appear once.
  const std::vector<Index>& incident_edges(Index v) const {
    return incidence_[static_cast<size_t>(v)];
  }

  bool has_infinite_label() const;
  std::vector<std::string> edge_ids() const;

  friend bool operator==(const LabelledGraph&, const LabelledGraph&);

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Index>> incidence_;
};

// A spanning tree together with the ordered list of links (non-tree edges).
struct SpanningTree {
  std::vector<Index> tree_edges;  // ascending edge indices
  std::vector<Index> links;       // ascending edge indices; |links| == nullity
  std::vector<Index> parent_vertex;  // BFS parent, -1 at the root
  std::vector<Index> parent_edge;    // edge to the parent, -1 at the root
  bool contains_edge(Index e) const;
};

// A circuit: closed walk with all edges distinct and all vertices distinct
// except first = last. A loop is a circuit of length 1. The traversal
// direction is recorded per edge as agreement with the reference orientation.
struct Circuit {
  std::vector<Index> edges;    // in traversal order
  std::vector<bool> forward;   // traversal agrees with edge reference orientation
  Index length() const { return static_cast<Index>(edges.size()); }
  // Vertex sequence visited by the traversal, starting vertex first.
  std::vector<Index> vertex_sequence(const LabelledGraph& g) const;
  bool contains_edge(Index e) const;
};

// A blow-up graph: the blown-up graph plus the provenance tying it back to
// the level-0 base graph. Old vertices are exactly the base's vertices.
struct BlowupGraph {
  LabelledGraph graph;
  LabelledGraph base;
  std::vector<std::string> old_vertices;             // sorted base vertex ids
  std::map<std::string, std::string> edge_provenance;  // edge id -> base edge id
  int level = 0;

  bool is_old_vertex(const std::string& id) const;
  // Indices (in graph) of vertices that are not old, ascending.
  std::vector<Index> new_vertex_indices() const;
  // Ordered vertex ids of the subdivision path of a base edge, from the
  // base source to the base target (for base loops, both ends are the loop
  // vertex and the direction is the one through the smallest incident edge).
  std::vector<std::string> path_of_base_edge(const std::string& base_edge_id) const;
};

LabelledGraph build_graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges);

// Contracts every infinity-labelled edge (endpoints merged, loops formed by
// the merge deleted). Returns the contracted graph and the vertex map from
// original ids to representative ids (the smallest id of each merged class).
std::pair<LabelledGraph, std::map<std::string, std::string>> contract_infinite(
    const LabelledGraph& g);

// Deterministic spanning tree: BFS from the lexicographically smallest
// vertex id, ties broken by edge-id order.
SpanningTree spanning_tree(const LabelledGraph& g);

// Spanning tree from an explicit edge-id set; throws ValidationError if the
// edges do not form a spanning tree.
SpanningTree spanning_tree_from_edges(const LabelledGraph& g,
                                      const std::vector<std::string>& edge_ids);

// One circuit per link, in link order; each traversal starts with the link,
// traversed along its reference orientation.
std::vector<Circuit> fundamental_circuits(const LabelledGraph& g, const SpanningTree& t);

// All circuits, each reported once under its canonical traversal (start at
// the smallest vertex id, proceed toward the smaller adjacent edge id),
// ordered by (length, edge index sequence). Throws CircuitCapExceeded if
// there are more than `cap` circuits.
std::vector<Circuit> enumerate_circuits(const LabelledGraph& g, std::size_t cap = 10000);

// Canonical traversal of the same circuit (see enumerate_circuits).
Circuit canonical_circuit(const LabelledGraph& g, const Circuit& c);

// Wraps a graph as its own level-0 blow-up.
BlowupGraph as_level0(const LabelledGraph& g);

// Replaces every edge of label m >= 2 by the path 1, m-2, 1 (the two
// interior vertices coincide when m == 2); infinity becomes 1, inf, 1;
// label-1 edges are preserved. Level is incremented.
BlowupGraph first_blowup(const BlowupGraph& g);

// n-fold iteration of first_blowup starting from the level-0 wrapper.
BlowupGraph nth_blowup(const LabelledGraph& g, int n);

// Every finite edge of label m becomes a path of m unit edges; infinite
// edges are left unaltered.
BlowupGraph total_blowup(const LabelledGraph& g);

// Label-preserving multigraph isomorphism. When old vertex sets are given,
// the bijection must map one old set onto the other; with
// `require_same_old_ids` it must fix old vertices by id.
bool labelled_isomorphic(const LabelledGraph& a, const LabelledGraph& b);
bool labelled_isomorphic(const LabelledGraph& a, const std::vector<std::string>& old_a,
                         const LabelledGraph& b, const std::vector<std::string>& old_b,
                         bool require_same_old_ids = false);

}  // namespace semifact

#endif  // SEMIFACT_GRAPH_HPP
