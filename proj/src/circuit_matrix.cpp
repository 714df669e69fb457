#include "semifact/circuit_matrix.hpp"

#include <algorithm>

namespace semifact {

namespace {

IntMatrix build_matrix(const LabelledGraph& g, const std::vector<Circuit>& circuits,
                       bool labelled) {
  IntMatrix m = IntMatrix::Zero(static_cast<Index>(circuits.size()), g.edge_count());
  for (Index i = 0; i < m.rows(); ++i) {
    const Circuit& c = circuits[static_cast<size_t>(i)];
    for (size_t k = 0; k < c.edges.size(); ++k) {
      Index j = c.edges[k];
      Int v = labelled ? g.edge(j).label.as_int() : Int(1);
      m(i, j) = c.forward[k] ? v : -v;
    }
  }
  return m;
}

void require_finite(const LabelledGraph& g) {
  if (g.has_infinite_label())
    throw InfiniteLabelPresent(
        "labelled circuit matrices need finite labels; contract infinite edges first");
}

}  // namespace

IntMatrix CircuitMatrixBundle::permuted_links_first(const std::vector<Index>& links) const {
  std::vector<Index> order = links;
  std::vector<bool> is_link(static_cast<size_t>(matrix.cols()), false);
  for (Index l : links) is_link[static_cast<size_t>(l)] = true;
  for (Index j = 0; j < matrix.cols(); ++j)
    if (!is_link[static_cast<size_t>(j)]) order.push_back(j);
  IntMatrix out(matrix.rows(), matrix.cols());
  for (Index j = 0; j < matrix.cols(); ++j) out.col(j) = matrix.col(order[static_cast<size_t>(j)]);
  return out;
}

CircuitMatrixBundle circuit_matrix(const LabelledGraph& g, bool labelled, std::size_t cap) {
  if (labelled) require_finite(g);
  CircuitMatrixBundle b;
  b.circuits = enumerate_circuits(g, cap);
  b.edge_ids = g.edge_ids();
  b.labelled = labelled;
  b.matrix = build_matrix(g, b.circuits, labelled);
  return b;
}

CircuitMatrixBundle fundamental_circuit_matrix(const LabelledGraph& g, const SpanningTree& t,
                                               bool labelled) {
  if (labelled) require_finite(g);
  CircuitMatrixBundle b;
  b.circuits = fundamental_circuits(g, t);
  b.edge_ids = g.edge_ids();
  b.labelled = labelled;
  b.matrix = build_matrix(g, b.circuits, labelled);
  return b;
}

IntVector rhs_vector(const LabelledGraph& g, const std::string& edge_id,
                     const std::vector<Circuit>& circuits) {
  auto e = g.find_edge(edge_id);
  if (!e) throw UnknownEdge("unknown edge '" + edge_id + "'");
  IntVector b = IntVector::Zero(static_cast<Index>(circuits.size()));
  for (size_t i = 0; i < circuits.size(); ++i) {
    const Circuit& c = circuits[i];
    for (size_t k = 0; k < c.edges.size(); ++k) {
      if (c.edges[k] != *e) continue;
      b(static_cast<Index>(i)) = c.forward[k] ? -1 : 1;
      break;
    }
  }
  return b;
}

}  // namespace semifact
