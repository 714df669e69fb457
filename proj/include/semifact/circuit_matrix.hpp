// Circuit matrices: the full circuit matrix over all circuits, the
// fundamental circuit matrix over a spanning tree, their label-weighted
// variants, and the right-hand-side vectors used by the descent systems.

#ifndef SEMIFACT_CIRCUIT_MATRIX_HPP
#define SEMIFACT_CIRCUIT_MATRIX_HPP

#include <string>
#include <vector>

#include "semifact/graph.hpp"
#include "semifact/numeric.hpp"

namespace semifact {

// Rows are circuits, columns are edges in edge-id order. Unlabelled entries
// lie in {-1, 0, 1}; the labelled matrix weighs column j by l(e_j).
struct CircuitMatrixBundle {
  std::vector<Circuit> circuits;       // row order
  std::vector<std::string> edge_ids;   // column order
  IntMatrix matrix;
  bool labelled = false;

  // Columns permuted so the given links come first. For an unlabelled
  // fundamental bundle this exposes the identity-block form.
  IntMatrix permuted_links_first(const std::vector<Index>& links) const;
};

// Full circuit matrix; throws CircuitCapExceeded past `cap` circuits and
// InfiniteLabelPresent for the labelled variant on a graph with an
// infinite label.
CircuitMatrixBundle circuit_matrix(const LabelledGraph& g, bool labelled,
                                   std::size_t cap = 10000);

// Fundamental circuit matrix over the given spanning tree, rows in link
// order, each row's traversal agreeing with its link's orientation.
CircuitMatrixBundle fundamental_circuit_matrix(const LabelledGraph& g, const SpanningTree& t,
                                               bool labelled);

// Per circuit: 0 if e is not on it, -1 if e's reference orientation agrees
// with the circuit traversal, +1 otherwise.
IntVector rhs_vector(const LabelledGraph& g, const std::string& edge_id,
                     const std::vector<Circuit>& circuits);

}  // namespace semifact

#endif  // SEMIFACT_CIRCUIT_MATRIX_HPP
