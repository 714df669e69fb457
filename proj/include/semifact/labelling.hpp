// Integer vertex labellings: the Cartier sublattice, the multidegree
// operator, component groups of blow-up levels, interpolation and
// extension-by-zero maps, and the descent solver.

#ifndef SEMIFACT_LABELLING_HPP
#define SEMIFACT_LABELLING_HPP

#include <optional>
#include <string>
#include <vector>

#include "semifact/graph.hpp"
#include "semifact/numeric.hpp"
#include "semifact/zlinalg.hpp"

namespace semifact {

// A vertex labelling is an IntVector indexed by the graph's canonical
// (id-sorted) vertex order.
using VertexLabelling = IntVector;

struct CartierCheck {
  bool ok = true;
  std::optional<std::string> violating_edge;
};

// A labelling phi is Cartier when every finite label l(e) divides
// phi(v) - phi(w) and phi is constant across infinite edges.
CartierCheck is_cartier(const LabelledGraph& g, const VertexLabelling& phi);

// Basis of the sublattice of Cartier labellings in Z^V. Always contains the
// all-ones vector; its rank is the vertex count after contracting the
// infinite edges.
struct CartierLattice {
  std::vector<std::string> vertex_ids;
  LatticeBasis basis;  // rows are Cartier labellings

  Index rank() const { return basis.rank(); }
  VertexLabelling combine(const IntVector& coords) const { return basis.basis.transpose() * coords; }
};

CartierLattice cartier_basis(const LabelledGraph& g);

// Multidegree: v -> sum over incident edges of (phi(w) - phi(v)) / l(e),
// with loops contributing zero and 0/inf = 0. Throws NotCartier.
VertexLabelling multidegree(const LabelledGraph& g, const VertexLabelling& phi);

// |V| x rank(C) matrix whose column i is the multidegree of basis vector i.
IntMatrix delta_matrix(const LabelledGraph& g);
IntMatrix delta_matrix(const LabelledGraph& g, const CartierLattice& lattice);

// Invariant-factor presentation of coker(delta).
struct ComponentGroup {
  Index free_rank = 0;
  std::vector<Int> torsion;
};

ComponentGroup component_group(const LabelledGraph& g);

// Linear interpolation of a Cartier labelling along subdivision paths of a
// blow-up of g; agrees with phi on old vertices.
VertexLabelling iota_interpolate(const LabelledGraph& g, const BlowupGraph& target,
                                 const VertexLabelling& phi);

// Extension by zero to the new vertices of a blow-up of g.
VertexLabelling epsilon_extend(const LabelledGraph& g, const BlowupGraph& target,
                               const VertexLabelling& alpha);

// Cartier phi on the blow-up with (delta(phi) + alpha) zero on every new
// vertex, or nullopt if no such labelling exists.
std::optional<VertexLabelling> descent_solve(const BlowupGraph& target,
                                             const VertexLabelling& alpha);

// Reusable descent systems against one blow-up (shared Smith form).
class DescentSystem {
 public:
  explicit DescentSystem(const BlowupGraph& target);
  std::optional<VertexLabelling> solve(const VertexLabelling& alpha) const;
  bool feasible(const VertexLabelling& alpha) const;
  // Feasibility of the indicator labelling of one new vertex.
  bool feasible_indicator(Index new_vertex) const;
  const CartierLattice& lattice() const { return lattice_; }

 private:
  const BlowupGraph& target_;
  CartierLattice lattice_;
  IntMatrix delta_;
  std::vector<Index> new_vertices_;
  IntMatrix delta_new_;
  DiophantineSolver solver_;
};

// Restriction of delta(phi) + alpha to the old vertices, re-indexed by the
// base graph's vertex order. Throws SupportConditionViolated if it does not
// vanish on the new vertices.
VertexLabelling pushforward_multidegree(const BlowupGraph& target, const VertexLabelling& alpha,
                                        const VertexLabelling& phi);

// Whether extension-by-zero induces an isomorphism H -> H_n onto the
// component group of the level-n blow-up; decided by descent feasibility of
// every new-vertex indicator.
bool h_map_is_iso(const LabelledGraph& g, int n);

}  // namespace semifact

#endif  // SEMIFACT_LABELLING_HPP
