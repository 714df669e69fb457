#include "semifact/labelling.hpp"

#include <algorithm>
#include <cassert>

namespace semifact {

CartierCheck is_cartier(const LabelledGraph& g, const VertexLabelling& phi) {
  if (phi.size() != g.vertex_count())
    throw DimensionMismatch("labelling length != vertex count");
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    Int diff = phi(e.source) - phi(e.target);
    bool ok = e.label.is_infinite() ? diff == 0 : divides(e.label.as_int(), diff);
    if (!ok) return CartierCheck{false, e.id};
  }
  return CartierCheck{true, std::nullopt};
}

CartierLattice cartier_basis(const LabelledGraph& g) {
  const Index n = g.vertex_count();
  std::vector<CongruenceConstraint> constraints;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;  // vacuous constraint
    if (!e.label.is_infinite() && e.label.value() == 1) continue;
    CongruenceConstraint c;
    c.coeffs = IntVector::Zero(n);
    c.coeffs(e.source) = 1;
    c.coeffs(e.target) = -1;
    if (!e.label.is_infinite()) c.modulus = e.label.as_int();
    constraints.push_back(std::move(c));
  }
  CartierLattice out;
  out.vertex_ids = g.vertex_ids();
  out.basis = congruence_lattice(constraints, n);
  return out;
}

VertexLabelling multidegree(const LabelledGraph& g, const VertexLabelling& phi) {
  CartierCheck chk = is_cartier(g, phi);
  if (!chk.ok)
    throw NotCartier("labelling is not Cartier across edge '" + *chk.violating_edge + "'");
  VertexLabelling out = VertexLabelling::Zero(g.vertex_count());
  for (const Edge& e : g.edges()) {
    if (e.is_loop() || e.label.is_infinite()) continue;  // both contribute zero
    Int step = exact_div(phi(e.target) - phi(e.source), e.label.as_int());
    out(e.source) += step;
    out(e.target) -= step;
  }
  return out;
}

IntMatrix delta_matrix(const LabelledGraph& g, const CartierLattice& lattice) {
  IntMatrix d(g.vertex_count(), lattice.rank());
  for (Index i = 0; i < lattice.rank(); ++i)
    d.col(i) = multidegree(g, lattice.basis.basis.row(i).transpose());
  return d;
}

IntMatrix delta_matrix(const LabelledGraph& g) { return delta_matrix(g, cartier_basis(g)); }

ComponentGroup component_group(const LabelledGraph& g) {
  CokernelInvariants inv = coker_invariants(delta_matrix(g));
  return ComponentGroup{inv.free_rank, std::move(inv.torsion)};
}

namespace {

void require_blowup_of(const LabelledGraph& g, const BlowupGraph& target) {
  if (!(target.base == g))
    throw NotABlowupOf("target blow-up was not constructed from this graph");
}

}  // namespace

VertexLabelling iota_interpolate(const LabelledGraph& g, const BlowupGraph& target,
                                 const VertexLabelling& phi) {
  require_blowup_of(g, target);
  CartierCheck chk = is_cartier(g, phi);
  if (!chk.ok)
    throw NotCartier("labelling is not Cartier across edge '" + *chk.violating_edge + "'");

  VertexLabelling out = VertexLabelling::Zero(target.graph.vertex_count());
  for (Index v = 0; v < g.vertex_count(); ++v)
    out(target.graph.vertex_index(g.vertex_id(v))) = phi(v);

  for (const Edge& be : g.edges()) {
    // Per-unit-of-label increment along the subdivision path; zero across
    // infinite edges (where phi is constant) and loops. Label sums along a
    // path are preserved by blowing up, so interpolating by cumulative
    // label distance agrees with the per-level interpolation rule.
    Int step = 0;
    if (!be.label.is_infinite() && !be.is_loop())
      step = exact_div(phi(be.target) - phi(be.source), be.label.as_int());
    const Int base_value = phi(be.source);

    std::vector<std::string> path = target.path_of_base_edge(be.id);
    if (path.size() <= 2) continue;  // no new vertices on this edge

    Int distance = 0;
    std::vector<bool> used(static_cast<size_t>(target.graph.edge_count()), false);
    Index cur = target.graph.vertex_index(path[0]);
    for (size_t k = 1; k < path.size(); ++k) {
      Index next = target.graph.vertex_index(path[k]);
      Index chosen = -1;
      for (Index e : target.graph.incident_edges(cur)) {
        if (used[static_cast<size_t>(e)]) continue;
        auto it = target.edge_provenance.find(target.graph.edge(e).id);
        if (it == target.edge_provenance.end() || it->second != be.id) continue;
        const Edge& ed = target.graph.edge(e);
        Index other = ed.source == cur ? ed.target : ed.source;
        if (other != next) continue;
        if (chosen < 0 || e < chosen) chosen = e;
      }
      if (chosen < 0) throw Error("internal: interpolation path mismatch");
      used[static_cast<size_t>(chosen)] = true;
      const EdgeLabel& lbl = target.graph.edge(chosen).label;
      distance += lbl.is_infinite() ? Int(0) : lbl.as_int();
      cur = next;
      if (k + 1 < path.size()) out(cur) = base_value + distance * step;
    }
  }

#ifndef NDEBUG
  assert(is_cartier(target.graph, out).ok);
#endif
  return out;
}

VertexLabelling epsilon_extend(const LabelledGraph& g, const BlowupGraph& target,
                               const VertexLabelling& alpha) {
  require_blowup_of(g, target);
  if (alpha.size() != g.vertex_count())
    throw DimensionMismatch("labelling length != vertex count");
  VertexLabelling out = VertexLabelling::Zero(target.graph.vertex_count());
  for (Index v = 0; v < g.vertex_count(); ++v)
    out(target.graph.vertex_index(g.vertex_id(v))) = alpha(v);
  return out;
}

namespace {

IntMatrix rows_at(const IntMatrix& m, const std::vector<Index>& rows) {
  IntMatrix out(static_cast<Index>(rows.size()), m.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

}  // namespace

DescentSystem::DescentSystem(const BlowupGraph& target)
    : target_(target),
      lattice_(cartier_basis(target.graph)),
      delta_(delta_matrix(target.graph, lattice_)),
      new_vertices_(target.new_vertex_indices()),
      delta_new_(rows_at(delta_, new_vertices_)),
      solver_(delta_new_) {}

std::optional<VertexLabelling> DescentSystem::solve(const VertexLabelling& alpha) const {
  if (alpha.size() != target_.graph.vertex_count())
    throw DimensionMismatch("labelling length != vertex count");
  IntVector rhs(static_cast<Index>(new_vertices_.size()));
  for (size_t i = 0; i < new_vertices_.size(); ++i)
    rhs(static_cast<Index>(i)) = -alpha(new_vertices_[i]);
  std::optional<IntVector> y = solver_.solve(rhs);
  if (!y) return std::nullopt;
  return lattice_.combine(*y);
}

bool DescentSystem::feasible(const VertexLabelling& alpha) const {
  IntVector rhs(static_cast<Index>(new_vertices_.size()));
  for (size_t i = 0; i < new_vertices_.size(); ++i)
    rhs(static_cast<Index>(i)) = -alpha(new_vertices_[i]);
  return solver_.feasible(rhs);
}

bool DescentSystem::feasible_indicator(Index new_vertex) const {
  IntVector rhs = IntVector::Zero(static_cast<Index>(new_vertices_.size()));
  for (size_t i = 0; i < new_vertices_.size(); ++i)
    if (new_vertices_[i] == new_vertex) rhs(static_cast<Index>(i)) = -1;
  return solver_.feasible(rhs);
}

std::optional<VertexLabelling> descent_solve(const BlowupGraph& target,
                                             const VertexLabelling& alpha) {
  return DescentSystem(target).solve(alpha);
}

VertexLabelling pushforward_multidegree(const BlowupGraph& target, const VertexLabelling& alpha,
                                        const VertexLabelling& phi) {
  VertexLabelling total = multidegree(target.graph, phi) + alpha;
  for (Index v : target.new_vertex_indices())
    if (total(v) != 0)
      throw SupportConditionViolated("delta(phi) + alpha is nonzero at new vertex '" +
                                     target.graph.vertex_id(v) + "'");
  VertexLabelling out(target.base.vertex_count());
  for (Index v = 0; v < target.base.vertex_count(); ++v)
    out(v) = total(target.graph.vertex_index(target.base.vertex_id(v)));
  return out;
}

bool h_map_is_iso(const LabelledGraph& g, int n) {
  BlowupGraph target = nth_blowup(g, n);
  std::vector<Index> fresh = target.new_vertex_indices();
  if (fresh.empty()) return true;
  DescentSystem system(target);
  for (Index v : fresh)
    if (!system.feasible_indicator(v)) return false;
  return true;
}

}  // namespace semifact
