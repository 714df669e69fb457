#include "semifact/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace semifact {

namespace {

// Union-find on vertex indices.
class Dsu {
 public:
  explicit Dsu(Index n) : parent_(static_cast<size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index x) {
    while (parent_[static_cast<size_t>(x)] != x) {
      parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
      x = parent_[static_cast<size_t>(x)];
    }
    return x;
  }
  // Returns false if already joined.
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[static_cast<size_t>(b)] = a;  // smaller index wins: stable reps
    return true;
  }

 private:
  std::vector<Index> parent_;
};

}  // namespace

LabelledGraph LabelledGraph::build(std::vector<std::string> vertices,
                                   std::vector<EdgeSpec> edges) {
  if (vertices.empty()) throw DisconnectedGraph("graph has no vertices");

  std::sort(vertices.begin(), vertices.end());
  for (size_t i = 0; i + 1 < vertices.size(); ++i)
    if (vertices[i] == vertices[i + 1])
      throw DuplicateId("duplicate vertex id '" + vertices[i] + "'");

  std::sort(edges.begin(), edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i].id == edges[i + 1].id)
      throw DuplicateId("duplicate edge id '" + edges[i].id + "'");

  LabelledGraph g;
  g.vertex_ids_ = std::move(vertices);
  std::unordered_map<std::string, Index> vindex;
  for (Index v = 0; v < g.vertex_count(); ++v) vindex.emplace(g.vertex_ids_[static_cast<size_t>(v)], v);

  g.edges_.reserve(edges.size());
  for (const EdgeSpec& s : edges) {
    auto si = vindex.find(s.source);
    auto ti = vindex.find(s.target);
    if (si == vindex.end())
      throw DanglingEndpoint("edge '" + s.id + "' references unknown vertex '" + s.source + "'");
    if (ti == vindex.end())
      throw DanglingEndpoint("edge '" + s.id + "' references unknown vertex '" + s.target + "'");
    g.edges_.push_back(Edge{s.id, si->second, ti->second, s.label});
  }

  g.incidence_.assign(static_cast<size_t>(g.vertex_count()), {});
  for (Index e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges_[static_cast<size_t>(e)];
    g.incidence_[static_cast<size_t>(ed.source)].push_back(e);
    if (!ed.is_loop()) g.incidence_[static_cast<size_t>(ed.target)].push_back(e);
  }

  Dsu dsu(g.vertex_count());
  for (const Edge& ed : g.edges_)
    if (!ed.is_loop()) dsu.unite(ed.source, ed.target);
  for (Index v = 1; v < g.vertex_count(); ++v)
    if (dsu.find(v) != dsu.find(0))
      throw DisconnectedGraph("graph is not connected (vertex '" +
                              g.vertex_ids_[static_cast<size_t>(v)] + "' unreachable)");
  return g;
}

Index LabelledGraph::vertex_index(const std::string& id) const {
  auto v = find_vertex(id);
  if (!v) throw DanglingEndpoint("unknown vertex '" + id + "'");
  return *v;
}

std::optional<Index> LabelledGraph::find_vertex(const std::string& id) const {
  auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
  if (it == vertex_ids_.end() || *it != id) return std::nullopt;
  return static_cast<Index>(it - vertex_ids_.begin());
}

std::optional<Index> LabelledGraph::find_edge(const std::string& id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, const std::string& s) { return e.id < s; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<Index>(it - edges_.begin());
}

bool LabelledGraph::has_infinite_label() const {
  for (const Edge& e : edges_)
    if (e.label.is_infinite()) return true;
  return false;
}

std::vector<std::string> LabelledGraph::edge_ids() const {
  std::vector<std::string> ids;
  ids.reserve(edges_.size());
  for (const Edge& e : edges_) ids.push_back(e.id);
  return ids;
}

bool operator==(const LabelledGraph& a, const LabelledGraph& b) {
  if (a.vertex_ids_ != b.vertex_ids_) return false;
  if (a.edges_.size() != b.edges_.size()) return false;
  for (size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.id != y.id || x.source != y.source || x.target != y.target || !(x.label == y.label))
      return false;
  }
  return true;
}

LabelledGraph build_graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
  return LabelledGraph::build(std::move(vertices), std::move(edges));
}

std::pair<LabelledGraph, std::map<std::string, std::string>> contract_infinite(
    const LabelledGraph& g) {
  Dsu dsu(g.vertex_count());
  for (const Edge& e : g.edges())
    if (e.label.is_infinite() && !e.is_loop()) dsu.unite(e.source, e.target);

  // Representative of each class: smallest vertex index, hence smallest id.
  std::map<std::string, std::string> vmap;
  std::vector<std::string> new_vertices;
  for (Index v = 0; v < g.vertex_count(); ++v) {
    Index rep = dsu.find(v);
    vmap[g.vertex_id(v)] = g.vertex_id(rep);
    if (rep == v) new_vertices.push_back(g.vertex_id(v));
  }

  std::vector<EdgeSpec> new_edges;
  for (const Edge& e : g.edges()) {
    if (e.label.is_infinite()) continue;
    new_edges.push_back(EdgeSpec{e.id, g.vertex_id(dsu.find(e.source)),
                                 g.vertex_id(dsu.find(e.target)), e.label});
  }
  return {LabelledGraph::build(std::move(new_vertices), std::move(new_edges)), std::move(vmap)};
}

bool SpanningTree::contains_edge(Index e) const {
  return std::binary_search(tree_edges.begin(), tree_edges.end(), e);
}

SpanningTree spanning_tree(const LabelledGraph& g) {
  const Index n = g.vertex_count();
  SpanningTree t;
  t.parent_vertex.assign(static_cast<size_t>(n), -1);
  t.parent_edge.assign(static_cast<size_t>(n), -1);
  std::vector<bool> visited(static_cast<size_t>(n), false);
  std::vector<bool> in_tree(static_cast<size_t>(g.edge_count()), false);

  std::deque<Index> queue;
  visited[0] = true;  // vertex 0 has the lexicographically smallest id
  queue.push_back(0);
  while (!queue.empty()) {
    Index v = queue.front();
    queue.pop_front();
    for (Index e : g.incident_edges(v)) {
      const Edge& ed = g.edge(e);
      Index w = ed.source == v ? ed.target : ed.source;
      if (visited[static_cast<size_t>(w)]) continue;
      visited[static_cast<size_t>(w)] = true;
      in_tree[static_cast<size_t>(e)] = true;
      t.parent_vertex[static_cast<size_t>(w)] = v;
      t.parent_edge[static_cast<size_t>(w)] = e;
      queue.push_back(w);
    }
  }
  for (Index e = 0; e < g.edge_count(); ++e)
    (in_tree[static_cast<size_t>(e)] ? t.tree_edges : t.links).push_back(e);
  return t;
}

SpanningTree spanning_tree_from_edges(const LabelledGraph& g,
                                      const std::vector<std::string>& edge_ids) {
  std::vector<bool> in_tree(static_cast<size_t>(g.edge_count()), false);
  for (const std::string& id : edge_ids) {
    auto e = g.find_edge(id);
    if (!e) throw ValidationError("tree edge '" + id + "' not in graph");
    in_tree[static_cast<size_t>(*e)] = true;
  }
  if (std::count(in_tree.begin(), in_tree.end(), true) != g.vertex_count() - 1)
    throw ValidationError("tree edge set must have |V| - 1 distinct edges");

  SpanningTree t;
  t.parent_vertex.assign(static_cast<size_t>(g.vertex_count()), -1);
  t.parent_edge.assign(static_cast<size_t>(g.vertex_count()), -1);
  Dsu dsu(g.vertex_count());
  for (Index e = 0; e < g.edge_count(); ++e) {
    if (!in_tree[static_cast<size_t>(e)]) continue;
    const Edge& ed = g.edge(e);
    if (ed.is_loop() || !dsu.unite(ed.source, ed.target))
      throw ValidationError("tree edge set contains a cycle at edge '" + ed.id + "'");
  }
  // Acyclic with |V| - 1 edges on a connected vertex set: a spanning tree.
  // Root it at vertex 0 by BFS over tree edges.
  std::vector<bool> visited(static_cast<size_t>(g.vertex_count()), false);
  std::deque<Index> queue;
  visited[0] = true;
  queue.push_back(0);
  while (!queue.empty()) {
    Index v = queue.front();
    queue.pop_front();
    for (Index e : g.incident_edges(v)) {
      if (!in_tree[static_cast<size_t>(e)]) continue;
      const Edge& ed = g.edge(e);
      Index w = ed.source == v ? ed.target : ed.source;
      if (visited[static_cast<size_t>(w)]) continue;
      visited[static_cast<size_t>(w)] = true;
      t.parent_vertex[static_cast<size_t>(w)] = v;
      t.parent_edge[static_cast<size_t>(w)] = e;
      queue.push_back(w);
    }
  }
  for (Index e = 0; e < g.edge_count(); ++e)
    (in_tree[static_cast<size_t>(e)] ? t.tree_edges : t.links).push_back(e);
  return t;
}

std::vector<Index> Circuit::vertex_sequence(const LabelledGraph& g) const {
  std::vector<Index> seq;
  seq.reserve(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = g.edge(edges[i]);
    seq.push_back(forward[i] ? e.source : e.target);
  }
  return seq;
}

bool Circuit::contains_edge(Index e) const {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

std::vector<Circuit> fundamental_circuits(const LabelledGraph& g, const SpanningTree& t) {
  // Tree path from a vertex up to the root, as (vertex, edge-to-parent) steps.
  auto root_path = [&](Index v) {
    std::vector<Index> verts{v};
    while (t.parent_vertex[static_cast<size_t>(v)] >= 0) {
      v = t.parent_vertex[static_cast<size_t>(v)];
      verts.push_back(v);
    }
    return verts;
  };

  std::vector<Circuit> out;
  out.reserve(t.links.size());
  for (Index link : t.links) {
    const Edge& le = g.edge(link);
    Circuit c;
    c.edges.push_back(link);
    c.forward.push_back(true);  // traversal agrees with the link orientation
    if (!le.is_loop()) {
      // Walk the tree path target -> source through the lowest common ancestor.
      std::vector<Index> pu = root_path(le.target);
      std::vector<Index> pv = root_path(le.source);
      // Strip the common tail above the LCA; both paths then end at the LCA.
      while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
        pu.pop_back();
        pv.pop_back();
      }
      // Ascend from target to LCA.
      for (size_t i = 0; i + 1 < pu.size(); ++i) {
        Index e = t.parent_edge[static_cast<size_t>(pu[i])];
        const Edge& ed = g.edge(e);
        c.edges.push_back(e);
        c.forward.push_back(ed.source == pu[i]);
      }
      // Descend from LCA to source.
      for (size_t i = pv.size() - 1; i-- > 0;) {
        Index e = t.parent_edge[static_cast<size_t>(pv[i])];
        const Edge& ed = g.edge(e);
        c.edges.push_back(e);
        c.forward.push_back(ed.target == pv[i]);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

Circuit canonical_circuit(const LabelledGraph& g, const Circuit& c) {
  if (c.edges.size() <= 1) {
    Circuit out = c;
    if (!out.forward.empty()) out.forward[0] = true;  // a loop traversed forward
    return out;
  }
  std::vector<Index> verts = c.vertex_sequence(g);
  const size_t k = c.edges.size();
  size_t start = 0;
  for (size_t i = 1; i < k; ++i)
    if (verts[i] < verts[start]) start = i;

  // The two circuit edges at the start vertex: outgoing (start) and incoming
  // (start - 1). Proceed toward the smaller edge index.
  Index e_out = c.edges[start];
  Index e_in = c.edges[(start + k - 1) % k];
  bool reverse = e_in < e_out;

  Circuit out;
  out.edges.reserve(k);
  out.forward.reserve(k);
  if (!reverse) {
    for (size_t i = 0; i < k; ++i) {
      size_t j = (start + i) % k;
      out.edges.push_back(c.edges[j]);
      out.forward.push_back(c.forward[j]);
    }
  } else {
    for (size_t i = 0; i < k; ++i) {
      size_t j = (start + k - 1 - i) % k;
      out.edges.push_back(c.edges[j]);
      out.forward.push_back(!c.forward[j]);
    }
  }
  return out;
}

namespace {

// Enumerate the simple vertex cycles (length >= 3) of g by rooted DFS: the
// root is the smallest vertex of the cycle, and the direction is fixed by
// requiring the second vertex to be smaller than the last one. Parallel
// edges multiply each vertex cycle into distinct circuits.
struct CycleEnumerator {
  const LabelledGraph& g;
  std::size_t cap;
  std::vector<Circuit> out;
  std::vector<Index> path_vertices;
  std::vector<Index> path_edges;
  std::vector<bool> on_path;

  CycleEnumerator(const LabelledGraph& gr, std::size_t c)
      : g(gr), cap(c), on_path(static_cast<size_t>(gr.vertex_count()), false) {}

  void emit(Index closing_edge) {
    Circuit c;
    c.edges.reserve(path_vertices.size());
    c.forward.reserve(path_vertices.size());
    for (size_t i = 0; i < path_edges.size(); ++i) {
      Index e = path_edges[i];
      c.edges.push_back(e);
      c.forward.push_back(g.edge(e).source == path_vertices[i]);
    }
    c.edges.push_back(closing_edge);
    c.forward.push_back(g.edge(closing_edge).source == path_vertices.back());
    if (out.size() >= cap) throw CircuitCapExceeded("more than " + std::to_string(cap) + " circuits");
    out.push_back(std::move(c));
  }

  void dfs(Index root, Index v) {
    for (Index e : g.incident_edges(v)) {
      const Edge& ed = g.edge(e);
      if (ed.is_loop()) continue;
      Index w = ed.source == v ? ed.target : ed.source;
      if (w == root && path_vertices.size() >= 3) {
        // Direction convention: second vertex smaller than the closing one.
        if (path_vertices[1] < v) emit(e);
        continue;
      }
      if (w <= root || on_path[static_cast<size_t>(w)]) continue;
      path_vertices.push_back(w);
      path_edges.push_back(e);
      on_path[static_cast<size_t>(w)] = true;
      dfs(root, w);
      on_path[static_cast<size_t>(w)] = false;
      path_edges.pop_back();
      path_vertices.pop_back();
    }
  }

  void run() {
    for (Index root = 0; root < g.vertex_count(); ++root) {
      path_vertices.assign(1, root);
      path_edges.clear();
      on_path[static_cast<size_t>(root)] = true;
      dfs(root, root);
      on_path[static_cast<size_t>(root)] = false;
    }
  }
};

}  // namespace

std::vector<Circuit> enumerate_circuits(const LabelledGraph& g, std::size_t cap) {
  std::vector<Circuit> circuits;

  // Loops: circuits of length 1.
  for (Index e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).is_loop()) circuits.push_back(Circuit{{e}, {true}});

  // Parallel pairs: circuits of length 2.
  for (Index e1 = 0; e1 < g.edge_count(); ++e1) {
    const Edge& a = g.edge(e1);
    if (a.is_loop()) continue;
    for (Index e2 = e1 + 1; e2 < g.edge_count(); ++e2) {
      const Edge& b = g.edge(e2);
      if (b.is_loop()) continue;
      bool same = (a.source == b.source && a.target == b.target);
      bool swapped = (a.source == b.target && a.target == b.source);
      if (!same && !swapped) continue;
      // Traversal: start -> other via e1, back via e2.
      Index start = std::min(a.source, a.target);
      Circuit c;
      c.edges = {e1, e2};
      c.forward = {a.source == start, b.source != start};
      circuits.push_back(std::move(c));
    }
  }

  CycleEnumerator en(g, cap);
  en.run();
  for (Circuit& c : en.out) circuits.push_back(std::move(c));
  if (circuits.size() > cap)
    throw CircuitCapExceeded("more than " + std::to_string(cap) + " circuits");

  for (Circuit& c : circuits) c = canonical_circuit(g, c);
  std::sort(circuits.begin(), circuits.end(), [](const Circuit& x, const Circuit& y) {
    if (x.edges.size() != y.edges.size()) return x.edges.size() < y.edges.size();
    return x.edges < y.edges;
  });
  return circuits;
}

bool BlowupGraph::is_old_vertex(const std::string& id) const {
  return std::binary_search(old_vertices.begin(), old_vertices.end(), id);
}

std::vector<Index> BlowupGraph::new_vertex_indices() const {
  std::vector<Index> out;
  for (Index v = 0; v < graph.vertex_count(); ++v)
    if (!is_old_vertex(graph.vertex_id(v))) out.push_back(v);
  return out;
}

std::vector<std::string> BlowupGraph::path_of_base_edge(const std::string& base_edge_id) const {
  auto be = base.find_edge(base_edge_id);
  if (!be) throw UnknownEdge("unknown base edge '" + base_edge_id + "'");
  const Edge& bed = base.edge(*be);
  const std::string src = base.vertex_id(bed.source);
  const std::string dst = base.vertex_id(bed.target);

  // Collect the edges descending from this base edge, keyed by endpoint.
  std::vector<Index> member_edges;
  for (Index e = 0; e < graph.edge_count(); ++e) {
    auto it = edge_provenance.find(graph.edge(e).id);
    if (it != edge_provenance.end() && it->second == base_edge_id) member_edges.push_back(e);
  }

  std::vector<std::vector<Index>> by_vertex(static_cast<size_t>(graph.vertex_count()));
  for (Index e : member_edges) {
    by_vertex[static_cast<size_t>(graph.edge(e).source)].push_back(e);
    if (!graph.edge(e).is_loop()) by_vertex[static_cast<size_t>(graph.edge(e).target)].push_back(e);
  }

  Index cur = graph.vertex_index(src);
  const Index goal = graph.vertex_index(dst);
  std::vector<std::string> path{src};
  std::vector<bool> used(static_cast<size_t>(graph.edge_count()), false);
  for (size_t step = 0; step < member_edges.size(); ++step) {
    Index next_edge = -1;
    for (Index e : by_vertex[static_cast<size_t>(cur)]) {
      if (used[static_cast<size_t>(e)]) continue;
      if (next_edge < 0 || e < next_edge) next_edge = e;
    }
    if (next_edge < 0) break;
    used[static_cast<size_t>(next_edge)] = true;
    const Edge& ed = graph.edge(next_edge);
    cur = ed.source == cur ? ed.target : ed.source;
    path.push_back(graph.vertex_id(cur));
  }
  if (cur != goal || path.size() != member_edges.size() + 1)
    throw Error("internal: broken subdivision path for edge '" + base_edge_id + "'");
  return path;
}

BlowupGraph as_level0(const LabelledGraph& g) {
  BlowupGraph b;
  b.graph = g;
  b.base = g;
  b.old_vertices = g.vertex_ids();
  for (const Edge& e : g.edges()) b.edge_provenance[e.id] = e.id;
  b.level = 0;
  return b;
}

namespace {

std::string fresh_id(const std::string& candidate, std::unordered_set<std::string>& taken) {
  std::string id = candidate;
  while (taken.count(id)) id += "x";
  taken.insert(id);
  return id;
}

}  // namespace

BlowupGraph first_blowup(const BlowupGraph& g) {
  const LabelledGraph& cur = g.graph;
  std::unordered_set<std::string> taken_v, taken_e;
  for (const std::string& v : cur.vertex_ids()) taken_v.insert(v);
  for (const Edge& e : cur.edges()) taken_e.insert(e.id);

  std::vector<std::string> vertices = cur.vertex_ids();
  std::vector<EdgeSpec> edges;
  std::map<std::string, std::string> provenance;
  auto base_of = [&](const std::string& id) { return g.edge_provenance.at(id); };

  for (const Edge& e : cur.edges()) {
    const std::string u = cur.vertex_id(e.source);
    const std::string w = cur.vertex_id(e.target);
    if (!e.label.is_infinite() && e.label.value() == 1) {
      edges.push_back(EdgeSpec{e.id, u, w, e.label});
      provenance[e.id] = base_of(e.id);
      continue;
    }
    const std::string orig = base_of(e.id);
    if (!e.label.is_infinite() && e.label.value() == 2) {
      // Middle label would be 0: the two interior vertices coincide.
      std::string x = fresh_id(e.id + "/1", taken_v);
      vertices.push_back(x);
      std::string a = fresh_id(e.id + "/1", taken_e);
      std::string b = fresh_id(e.id + "/2", taken_e);
      edges.push_back(EdgeSpec{a, u, x, EdgeLabel::finite(1)});
      edges.push_back(EdgeSpec{b, x, w, EdgeLabel::finite(1)});
      provenance[a] = orig;
      provenance[b] = orig;
      continue;
    }
    EdgeLabel middle = e.label.is_infinite() ? EdgeLabel::infinity()
                                             : EdgeLabel::finite(e.label.value() - 2);
    std::string x = fresh_id(e.id + "/1", taken_v);
    std::string y = fresh_id(e.id + "/2", taken_v);
    vertices.push_back(x);
    vertices.push_back(y);
    std::string a = fresh_id(e.id + "/1", taken_e);
    std::string b = fresh_id(e.id + "/2", taken_e);
    std::string c = fresh_id(e.id + "/3", taken_e);
    edges.push_back(EdgeSpec{a, u, x, EdgeLabel::finite(1)});
    edges.push_back(EdgeSpec{b, x, y, middle});
    edges.push_back(EdgeSpec{c, y, w, EdgeLabel::finite(1)});
    provenance[a] = orig;
    provenance[b] = orig;
    provenance[c] = orig;
  }

  BlowupGraph out;
  out.graph = LabelledGraph::build(std::move(vertices), std::move(edges));
  out.base = g.base;
  out.old_vertices = g.old_vertices;
  out.edge_provenance = std::move(provenance);
  out.level = g.level + 1;
  return out;
}

BlowupGraph nth_blowup(const LabelledGraph& g, int n) {
  BlowupGraph b = as_level0(g);
  for (int i = 0; i < n; ++i) b = first_blowup(b);
  return b;
}

BlowupGraph total_blowup(const LabelledGraph& g) {
  std::unordered_set<std::string> taken_v, taken_e;
  for (const std::string& v : g.vertex_ids()) taken_v.insert(v);
  for (const Edge& e : g.edges()) taken_e.insert(e.id);

  std::vector<std::string> vertices = g.vertex_ids();
  std::vector<EdgeSpec> edges;
  std::map<std::string, std::string> provenance;
  std::int64_t max_half = 0;  // ceil((m - 1) / 2) == m / 2 for m >= 1

  for (const Edge& e : g.edges()) {
    const std::string u = g.vertex_id(e.source);
    const std::string w = g.vertex_id(e.target);
    if (e.label.is_infinite() || e.label.value() == 1) {
      edges.push_back(EdgeSpec{e.id, u, w, e.label});
      provenance[e.id] = e.id;
      continue;
    }
    const std::int64_t m = e.label.value();
    max_half = std::max(max_half, m / 2);
    std::string prev = u;
    for (std::int64_t k = 1; k <= m; ++k) {
      std::string next = k == m ? w : fresh_id(e.id + "/" + std::to_string(k), taken_v);
      if (k < m) vertices.push_back(next);
      std::string eid = fresh_id(e.id + "/" + std::to_string(k), taken_e);
      edges.push_back(EdgeSpec{eid, prev, next, EdgeLabel::finite(1)});
      provenance[eid] = e.id;
      prev = next;
    }
  }

  BlowupGraph out;
  out.graph = LabelledGraph::build(std::move(vertices), std::move(edges));
  out.base = g;
  out.old_vertices = g.vertex_ids();
  out.edge_provenance = std::move(provenance);
  out.level = static_cast<int>(max_half);
  return out;
}

namespace {

// Backtracking label-preserving isomorphism on small multigraphs.
struct IsoSearch {
  const LabelledGraph& a;
  const LabelledGraph& b;
  const std::vector<bool>& old_a;
  const std::vector<bool>& old_b;
  bool same_old_ids;
  std::vector<Index> map_ab;   // a-vertex -> b-vertex or -1
  std::vector<bool> used_b;

  // Multiset of (label, is_loop) over edges between mapped pairs must match.
  bool feasible_edge_counts(Index va, Index vb) const {
    // Compare incident label multisets as a cheap local filter.
    std::multiset<std::pair<bool, std::int64_t>> la, lb;
    for (Index e : a.incident_edges(va)) {
      const Edge& ed = a.edge(e);
      la.emplace(ed.label.is_infinite(), ed.label.is_infinite() ? 0 : ed.label.value());
    }
    for (Index e : b.incident_edges(vb)) {
      const Edge& ed = b.edge(e);
      lb.emplace(ed.label.is_infinite(), ed.label.is_infinite() ? 0 : ed.label.value());
    }
    return la == lb;
  }

  bool consistent(Index va, Index vb) const {
    // All a-edges between va and already-mapped vertices must be matched by
    // b-edges with the same labels (as multisets), and conversely.
    for (Index ua = 0; ua < a.vertex_count(); ++ua) {
      Index ub = map_ab[static_cast<size_t>(ua)];
      if (ub < 0 && ua != va) continue;
      Index target_b = ua == va ? vb : ub;
      std::multiset<std::pair<bool, std::int64_t>> ma, mb;
      for (Index e : a.incident_edges(va)) {
        const Edge& ed = a.edge(e);
        Index other = ed.source == va ? ed.target : ed.source;
        if (ed.is_loop()) other = va;
        if (other != ua) continue;
        ma.emplace(ed.label.is_infinite(), ed.label.is_infinite() ? 0 : ed.label.value());
      }
      for (Index e : b.incident_edges(vb)) {
        const Edge& ed = b.edge(e);
        Index other = ed.source == vb ? ed.target : ed.source;
        if (ed.is_loop()) other = vb;
        if (other != target_b) continue;
        mb.emplace(ed.label.is_infinite(), ed.label.is_infinite() ? 0 : ed.label.value());
      }
      if (ma != mb) return false;
    }
    return true;
  }

  bool search(Index va) {
    if (va == a.vertex_count()) return true;
    for (Index vb = 0; vb < b.vertex_count(); ++vb) {
      if (used_b[static_cast<size_t>(vb)]) continue;
      if (old_a[static_cast<size_t>(va)] != old_b[static_cast<size_t>(vb)]) continue;
      if (same_old_ids && old_a[static_cast<size_t>(va)] &&
          a.vertex_id(va) != b.vertex_id(vb))
        continue;
      if (!feasible_edge_counts(va, vb)) continue;
      map_ab[static_cast<size_t>(va)] = vb;
      if (consistent(va, vb)) {
        used_b[static_cast<size_t>(vb)] = true;
        if (search(va + 1)) return true;
        used_b[static_cast<size_t>(vb)] = false;
      }
      map_ab[static_cast<size_t>(va)] = -1;
    }
    return false;
  }
};

}  // namespace

bool labelled_isomorphic(const LabelledGraph& a, const std::vector<std::string>& old_a,
                         const LabelledGraph& b, const std::vector<std::string>& old_b,
                         bool require_same_old_ids) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  if (old_a.size() != old_b.size()) return false;

  std::vector<bool> fa(static_cast<size_t>(a.vertex_count()), false);
  std::vector<bool> fb(static_cast<size_t>(b.vertex_count()), false);
  for (const std::string& id : old_a) {
    auto v = a.find_vertex(id);
    if (!v) return false;
    fa[static_cast<size_t>(*v)] = true;
  }
  for (const std::string& id : old_b) {
    auto v = b.find_vertex(id);
    if (!v) return false;
    fb[static_cast<size_t>(*v)] = true;
  }

  // Global label multisets must agree.
  std::multiset<std::pair<bool, std::int64_t>> la, lb;
  for (const Edge& e : a.edges())
    la.emplace(e.label.is_infinite(), e.label.is_infinite() ? 0 : e.label.value());
  for (const Edge& e : b.edges())
    lb.emplace(e.label.is_infinite(), e.label.is_infinite() ? 0 : e.label.value());
  if (la != lb) return false;

  IsoSearch s{a, b, fa, fb, require_same_old_ids,
              std::vector<Index>(static_cast<size_t>(a.vertex_count()), -1),
              std::vector<bool>(static_cast<size_t>(b.vertex_count()), false)};
  return s.search(0);
}

bool labelled_isomorphic(const LabelledGraph& a, const LabelledGraph& b) {
  return labelled_isomorphic(a, {}, b, {});
}

}  // namespace semifact
