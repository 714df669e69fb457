#include "support/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "semifact/zlinalg.hpp"

namespace semifact::testing {

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  // Rejection sampling over the top of the generator range.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

std::uint64_t env_seed(std::uint64_t tag) {
  std::uint64_t seed = 0;
  if (const char* s = std::getenv("SEMIFACT_SEED")) seed = std::strtoull(s, nullptr, 10);
  return seed * 0x9e3779b97f4a7c15ull + tag;
}

std::set<std::vector<Index>> circuit_edge_sets_bruteforce(const LabelledGraph& g) {
  const Index m = g.edge_count();
  std::set<std::vector<Index>> out;
  for (std::uint64_t mask = 1; mask < (1ull << m); ++mask) {
    std::vector<Index> edges;
    for (Index e = 0; e < m; ++e)
      if (mask & (1ull << e)) edges.push_back(e);

    // Each covered vertex must have degree exactly 2 (a loop adds 2).
    std::vector<int> degree(static_cast<size_t>(g.vertex_count()), 0);
    for (Index e : edges) {
      degree[static_cast<size_t>(g.edge(e).source)] += 1;
      degree[static_cast<size_t>(g.edge(e).target)] += 1;
    }
    bool ok = true;
    for (int d : degree)
      if (d != 0 && d != 2) ok = false;
    if (!ok) continue;

    // Connectivity over covered vertices.
    std::vector<Index> covered;
    for (Index v = 0; v < g.vertex_count(); ++v)
      if (degree[static_cast<size_t>(v)]) covered.push_back(v);
    if (covered.empty()) continue;
    std::vector<bool> seen(static_cast<size_t>(g.vertex_count()), false);
    std::vector<Index> stack{covered[0]};
    seen[static_cast<size_t>(covered[0])] = true;
    while (!stack.empty()) {
      Index v = stack.back();
      stack.pop_back();
      for (Index e : edges) {
        const Edge& ed = g.edge(e);
        Index w;
        if (ed.source == v)
          w = ed.target;
        else if (ed.target == v)
          w = ed.source;
        else
          continue;
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    for (Index v : covered)
      if (!seen[static_cast<size_t>(v)]) ok = false;
    if (ok) out.insert(edges);
  }
  return out;
}

namespace {

Int minor_gcd(const IntMatrix& m, Index order) {
  std::vector<Index> rows(static_cast<size_t>(order)), cols(static_cast<size_t>(order));
  Int g = 0;

  std::function<void(Index, Index)> pick_cols = [&](Index depth, Index start) {
    if (depth == order) {
      IntMatrix sub(order, order);
      for (Index i = 0; i < order; ++i)
        for (Index j = 0; j < order; ++j)
          sub(i, j) = m(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
      g = gcd(g, determinant(sub));
      return;
    }
    for (Index c = start; c < m.cols(); ++c) {
      cols[static_cast<size_t>(depth)] = c;
      pick_cols(depth + 1, c + 1);
    }
  };
  std::function<void(Index, Index)> pick_rows = [&](Index depth, Index start) {
    if (depth == order) {
      pick_cols(0, 0);
      return;
    }
    for (Index r = start; r < m.rows(); ++r) {
      rows[static_cast<size_t>(depth)] = r;
      pick_rows(depth + 1, r + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

}  // namespace

std::vector<Int> snf_diagonal_gcd_minors(const IntMatrix& m) {
  const Index k = std::min(m.rows(), m.cols());
  std::vector<Int> out;
  Int prev = 1;
  bool dead = false;
  for (Index i = 1; i <= k; ++i) {
    if (dead) {
      out.push_back(0);
      continue;
    }
    Int di = minor_gcd(m, i);
    if (di == 0) {
      out.push_back(0);
      dead = true;
      continue;
    }
    out.push_back(exact_div(di, prev));
    prev = di;
  }
  return out;
}

std::vector<Int> critical_group_from_laplacian(const LabelledGraph& g) {
  const Index n = g.vertex_count();
  IntMatrix lap = IntMatrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    lap(e.source, e.source) += 1;
    lap(e.target, e.target) += 1;
    lap(e.source, e.target) -= 1;
    lap(e.target, e.source) -= 1;
  }
  std::vector<Int> torsion;
  for (const Int& d : snf(lap).diagonal)
    if (d > 1) torsion.push_back(d);
  return torsion;
}

bool diophantine_solvable_in_box(const IntMatrix& m, const IntVector& b, long box) {
  const Index n = m.cols();
  IntVector x = IntVector::Constant(n, Int(-box));
  for (;;) {
    if (exactly_equal((m * x).eval(), b)) return true;
    Index i = 0;
    while (i < n) {
      x(i) += 1;
      if (x(i) <= box) break;
      x(i) = -box;
      ++i;
    }
    if (i == n) return false;
  }
}

namespace {

std::string padded(const std::string& prefix, std::uint64_t k) {
  std::string num = std::to_string(k);
  if (num.size() < 2) num = "0" + num;
  return prefix + num;
}

}  // namespace

LabelledGraph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges,
                           std::int64_t max_label, bool with_infinite) {
  const int nv = 1 + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(max_vertices)));
  const int min_edges = nv - 1;
  const int ne =
      min_edges +
      static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(max_edges - min_edges + 1)));

  std::vector<std::string> vertices;
  for (int v = 0; v < nv; ++v) vertices.push_back(padded("v", static_cast<std::uint64_t>(v)));

  std::vector<EdgeSpec> edges;
  auto label = [&] {
    return EdgeLabel::finite(1 + static_cast<std::int64_t>(
                                     rand_below(rng, static_cast<std::uint64_t>(max_label))));
  };
  // Random spanning tree: attach each vertex to an earlier one.
  for (int v = 1; v < nv; ++v) {
    int u = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(v)));
    edges.push_back(EdgeSpec{padded("e", edges.size()), vertices[static_cast<size_t>(u)],
                             vertices[static_cast<size_t>(v)], label()});
  }
  while (static_cast<int>(edges.size()) < ne) {
    int u = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(nv)));
    int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(nv)));
    edges.push_back(EdgeSpec{padded("e", edges.size()), vertices[static_cast<size_t>(u)],
                             vertices[static_cast<size_t>(v)], label()});
  }

  if (with_infinite) {
    // Relabel a random acyclic set of non-loop edges to infinity.
    std::vector<Index> parent(static_cast<size_t>(nv));
    std::iota(parent.begin(), parent.end(), Index{0});
    std::function<Index(Index)> find = [&](Index x) {
      while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)];
      return x;
    };
    for (EdgeSpec& e : edges) {
      if (e.source == e.target) continue;
      if (rand_below(rng, 4) != 0) continue;  // about a quarter of the edges
      Index a = find(static_cast<Index>(
          std::find(vertices.begin(), vertices.end(), e.source) - vertices.begin()));
      Index b = find(static_cast<Index>(
          std::find(vertices.begin(), vertices.end(), e.target) - vertices.begin()));
      if (a == b) continue;  // would close an infinite cycle
      parent[static_cast<size_t>(b)] = a;
      e.label = EdgeLabel::infinity();
    }
  }
  return build_graph(std::move(vertices), std::move(edges));
}

LabelledGraph random_tree(std::mt19937_64& rng, int max_vertices, std::int64_t max_label) {
  const int nv = 1 + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(max_vertices)));
  std::vector<std::string> vertices;
  for (int v = 0; v < nv; ++v) vertices.push_back(padded("v", static_cast<std::uint64_t>(v)));
  std::vector<EdgeSpec> edges;
  for (int v = 1; v < nv; ++v) {
    int u = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(v)));
    std::int64_t lbl =
        1 + static_cast<std::int64_t>(rand_below(rng, static_cast<std::uint64_t>(max_label)));
    edges.push_back(EdgeSpec{padded("e", edges.size()), vertices[static_cast<size_t>(u)],
                             vertices[static_cast<size_t>(v)], EdgeLabel::finite(lbl)});
  }
  return build_graph(std::move(vertices), std::move(edges));
}

LabelledGraph random_relabel(std::mt19937_64& rng, const LabelledGraph& g) {
  std::vector<std::string> new_vnames;
  for (Index v = 0; v < g.vertex_count(); ++v)
    new_vnames.push_back(padded("w", static_cast<std::uint64_t>(v)));
  for (Index v = g.vertex_count() - 1; v > 0; --v)
    std::swap(new_vnames[static_cast<size_t>(v)],
              new_vnames[rand_below(rng, static_cast<std::uint64_t>(v) + 1)]);

  std::vector<std::string> new_enames;
  for (Index e = 0; e < g.edge_count(); ++e)
    new_enames.push_back(padded("f", static_cast<std::uint64_t>(e)));
  for (Index e = g.edge_count() - 1; e > 0; --e)
    std::swap(new_enames[static_cast<size_t>(e)],
              new_enames[rand_below(rng, static_cast<std::uint64_t>(e) + 1)]);

  std::vector<std::string> vertices = new_vnames;
  std::vector<EdgeSpec> edges;
  for (Index e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    // Also flip reference orientations at random.
    bool flip = rand_below(rng, 2) == 0;
    std::string s = new_vnames[static_cast<size_t>(flip ? ed.target : ed.source)];
    std::string t = new_vnames[static_cast<size_t>(flip ? ed.source : ed.target)];
    edges.push_back(EdgeSpec{new_enames[static_cast<size_t>(e)], s, t, ed.label});
  }
  return build_graph(std::move(vertices), std::move(edges));
}

IntVector random_cartier(std::mt19937_64& rng, const IntMatrix& basis_rows) {
  IntVector coeffs(basis_rows.rows());
  for (Index i = 0; i < coeffs.size(); ++i)
    coeffs(i) = static_cast<long>(rand_below(rng, 19)) - 9;
  return basis_rows.transpose() * coeffs;
}

GraphDocument load_fixture(const std::string& name) {
  return parse_graph_file(std::string(SEMIFACT_DATA_DIR) + "/" + name);
}

}  // namespace semifact::testing
