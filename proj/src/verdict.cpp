#include "semifact/verdict.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "semifact/circuit_matrix.hpp"
#include "semifact/zlinalg.hpp"

namespace semifact {

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Primes dividing at least one finite label, ascending.
std::vector<std::int64_t> label_primes(const LabelledGraph& g) {
  std::set<std::int64_t> primes;
  for (const Edge& e : g.edges())
    if (!e.label.is_infinite())
      for (std::int64_t p : prime_factors(e.label.value())) primes.insert(p);
  return {primes.begin(), primes.end()};
}

// Shortest circuit using only the given edges, as a list of edge ids;
// nullopt if the edge set is acyclic. Loops, then parallel pairs, then a
// BFS girth scan.
std::optional<std::vector<std::string>> shortest_circuit_in(const LabelledGraph& g,
                                                            const std::vector<Index>& subset) {
  for (Index e : subset)
    if (g.edge(e).is_loop()) return std::vector<std::string>{g.edge(e).id};

  for (size_t i = 0; i < subset.size(); ++i)
    for (size_t j = i + 1; j < subset.size(); ++j) {
      const Edge& a = g.edge(subset[i]);
      const Edge& b = g.edge(subset[j]);
      bool parallel = (a.source == b.source && a.target == b.target) ||
                      (a.source == b.target && a.target == b.source);
      if (parallel) return std::vector<std::string>{a.id, b.id};
    }

  // BFS from each subset edge: shortest path between its endpoints avoiding
  // the edge itself closes the shortest cycle through that edge.
  std::optional<std::vector<std::string>> best;
  for (Index skip : subset) {
    const Edge& se = g.edge(skip);
    std::vector<Index> prev_edge(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<bool> seen(static_cast<size_t>(g.vertex_count()), false);
    std::deque<Index> queue;
    seen[static_cast<size_t>(se.source)] = true;
    queue.push_back(se.source);
    while (!queue.empty()) {
      Index v = queue.front();
      queue.pop_front();
      if (v == se.target) break;
      for (Index e : subset) {
        if (e == skip) continue;
        const Edge& ed = g.edge(e);
        Index w;
        if (ed.source == v)
          w = ed.target;
        else if (ed.target == v)
          w = ed.source;
        else
          continue;
        if (seen[static_cast<size_t>(w)]) continue;
        seen[static_cast<size_t>(w)] = true;
        prev_edge[static_cast<size_t>(w)] = e;
        queue.push_back(w);
      }
    }
    if (!seen[static_cast<size_t>(se.target)]) continue;
    std::vector<std::string> cycle{se.id};
    Index v = se.target;
    while (v != se.source) {
      Index e = prev_edge[static_cast<size_t>(v)];
      cycle.push_back(g.edge(e).id);
      const Edge& ed = g.edge(e);
      v = ed.source == v ? ed.target : ed.source;
    }
    if (!best || cycle.size() < best->size()) best = std::move(cycle);
  }
  return best;
}

std::vector<Int> contracted_snf_diagonal(const LabelledGraph& gc) {
  if (gc.nullity() == 0) return {};
  SpanningTree t = spanning_tree(gc);
  CircuitMatrixBundle n = fundamental_circuit_matrix(gc, t, /*labelled=*/true);
  return snf(n.matrix).diagonal;
}

Verdict finish(Verdict v) {
  v.semi_factorial = v.circuit_coprime;
  v.neron_lft_model = v.circuit_coprime;
  return v;
}

}  // namespace

std::string method_name(DeciderMethod m) {
  switch (m) {
    case DeciderMethod::PrimeForest:
      return "prime-forest";
    case DeciderMethod::Snf:
      return "snf";
    case DeciderMethod::Naive:
      return "naive";
  }
  return "?";
}

Verdict circuit_coprime_prime_forest(const LabelledGraph& g) {
  auto [gc, vmap] = contract_infinite(g);
  Verdict v;
  v.method = DeciderMethod::PrimeForest;

  std::optional<CircuitWitness> best;
  for (std::int64_t p : label_primes(gc)) {
    std::vector<Index> ep;
    for (Index e = 0; e < gc.edge_count(); ++e)
      if (gc.edge(e).label.value() % p == 0) ep.push_back(e);
    auto cycle = shortest_circuit_in(gc, ep);
    if (!cycle) continue;
    if (!best || cycle->size() < best->edges.size())
      best = CircuitWitness{Int(static_cast<long>(p)), std::move(*cycle)};
  }
  v.circuit_coprime = !best.has_value();
  if (best)
    v.failure = std::move(best);
  else
    v.snf_diagonal = contracted_snf_diagonal(gc);
  return finish(std::move(v));
}

Verdict circuit_coprime_snf(const LabelledGraph& g) {
  auto [gc, vmap] = contract_infinite(g);
  Verdict v;
  v.method = DeciderMethod::Snf;
  v.snf_diagonal = contracted_snf_diagonal(gc);
  v.circuit_coprime =
      std::all_of(v.snf_diagonal.begin(), v.snf_diagonal.end(), [](const Int& d) { return d == 1; });
  if (!v.circuit_coprime) {
    // Derive a concrete witness: some prime dividing the last invariant
    // factor has a circuit inside its divisible-edge set.
    const Int& dr = v.snf_diagonal.back();
    for (std::int64_t p : label_primes(gc)) {
      if (!divides(Int(static_cast<long>(p)), dr) && dr != 0) continue;
      std::vector<Index> ep;
      for (Index e = 0; e < gc.edge_count(); ++e)
        if (gc.edge(e).label.value() % p == 0) ep.push_back(e);
      auto cycle = shortest_circuit_in(gc, ep);
      if (cycle) {
        v.failure = CircuitWitness{Int(static_cast<long>(p)), std::move(*cycle)};
        break;
      }
    }
  }
  return finish(std::move(v));
}

Verdict circuit_coprime_naive(const LabelledGraph& g, std::size_t cap) {
  auto [gc, vmap] = contract_infinite(g);
  Verdict v;
  v.method = DeciderMethod::Naive;
  v.circuit_coprime = true;
  for (const Circuit& c : enumerate_circuits(gc, cap)) {
    Int gcd_labels = 0;
    for (Index e : c.edges) gcd_labels = gcd(gcd_labels, gc.edge(e).label.as_int());
    if (gcd_labels != 1) {
      v.circuit_coprime = false;
      CircuitWitness w;
      // Smallest prime factor of the circuit gcd.
      w.prime = Int(static_cast<long>(prime_factors(to_int64(gcd_labels)).front()));
      for (Index e : c.edges) w.edges.push_back(gc.edge(e).id);
      v.failure = std::move(w);
      break;
    }
  }
  if (v.circuit_coprime) v.snf_diagonal = contracted_snf_diagonal(gc);
  return finish(std::move(v));
}

Verdict decide(const LabelledGraph& g, DeciderMethod method, std::size_t cap) {
  switch (method) {
    case DeciderMethod::PrimeForest:
      return circuit_coprime_prime_forest(g);
    case DeciderMethod::Snf:
      return circuit_coprime_snf(g);
    case DeciderMethod::Naive:
      return circuit_coprime_naive(g, cap);
  }
  throw Error("unknown decider");
}

Verdict semifactorial_verdict(const LabelledGraph& g) { return circuit_coprime_prime_forest(g); }

int stabilization_index(const LabelledGraph& g) {
  if (g.edge_count() == 0) return 0;
  std::int64_t best = 1;
  for (const Edge& e : g.edges())
    if (!e.label.is_infinite()) best = std::max(best, e.label.value() / 2);
  return static_cast<int>(best);
}

}  // namespace semifact
