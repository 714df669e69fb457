// Circuit-coprimality deciders and the semi-factoriality / Neron-model
// verdicts. A labelled graph is circuit-coprime when, after contracting
// every infinite edge, each circuit's labels have gcd 1; equivalently, for
// every prime p the edges with p-divisible labels form a forest.

#ifndef SEMIFACT_VERDICT_HPP
#define SEMIFACT_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "semifact/graph.hpp"
#include "semifact/numeric.hpp"

namespace semifact {

enum class DeciderMethod { PrimeForest, Snf, Naive };

std::string method_name(DeciderMethod m);

// Negative witness: a prime p and a circuit whose labels p divides. Edge
// ids refer to the contracted graph, which keeps original edge ids.
struct CircuitWitness {
  Int prime;
  std::vector<std::string> edges;
};

struct Verdict {
  bool circuit_coprime = false;
  DeciderMethod method = DeciderMethod::PrimeForest;
  std::optional<CircuitWitness> failure;  // set iff not circuit-coprime
  std::vector<Int> snf_diagonal;          // of the contracted labelled fundamental matrix
  bool semi_factorial = false;            // equals circuit_coprime
  bool neron_lft_model = false;           // equals circuit_coprime
};

// Per-prime forest test; the negative witness is the shortest offending
// circuit over all failing primes (ties to the smaller prime).
Verdict circuit_coprime_prime_forest(const LabelledGraph& g);

// All Smith diagonal entries of the contracted labelled fundamental circuit
// matrix equal 1.
Verdict circuit_coprime_snf(const LabelledGraph& g);

// Direct gcd test over every circuit of the contracted graph.
Verdict circuit_coprime_naive(const LabelledGraph& g, std::size_t cap = 10000);

Verdict decide(const LabelledGraph& g, DeciderMethod method, std::size_t cap = 10000);

// Default decider (prime forest) with the geometric interpretation filled.
Verdict semifactorial_verdict(const LabelledGraph& g);

// Level at which every finite label has become 1 under repeated blow-up:
// max(1, ceil((m - 1) / 2) over finite labels m); 0 for edgeless graphs.
int stabilization_index(const LabelledGraph& g);

}  // namespace semifact

#endif  // SEMIFACT_VERDICT_HPP
