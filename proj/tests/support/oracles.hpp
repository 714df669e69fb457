// Test-only oracles and corpus generators. Everything here is independent
// of the library paths it cross-checks: circuits by subset enumeration,
// Smith diagonals by gcds of minors, critical groups from the Laplacian,
// Diophantine feasibility by bounded search.

#ifndef SEMIFACT_TESTS_ORACLES_HPP
#define SEMIFACT_TESTS_ORACLES_HPP

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semifact/graph.hpp"
#include "semifact/graph_io.hpp"
#include "semifact/numeric.hpp"

namespace semifact::testing {

// Deterministic uniform integer in [0, n), independent of the standard
// library's distribution implementations.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n);

// Seed from SEMIFACT_SEED (default 0), mixed with a per-suite tag.
std::uint64_t env_seed(std::uint64_t tag);

// All circuits of g as sorted edge-index sets: every edge subset that is
// connected and has degree exactly 2 at each covered vertex.
std::set<std::vector<Index>> circuit_edge_sets_bruteforce(const LabelledGraph& g);

// d_i = D_i / D_{i-1}, where D_i is the gcd of all order-i minors.
std::vector<Int> snf_diagonal_gcd_minors(const IntMatrix& m);

// Torsion of Z^V / im(Laplacian), computed directly from the adjacency of a
// simple unlabelled graph.
std::vector<Int> critical_group_from_laplacian(const LabelledGraph& g);

// Whether m.x = b has a solution with all |x_i| <= box.
bool diophantine_solvable_in_box(const IntMatrix& m, const IntVector& b, long box);

// Random connected multigraph: a random spanning tree plus extra edges
// (loops and parallels allowed). Finite labels are uniform in
// [1, max_label]; when with_infinite is set, a random acyclic subset of
// non-loop edges is relabelled to infinity.
LabelledGraph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges,
                           std::int64_t max_label, bool with_infinite);

// Random labelled tree.
LabelledGraph random_tree(std::mt19937_64& rng, int max_vertices, std::int64_t max_label);

// Same graph with vertex and edge ids renamed by a random permutation.
LabelledGraph random_relabel(std::mt19937_64& rng, const LabelledGraph& g);

// Random Cartier labelling: an integer combination of lattice basis rows
// with coefficients in [-9, 9].
IntVector random_cartier(std::mt19937_64& rng, const IntMatrix& basis_rows);

GraphDocument load_fixture(const std::string& name);

}  // namespace semifact::testing

#endif  // SEMIFACT_TESTS_ORACLES_HPP
