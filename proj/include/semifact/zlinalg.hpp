// Exact integer linear algebra on dense GMP-integer matrices: Smith and
// Hermite normal forms with recorded unimodular transforms, Diophantine
// solving, and lattice bases for congruence-defined sublattices.

#ifndef SEMIFACT_ZLINALG_HPP
#define SEMIFACT_ZLINALG_HPP

#include <optional>
#include <vector>

#include "semifact/errors.hpp"
#include "semifact/numeric.hpp"

namespace semifact {

// a * m * b = d with |det a| = |det b| = 1, d diagonal, entries non-negative
// in a divisibility chain d_i | d_{i+1}. `diagonal` has min(rows, cols)
// entries including trailing zeros.
struct SnfDecomposition {
  IntMatrix a;
  IntMatrix d;
  IntMatrix b;
  std::vector<Int> diagonal;

  Index rank() const;
};

// Rows form a basis of a sublattice of Z^ambient_dim; always stored in
// canonical (row-style) Hermite normal form, so two equal lattices compare
// equal as matrices.
struct LatticeBasis {
  Index ambient_dim = 0;
  IntMatrix basis;  // rank x ambient_dim, independent rows

  Index rank() const { return basis.rows(); }
  friend bool operator==(const LatticeBasis& x, const LatticeBasis& y) {
    return x.ambient_dim == y.ambient_dim && exactly_equal(x.basis, y.basis);
  }
  bool contains(const IntVector& v) const;
};

struct CokernelInvariants {
  Index free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, in divisibility order
};

// One row of a congruence system: coeffs . x = 0 (mod modulus), where a
// missing modulus means the exact equation coeffs . x = 0.
struct CongruenceConstraint {
  IntVector coeffs;
  std::optional<Int> modulus;  // nullopt encodes infinity
};

// Smith normal form by gcd elimination with smallest-pivot selection.
SnfDecomposition snf(const IntMatrix& m);

// Canonical row-style Hermite normal form of the row span: pivots positive,
// entries above each pivot reduced into [0, pivot), zero rows dropped.
IntMatrix hermite_rows(const IntMatrix& m);

Index rank(const IntMatrix& m);

// Exact determinant (Bareiss fraction-free elimination).
Int determinant(const IntMatrix& m);

// Some integer solution of m.x = b, or nullopt if none exists.
std::optional<IntVector> solve_diophantine(const IntMatrix& m, const IntVector& b);

// Reusable solver for many right-hand sides against a fixed matrix.
class DiophantineSolver {
 public:
  explicit DiophantineSolver(const IntMatrix& m);
  std::optional<IntVector> solve(const IntVector& b) const;
  bool feasible(const IntVector& b) const;
  // Basis (rows) of the integer kernel lattice of m.
  IntMatrix kernel_basis() const;

 private:
  Index cols_;
  SnfDecomposition s_;
};

// Basis of the lattice spanned by the columns of m, as vectors in Z^rows.
LatticeBasis image_lattice(const IntMatrix& m);

// Basis of {x in Z^n : row.x = 0 mod m for each finite constraint,
// row.x = 0 for each infinite one}.
LatticeBasis congruence_lattice(const std::vector<CongruenceConstraint>& constraints,
                                Index ambient_dim);

// Invariants of Z^rows / column-span(m).
CokernelInvariants coker_invariants(const IntMatrix& m);

}  // namespace semifact

#endif  // SEMIFACT_ZLINALG_HPP
