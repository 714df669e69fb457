#include "semifact/zlinalg.hpp"

#include <algorithm>
#include <cassert>

namespace semifact {

namespace {

// mpz comparison by absolute value.
bool abs_less(const Int& x, const Int& y) {
  return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()) < 0;
}

// Round-to-nearest quotient, so |a - q*b| <= |b|/2. Keeps entries small
// during elimination.
Int nearest_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  // Floor remainder r has the sign of b; bumping q by one flips it to the
  // other side, which is closer when 2|r| exceeds |b|.
  Int r_abs = abs(r);
  if (r_abs * 2 > abs(b)) q += 1;
  return q;
}

}  // namespace

Index SnfDecomposition::rank() const {
  Index r = 0;
  for (const Int& v : diagonal)
    if (v != 0) ++r;
  return r;
}

SnfDecomposition snf(const IntMatrix& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  SnfDecomposition out;
  out.a = IntMatrix::Identity(rows, rows);
  out.b = IntMatrix::Identity(cols, cols);
  out.d = m;
  IntMatrix& d = out.d;

  const Index k = std::min(rows, cols);
  for (Index t = 0; t < k; ++t) {
    // Locate the smallest nonzero entry of the working submatrix.
    Index pi = -1, pj = -1;
    for (Index i = t; i < rows; ++i)
      for (Index j = t; j < cols; ++j)
        if (d(i, j) != 0 && (pi < 0 || abs_less(d(i, j), d(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;  // submatrix is zero
    if (pi != t) {
      d.row(pi).swap(d.row(t));
      out.a.row(pi).swap(out.a.row(t));
    }
    if (pj != t) {
      d.col(pj).swap(d.col(t));
      out.b.col(pj).swap(out.b.col(t));
    }

    for (;;) {
      bool clean = true;
      // Clear the pivot column.
      for (Index i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Int q = nearest_div(d(i, t), d(t, t));
        if (q != 0) {
          d.row(i) -= q * d.row(t);
          out.a.row(i) -= q * out.a.row(t);
        }
        if (d(i, t) != 0) {
          // Remainder is strictly smaller: promote it to the pivot.
          d.row(i).swap(d.row(t));
          out.a.row(i).swap(out.a.row(t));
          clean = false;
        }
      }
      if (!clean) continue;
      // Clear the pivot row.
      for (Index j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Int q = nearest_div(d(t, j), d(t, t));
        if (q != 0) {
          d.col(j) -= q * d.col(t);
          out.b.col(j) -= q * out.b.col(t);
        }
        if (d(t, j) != 0) {
          d.col(j).swap(d.col(t));
          out.b.col(j).swap(out.b.col(t));
          clean = false;
        }
      }
      if (!clean) continue;
      // Pivot must divide every remaining entry for the chain to hold.
      Index bi = -1, bj = -1;
      for (Index i = t + 1; i < rows && bi < 0; ++i)
        for (Index j = t + 1; j < cols; ++j)
          if (!divides(d(t, t), d(i, j))) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;
      d.row(t) += d.row(bi);
      out.a.row(t) += out.a.row(bi);
    }

    if (d(t, t) < 0) {
      d.row(t) = -d.row(t);
      out.a.row(t) = -out.a.row(t);
    }
  }

  out.diagonal.reserve(static_cast<size_t>(k));
  for (Index i = 0; i < k; ++i) out.diagonal.push_back(d(i, i));

#ifndef NDEBUG
  assert(exactly_equal(out.a * m * out.b, out.d));
  Int da = determinant(out.a);
  Int db = determinant(out.b);
  assert(da == 1 || da == -1);
  assert(db == 1 || db == -1);
  for (size_t i = 0; i + 1 < out.diagonal.size(); ++i)
    assert(divides(out.diagonal[i], out.diagonal[i + 1]));
#endif
  return out;
}

IntMatrix hermite_rows(const IntMatrix& m) {
  IntMatrix h = m;
  const Index rows = h.rows();
  const Index cols = h.cols();
  Index t = 0;
  for (Index j = 0; j < cols && t < rows; ++j) {
    // Gcd-eliminate column j among rows t..end.
    for (;;) {
      Index p = -1;
      for (Index i = t; i < rows; ++i)
        if (h(i, j) != 0 && (p < 0 || abs_less(h(i, j), h(p, j)))) p = i;
      if (p < 0) break;
      if (p != t) h.row(p).swap(h.row(t));
      bool clean = true;
      for (Index i = t + 1; i < rows; ++i) {
        if (h(i, j) == 0) continue;
        Int q = nearest_div(h(i, j), h(t, j));
        if (q != 0) h.row(i) -= q * h.row(t);
        if (h(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(t, j) == 0) continue;
    if (h(t, j) < 0) h.row(t) = -h.row(t);
    // Canonical range above the pivot: entries in [0, pivot).
    for (Index i = 0; i < t; ++i) {
      Int q = floor_div(h(i, j), h(t, j));
      if (q != 0) h.row(i) -= q * h.row(t);
    }
    ++t;
  }
  return h.topRows(t);
}

Index rank(const IntMatrix& m) { return snf(m).rank(); }

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant needs a square matrix");
  const Index n = m.rows();
  if (n == 0) return 1;
  IntMatrix w = m;
  Int sign = 1;
  Int prev = 1;
  for (Index t = 0; t < n - 1; ++t) {
    if (w(t, t) == 0) {
      Index p = -1;
      for (Index i = t + 1; i < n; ++i)
        if (w(i, t) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      w.row(p).swap(w.row(t));
      sign = -sign;
    }
    for (Index i = t + 1; i < n; ++i) {
      for (Index j = t + 1; j < n; ++j)
        w(i, j) = exact_div(w(t, t) * w(i, j) - w(i, t) * w(t, j), prev);
      w(i, t) = 0;
    }
    prev = w(t, t);
  }
  return sign * w(n - 1, n - 1);
}

bool LatticeBasis::contains(const IntVector& v) const {
  if (v.size() != ambient_dim) throw DimensionMismatch("vector/lattice dimension mismatch");
  // Solve basis^T y = v over Z.
  return solve_diophantine(basis.transpose(), v).has_value();
}

DiophantineSolver::DiophantineSolver(const IntMatrix& m) : cols_(m.cols()), s_(snf(m)) {}

bool DiophantineSolver::feasible(const IntVector& b) const {
  if (b.size() != s_.a.cols()) throw DimensionMismatch("rhs length != rows");
  IntVector c = s_.a * b;
  const Index k = static_cast<Index>(s_.diagonal.size());
  for (Index i = 0; i < c.size(); ++i) {
    const Int& di = i < k ? s_.diagonal[static_cast<size_t>(i)] : Int(0);
    if (di == 0) {
      if (c(i) != 0) return false;
    } else if (!divides(di, c(i))) {
      return false;
    }
  }
  return true;
}

std::optional<IntVector> DiophantineSolver::solve(const IntVector& b) const {
  if (b.size() != s_.a.cols()) throw DimensionMismatch("rhs length != rows");
  IntVector c = s_.a * b;
  IntVector y = IntVector::Zero(cols_);
  const Index k = static_cast<Index>(s_.diagonal.size());
  for (Index i = 0; i < c.size(); ++i) {
    const Int& di = i < k ? s_.diagonal[static_cast<size_t>(i)] : Int(0);
    if (di == 0) {
      if (c(i) != 0) return std::nullopt;
    } else {
      if (!divides(di, c(i))) return std::nullopt;
      y(i) = exact_div(c(i), di);
    }
  }
  return s_.b * y;
}

IntMatrix DiophantineSolver::kernel_basis() const {
  const Index r = s_.rank();
  return s_.b.rightCols(cols_ - r).transpose();
}

std::optional<IntVector> solve_diophantine(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("rhs length != rows");
  return DiophantineSolver(m).solve(b);
}

LatticeBasis image_lattice(const IntMatrix& m) {
  LatticeBasis out;
  out.ambient_dim = m.rows();
  out.basis = hermite_rows(m.transpose());
  return out;
}

LatticeBasis congruence_lattice(const std::vector<CongruenceConstraint>& constraints,
                                Index ambient_dim) {
  const Index a = static_cast<Index>(constraints.size());
  Index slacks = 0;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != ambient_dim)
      throw DimensionMismatch("constraint row length != ambient dimension");
    if (c.modulus) {
      if (*c.modulus < 1) throw InvalidLabel("congruence modulus must be >= 1");
      ++slacks;
    }
  }

  IntMatrix block = IntMatrix::Zero(a, ambient_dim + slacks);
  Index slot = 0;
  for (Index i = 0; i < a; ++i) {
    block.row(i).head(ambient_dim) = constraints[static_cast<size_t>(i)].coeffs.transpose();
    if (constraints[static_cast<size_t>(i)].modulus) {
      block(i, ambient_dim + slot) = -*constraints[static_cast<size_t>(i)].modulus;
      ++slot;
    }
  }

  DiophantineSolver solver(block);
  IntMatrix kernel = solver.kernel_basis();  // rows span the kernel in Z^(n+slacks)

  LatticeBasis out;
  out.ambient_dim = ambient_dim;
  out.basis = hermite_rows(kernel.leftCols(ambient_dim));
  return out;
}

CokernelInvariants coker_invariants(const IntMatrix& m) {
  SnfDecomposition s = snf(m);
  CokernelInvariants out;
  out.free_rank = m.rows() - s.rank();
  for (const Int& d : s.diagonal)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

}  // namespace semifact
