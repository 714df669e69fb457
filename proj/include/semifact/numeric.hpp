// Exact integer scalar and dense matrix types shared by the whole library.
//
// All arithmetic is performed on GMP big integers; no operation in this
// project is allowed to overflow or round.

#ifndef SEMIFACT_NUMERIC_HPP
#define SEMIFACT_NUMERIC_HPP

#include <gmpxx.h>

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

}  // namespace Eigen

namespace semifact {

using Int = mpz_class;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

inline bool exactly_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline bool exactly_equal(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

inline bool is_zero(const IntVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

// Quotient of floor division (rounds toward -inf), as needed by Hermite
// reduction where remainders must land in [0, divisor).
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Quotient a/b when b is known to divide a.
inline Int exact_div(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int int_from_string(const std::string& s) { return Int(s, 10); }

inline std::string to_string(const Int& v) { return v.get_str(10); }

inline bool fits_int64(const Int& v) {
  return v.fits_slong_p() != 0;  // long is 64-bit on this platform set
}

inline std::int64_t to_int64(const Int& v) { return v.get_si(); }

}  // namespace semifact

#endif  // SEMIFACT_NUMERIC_HPP
