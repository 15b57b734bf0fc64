#ifndef ZEROONE_EXACT_HPP
#define ZEROONE_EXACT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "zeroone/bitmat.hpp"
#include "zeroone/errors.hpp"

namespace zeroone {

// Signed 128-bit integers with overflow checks that throw instead of
// wrapping.  Wide enough for every determinant and cofactor reachable at the
// orders this engine targets (the Hadamard bound at n = 19 is about 2e7).
using Int128 = __int128;

inline Int128 checked_add(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int128 add");
  return r;
}

inline Int128 checked_sub(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int128 sub");
  return r;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int128 mul");
  return r;
}

std::string int128_to_string(Int128 v);

// Square matrix of exact signed integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int order);

  static IntMatrix identity(int order);
  static IntMatrix from(const BitMatrix& m);
  static IntMatrix from(const SignMatrix& m);

  int order() const { return order_; }
  Int128& at(int i, int j) { return entries_[static_cast<size_t>(i) * order_ + j]; }
  Int128 at(int i, int j) const {
    return entries_[static_cast<size_t>(i) * order_ + j];
  }

  IntMatrix multiply(const IntMatrix& other) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& other) const = default;

 private:
  int order_ = 0;
  std::vector<Int128> entries_;
};

// Fraction-free (Bareiss) exact determinant; all intermediates are minors of
// the input, so nothing exceeds the Hadamard bound of the order.
Int128 determinant(const IntMatrix& m);
Int128 determinant(const BitMatrix& m);
Int128 determinant(const SignMatrix& m);

// Rank over the rationals via fraction-free elimination with full pivoting.
int rank(const IntMatrix& m);
int rank(const BitMatrix& m);
int rank(const SignMatrix& m);

// adj(A) with A*adj(A) = det(A)*I; entry (j,i) is the cofactor of a_ij.
// Works for singular inputs.
IntMatrix adjugate(const IntMatrix& m);
IntMatrix adjugate(const BitMatrix& m);

// Cofactor matrix C with C[i][j] = (-1)^(i+j) det(minor_ij); adj = C^T.
IntMatrix cofactor_matrix(const IntMatrix& m);
IntMatrix cofactor_matrix(const BitMatrix& m);

// The bound |det A| <= 2^-n sqrt((n+1)^(n+1)) for order-n (0,1) matrices.
// The bound itself is irrational in general; it is kept as the exact squared
// rational (n+1)^(n+1) / 4^n together with its integer floor.
struct HadamardBound {
  mpz_class bound_sq_num;  // (n+1)^(n+1)
  mpz_class bound_sq_den;  // 4^n
  mpz_class floor_value;   // floor(sqrt(num/den))

  // Exact test of v <= bound via v^2 * den <= num.
  bool admits(const mpz_class& v) const {
    return v * v * bound_sq_den <= bound_sq_num;
  }
};

HadamardBound hadamard_bound(int n);

// floor of the bound as a plain integer, for orders where it fits.
std::int64_t hadamard_floor_i64(int n);

}  // namespace zeroone

#endif
