#ifndef ZEROONE_BITMAT_HPP
#define ZEROONE_BITMAT_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zeroone/errors.hpp"

namespace zeroone {

// Square (0,1) matrix with bit-packed rows.  Column j of an order-n matrix
// occupies bit 2^(n-1-j) of its row word, so the leftmost column is the most
// significant bit and comparing row words numerically compares rows
// lexicographically.  Orders up to 63 keep every row in one machine word.
class BitMatrix {
 public:
  static constexpr int kMaxOrder = 63;

  BitMatrix() = default;
  explicit BitMatrix(int order);
  BitMatrix(int order, std::vector<std::uint64_t> rows);

  static BitMatrix from_rows(int order, const std::vector<std::uint64_t>& rows);
  // Rows given as binary strings like "0110", top row first.
  static BitMatrix from_bits(const std::vector<std::string>& rows);
  static BitMatrix zero(int order) { return BitMatrix(order); }
  static BitMatrix identity(int order);
  static BitMatrix ones(int order);

  int order() const { return order_; }
  std::uint64_t row(int i) const { return rows_[static_cast<size_t>(i)]; }
  const std::vector<std::uint64_t>& rows() const { return rows_; }
  void set_row(int i, std::uint64_t word);

  bool bit(int i, int j) const {
    return (rows_[static_cast<size_t>(i)] >> (order_ - 1 - j)) & 1u;
  }
  void set_bit(int i, int j, bool value);

  BitMatrix transpose() const;
  bool operator==(const BitMatrix& other) const = default;

  friend std::ostream& operator<<(std::ostream& os, const BitMatrix& m);

 private:
  int order_ = 0;
  std::vector<std::uint64_t> rows_;
};

// Total lexicographic order: first differing row decides, and within a row
// the leftmost differing column decides.
std::strong_ordering lex_compare(const BitMatrix& a, const BitMatrix& b);
bool lex_less(const BitMatrix& a, const BitMatrix& b);

// Entries are +-1 only.
class SignMatrix {
 public:
  SignMatrix() = default;
  explicit SignMatrix(int order);

  int order() const { return order_; }
  int at(int i, int j) const {
    return entries_[static_cast<size_t>(i) * order_ + j];
  }
  void set(int i, int j, int value);

 private:
  int order_ = 0;
  std::vector<std::int8_t> entries_;
};

// Bijection on {0,...,n-1}.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int order);  // identity
  explicit Perm(std::vector<int> images);

  static Perm identity(int order) { return Perm(order); }

  int order() const { return static_cast<int>(images_.size()); }
  int image(int i) const { return images_[static_cast<size_t>(i)]; }
  int preimage(int i) const { return inverse_[static_cast<size_t>(i)]; }
  Perm inverse() const;
  // (a.then(b))(i) = b(a(i)).
  Perm then(const Perm& b) const;
  bool operator==(const Perm& other) const { return images_ == other.images_; }

 private:
  std::vector<int> images_;
  std::vector<int> inverse_;
};

// result(i, j) = A(P^-1(i), Q(j)): row i of the result is row P^-1(i) of A
// with columns rearranged by Q.  Satisfies the action law
// apply_perms(apply_perms(A,P1,Q1),P2,Q2) = apply_perms(A, P2*P1, Q1*Q2).
BitMatrix apply_perms(const BitMatrix& a, const Perm& p, const Perm& q);

// Order-(n+1) +-1 matrix: 0 entries become -1, a row of -1 is added on top
// and a column of +1 on the right (the corner belongs to the column of ones).
// det of the result is (-1)^n 2^n det(A); see the row-subtraction argument in
// the tests.
SignMatrix psi_embed(const BitMatrix& a);

// Row transform X_i, 1-based; X_0 is the identity.  For i >= 1 row i-1 stays
// and every other row is XORed with it.  Preserves |det|.
BitMatrix xi_row(const BitMatrix& a, int i);
// Column version, xi_col(A, j) = transpose(xi_row(transpose(A), j)).
BitMatrix xi_col(const BitMatrix& a, int j);

// Hex serialization: one uppercase hex word per row, no zero padding.
// from_hex accepts lowercase.  A row value >= 2^n is a MalformedMatrixError,
// a non-hex token a ParseError.
BitMatrix from_hex(const std::vector<std::string>& rows);
std::vector<std::string> to_hex(const BitMatrix& m);

// "3,5,6" <-> BitMatrix; the line format of matrix-set files.
BitMatrix parse_matrix_line(const std::string& line);
std::string format_matrix_line(const BitMatrix& m);

// Matrix-set files hold one matrix per line in lex order without duplicates.
std::vector<BitMatrix> read_matrix_set(std::istream& is);
std::vector<BitMatrix> read_matrix_set_file(const std::string& path);
void write_matrix_set(std::ostream& os, const std::vector<BitMatrix>& set);
void write_matrix_set_file(const std::string& path,
                           const std::vector<BitMatrix>& set);

}  // namespace zeroone

#endif
