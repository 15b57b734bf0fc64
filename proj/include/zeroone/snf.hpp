#ifndef ZEROONE_SNF_HPP
#define ZEROONE_SNF_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zeroone/bitmat.hpp"
#include "zeroone/exact.hpp"

namespace zeroone {

// Diagonal of a Smith Normal Form: nonnegative, d_i | d_{i+1}, and once a
// zero appears everything after it is zero.
struct SnfVector {
  std::vector<std::int64_t> diag;

  int order() const { return static_cast<int>(diag.size()); }
  int rank() const;
  bool operator==(const SnfVector& other) const = default;
  // Rank-major order, then lex on the diagonal; the order SNF-class tables
  // are reported in ("zeros moved to the end").
  bool operator<(const SnfVector& other) const;
};

bool validate_chain(const SnfVector& v);

// "(1,1,2,0)"; exponent shorthand like "(1^3,2,0)" is accepted on input.
SnfVector parse_snf(const std::string& text);
std::string format_snf(const SnfVector& v);
// Shorthand form used in table output, e.g. (1^3,2,0).
std::string format_snf_short(const SnfVector& v);

struct SnfDecomposition {
  IntMatrix p;
  IntMatrix q;
  SnfVector d;
};

SnfVector smith_normal_form(const IntMatrix& m);
SnfVector smith_normal_form(const BitMatrix& m);

// P*A*Q = diag(D) with |det P| = |det Q| = 1.
SnfDecomposition snf_decomposition(const IntMatrix& m);
SnfDecomposition snf_decomposition(const BitMatrix& m);

// SNF of the bordered matrix [B y; x b] from a decomposition of B alone.
// x is the bottom row and y the right column as bit words of the base order
// (column j of the base at bit 2^(order-1-j)), b the corner bit.  Transforms
// [D Py; xQ b], clears the leading ones, and finishes with a direct SNF of
// the small residual block.
SnfVector snf_of_extension(const SnfDecomposition& dec, std::uint64_t x,
                           std::uint64_t y, int b);

}  // namespace zeroone

#endif
