#ifndef ZEROONE_EXTEND_HPP
#define ZEROONE_EXTEND_HPP

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "zeroone/bitmat.hpp"
#include "zeroone/exact.hpp"
#include "zeroone/snf.hpp"

namespace zeroone {

// Borders of a base matrix B of order m: the 2^(2m+1) matrices with B as
// the upper-left minor, new row x at the bottom, new column y at the right
// and corner bit b.  Bit i of x/y refers to column/row i of the base,
// matching the BitMatrix column-to-bit mapping.
BitMatrix bordered(const BitMatrix& base, std::uint64_t x, std::uint64_t y,
                   int b);

struct ExtensionDet {
  std::uint64_t x;
  std::uint64_t y;
  int b;
  std::int64_t det;
};

// Streams the determinants of every border of `base`.  The cofactors of the
// base are precomputed once; y then walks a reflected Gray code for each x,
// so each step costs one signed addition.
void enumerate_extension_dets(const BitMatrix& base,
                              const std::function<void(const ExtensionDet&)>& f);

// Serial reference: rebuilds every bordered matrix and runs the exact
// determinant.  Oracle for the Gray-code kernel and the benchmark baseline.
void enumerate_extension_dets_direct(
    const BitMatrix& base, const std::function<void(const ExtensionDet&)>& f);

// Bitmap over [0, limit] of |det| values.
class CoveredSet {
 public:
  CoveredSet() = default;
  explicit CoveredSet(std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  void set(std::int64_t v);
  bool test(std::int64_t v) const;
  void merge(const CoveredSet& other);  // associative, commutative
  std::int64_t first_missing() const;  // smallest value >= 0 not covered
  std::vector<std::int64_t> values() const;

 private:
  std::int64_t limit_ = -1;
  std::vector<std::uint64_t> bits_;
};

struct ExtensionSpectrum {
  BitMatrix base;
  CoveredSet covered;
  std::int64_t first_missing = 0;
};

ExtensionSpectrum extension_spectrum(const BitMatrix& base);

// Union of |det| values over the borders of many bases; parallel over bases.
CoveredSet extension_covered_union(const std::vector<BitMatrix>& bases,
                                   int threads = 0);

// SNFs of every border, computed incrementally from one decomposition of the
// base.
std::set<SnfVector> extension_snf_set(const BitMatrix& base);

// 1 at (i,j) iff j-i is -1, 0 or a positive even number; det equals the n-th
// Fibonacci number (f_1 = f_2 = 1).
BitMatrix fibonacci_matrix(int n);
std::int64_t fibonacci_number(int n);

}  // namespace zeroone

#endif
