#ifndef ZEROONE_BOUNDS_HPP
#define ZEROONE_BOUNDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zeroone/bitmat.hpp"
#include "zeroone/extend.hpp"

namespace zeroone {

// 2*f_(n-1): every value in [0, 2f_(n-1) - 1] is the determinant of some
// border of the order-(n-1) Fibonacci matrix.
std::int64_t paseman_bound(int n);

struct BoundOptions {
  bool pruning = true;       // skip columns whose coefficient sums cannot
                             // reach the first uncovered value
  std::size_t promising_cap = 10000;
  int threads = 0;
};

struct BoundRun {
  int order = 0;             // order being bounded (seeds + 1)
  std::int64_t first0 = 1;   // smallest positive |det| not covered
  std::int64_t dmax = 1;     // largest |det| seen
  CoveredSet covered;
  // extensions with |det| > 0.9*dmax at insertion time, deduplicated and
  // ranked by |det| descending (lex ascending on ties), capped
  std::vector<BitMatrix> promising;
};

// One sweep of all borders of all seeds.  For each right column y the
// cofactor combination coefficients are formed and columns that cannot reach
// the current first uncovered value are skipped; the remaining (x, b) pairs
// walk a Gray code at one addition per determinant.
BoundRun heuristic_round(const std::vector<BitMatrix>& seeds,
                         const BoundOptions& opts = BoundOptions{});

struct BoundChain {
  int order;
  std::int64_t bound;  // a_order >= bound
  std::size_t seed_count;
};

// Chains heuristic rounds, feeding each round's promising list to the next;
// stops early when a round yields no promising matrices.
std::vector<BoundChain> iterate_bounds(const std::vector<BitMatrix>& seeds,
                                       int rounds,
                                       const BoundOptions& opts =
                                           BoundOptions{});

// One certified extension per covered value: |det(bordered(seed,x,y,b))| = v.
struct Witness {
  std::int64_t value;
  BitMatrix seed;
  std::uint64_t x;
  std::uint64_t y;
  int b;
};

// Witnesses for every value in [1, limit); throws if a value is uncovered.
std::vector<Witness> collect_witnesses(const std::vector<BitMatrix>& seeds,
                                       std::int64_t limit);

void write_witness_file(std::ostream& os, const std::vector<Witness>& ws);
std::vector<Witness> read_witness_file(std::istream& is);

// Recomputes every witness determinant exactly and checks the full range
// [1, limit) is present; returns the list of violations.
std::vector<std::string> verify_witnesses(const std::vector<Witness>& ws,
                                          std::int64_t limit);

}  // namespace zeroone

#endif
