#ifndef ZEROONE_PI_SEARCH_HPP
#define ZEROONE_PI_SEARCH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "zeroone/bitmat.hpp"

namespace zeroone {

struct CanonOptions {
  // Branch once instead of l times when the remaining block is symmetric
  // (uniform column classes except at most one permutation-like class), and
  // collapse identical candidate rows; leaf counts are rescaled so the
  // reported number of minimizing row permutations is unchanged.
  bool symmetry_heuristic = true;
};

namespace detail {

// Branch-and-bound search for the lexicographically smallest matrix
// reachable by independent row/column permutations.  Rows are chosen one at
// a time; the column order is refined per chosen row by packing the ones of
// that row to the right end of every column class, which keeps exactly the
// permutations fixing the already-chosen prefix.
//
// The object is a reusable workspace; one instance per thread.
class PiSearch {
 public:
  static constexpr int kMax = 64;

  explicit PiSearch(CanonOptions opts = CanonOptions{}) : opts_(opts) {}

  struct Result {
    int num_rows = 0;
    int num_cols = 0;
    std::array<std::uint64_t, kMax> rep{};      // canonical rows
    std::array<std::uint8_t, kMax> row_choice{};  // depth -> source row
    std::array<std::uint8_t, kMax> col_order{};   // position -> source column
    // Number of row permutations P such that some column permutation Q
    // completes them to the canonical form (leaf count of the search).
    unsigned long long leaves = 0;
    bool leaves_valid = true;
    // Warm-start bookkeeping for a marked source row: the smallest depth at
    // which any minimizing branch placed it, and whether every depth before
    // that had a unique strictly-best candidate.
    int marked_depth = -1;
    bool marked_prefix_unique = false;
  };

  // Per-depth snapshot of the column state after `depth` rows were placed.
  struct Frame {
    std::array<std::uint8_t, kMax> col_order;
    std::array<std::uint8_t, kMax + 1> bounds;
    int num_bounds = 0;  // segments = num_bounds - 1 entries in bounds[]
    std::array<std::uint64_t, kMax> words;  // source-row words under col_order
    std::uint64_t used_mask = 0;
  };

  // Greedy first-branch run over a (possibly rectangular) block, recording
  // the state after every placement.  frames[d] is the state with d rows
  // placed; uniq_below[d] says whether every depth < d had a unique best
  // candidate, which certifies that the recorded prefix is the only minimal
  // one.
  struct BlockPrefix {
    int num_rows = 0;
    int num_cols = 0;
    std::vector<Frame> frames;
    std::array<std::uint64_t, kMax> rep{};
    std::array<std::uint8_t, kMax> choices{};
    std::array<bool, kMax + 1> uniq_below{};
  };

  Result run(const std::uint64_t* rows, int num_rows, int num_cols,
             int marked_row = -1);

  void prepare_block(const std::uint64_t* rows, int num_rows, int num_cols,
                     BlockPrefix& out);

  // Canonicalize the block plus one inserted bottom row, resuming the search
  // at `resume_depth` with the block prefix pre-placed.  Sound whenever
  // resume_depth is a proven lower bound for the inserted row's placement
  // and bp.uniq_below[resume_depth] holds.
  Result run_bordered(const BlockPrefix& bp, std::uint64_t inserted,
                      int resume_depth);

 private:
  struct Candidate {
    std::uint8_t row;
    std::uint8_t multiplicity;
  };

  CanonOptions opts_;
  int num_rows_ = 0;
  int num_cols_ = 0;
  int marked_ = -1;
  std::array<std::uint64_t, kMax> source_{};
  std::array<Frame, kMax + 1> frames_;
  std::array<std::uint64_t, kMax> best_{};
  std::array<std::uint8_t, kMax> choice_{};
  std::array<bool, kMax + 1> uniq_below_{};
  std::array<std::uint8_t, kMax> best_choice_{};
  std::array<std::uint8_t, kMax> best_cols_{};
  unsigned long long leaves_ = 0;
  int marked_depth_current_ = -1;
  int res_marked_depth_ = -1;
  bool res_marked_unique_ = false;
  bool have_leaf_ = false;

  std::uint64_t induced_word(const Frame& f, std::uint64_t w) const;
  int collect_candidates(const Frame& f, Candidate* out, int* full_count);
  bool symmetry_collapses(const Frame& f, int remaining) const;
  void make_child(const Frame& f, std::uint64_t row_word, Frame& child) const;
  void search(int depth, unsigned long long multiplier);
  Result finish();
};

}  // namespace detail
}  // namespace zeroone

#endif
