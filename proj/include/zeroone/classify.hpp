#ifndef ZEROONE_CLASSIFY_HPP
#define ZEROONE_CLASSIFY_HPP

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

#include "zeroone/bitmat.hpp"
#include "zeroone/pi_search.hpp"
#include "zeroone/snf.hpp"

namespace zeroone {

// One SNF class of a level: representative is the lex-min phi-representative
// in the class.
struct ClassRecord {
  SnfVector snf;
  mpz_class matrices;
  mpz_class pi_classes;
  mpz_class phi_classes;
  BitMatrix representative;
};

struct LevelResult {
  int order = 0;
  std::vector<BitMatrix> phi_reps;     // sorted, duplicate-free
  std::vector<ClassRecord> records;    // rank-major, then lex on the diagonal
};

struct PipelineOptions {
  int threads = 0;                    // <= 0: use all available
  std::size_t memory_budget = std::size_t{1} << 22;  // matrices in memory
  bool warm_start = true;             // reuse block prefixes across borders
  bool snf_partition = false;         // force SNF-first partitioning
  CanonOptions canon;
  std::string checkpoint_dir;         // empty: no checkpoints, spill to tmp
  bool binary_checkpoints = false;
};

// All distinct pi-representatives of single-row/column extensions of the
// seeds (sorted, duplicate-free).  Feeding a level's phi-representatives
// yields a set that meets every phi-class of the next order, which is what
// the reduction step needs; it is a proper subset of the full
// pi-representative set in general.
std::vector<BitMatrix> extend_level(const std::vector<BitMatrix>& seeds,
                                    const PipelineOptions& opts =
                                        PipelineOptions{});

// One phi-representative per phi-class met by the input.  The input must be
// sorted and duplicate-free; the memory budget bounds the auxiliary
// duplicate set, batches are flushed by rescanning the remainder.
std::vector<BitMatrix> reduce_to_phi(std::vector<BitMatrix> pi_reps,
                                     const PipelineOptions& opts =
                                         PipelineOptions{});

// Full pipeline: levels 1..n_max, each extending the previous level's
// phi-representatives, reducing, and aggregating SNF-class statistics.
// Output is deterministic for a fixed configuration regardless of the
// thread count.
std::vector<LevelResult> classify_up_to(int n_max,
                                        const PipelineOptions& opts =
                                            PipelineOptions{});

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Structural checks: class sums against 2^(n^2) and the class-count formula,
// per-record invariants, sortedness of the representative set.
VerifyReport verify_level(const LevelResult& level);

// Deep check: every stored phi-representative is canonical.
VerifyReport verify_level_deep(const LevelResult& level,
                               const PipelineOptions& opts = PipelineOptions{});

// Checkpoints: <dir>/level_<n>_phi.txt (matrix-set text),
// <dir>/level_<n>_classes.tsv, optionally <dir>/level_<n>_phi.bin.
void write_checkpoint(const std::string& dir, const LevelResult& level,
                      bool binary = false);
LevelResult read_checkpoint(const std::string& dir, int order);
std::string classes_tsv(const LevelResult& level);

// Compressed binary matrix-set format (order 2..8): magic "BMS1", order
// byte, little-endian u64 count, then groups of consecutive matrices sharing
// their first n-2 rows: [n-2 prefix row bytes][u8 group size][2 suffix row
// bytes per matrix].
void write_matrix_set_binary(const std::string& path,
                             const std::vector<BitMatrix>& set, int order);
std::vector<BitMatrix> read_matrix_set_binary(const std::string& path);

}  // namespace zeroone

#endif
