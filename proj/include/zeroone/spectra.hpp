#ifndef ZEROONE_SPECTRA_HPP
#define ZEROONE_SPECTRA_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "zeroone/classify.hpp"
#include "zeroone/extend.hpp"
#include "zeroone/snf.hpp"

namespace zeroone {

// Determinant landscape of one order: the set D of attained |det| values,
// the smallest positive value missing from it, the maximum, the count of
// matrices attaining the maximum (half the |det|-count), the number of
// regular matrices, and the rank distribution.
struct SpectrumReport {
  int order = 0;
  std::vector<std::int64_t> dets;  // D, sorted ascending (0 included)
  std::int64_t first_missing = 0;  // a
  std::int64_t max_det = 0;        // d
  bool have_counts = false;        // c, m, rank census present
  mpz_class max_det_count;         // c
  mpz_class regular_count;         // m
  std::map<int, mpz_class> rank_census;
};

// D comes from sweeping all borders of the order-(n-1) phi-representatives;
// the counting fields need the order-n classification.
SpectrumReport spectrum(int n, const std::vector<BitMatrix>& phi_reps_below,
                        const LevelResult* level = nullptr, int threads = 0);

// Necessary conditions on SNF(A') for A' in bord(A): rank grows by at most
// two, the invariant-factor products of the extension divide those of the
// base up to rank(A), and prod_{i<n} d_i divides det A'.
bool lemma_allows(const SnfVector& s, const SnfVector& s_prime);

enum class IncidenceCell : std::uint8_t {
  kOne,               // witnessed by some extension
  kZeroExplained,     // impossible by lemma_allows
  kZeroUnexplained,
};

struct IncidenceMatrix {
  int order = 0;  // base order n; columns are order n+1
  std::vector<SnfVector> from_snfs;
  std::vector<SnfVector> to_snfs;
  std::vector<IncidenceCell> cells;  // row-major from x to

  IncidenceCell cell(size_t i, size_t j) const {
    return cells[i * to_snfs.size() + j];
  }
};

// Witnessed SNF pairs over every extension of every phi-representative of
// order n (complete: the extension SNF set is constant on phi-classes).
IncidenceMatrix incidence(const LevelResult& level_n,
                          const LevelResult& level_above, int threads = 0);

std::string render_incidence(const IncidenceMatrix& m, bool ascii = false);

// The built-in order-10 singular fixture: rank 9, SNF (1^9, 0), yet no
// order-9 minor has SNF (1^9).
BitMatrix counterexample_matrix();

struct CounterexampleReport {
  bool rank_ok = false;
  bool snf_ok = false;
  bool minors_ok = false;
  bool block_sums_ok = false;
  bool ok() const { return rank_ok && snf_ok && minors_ok && block_sums_ok; }
};

CounterexampleReport verify_counterexample(const BitMatrix& f);
inline CounterexampleReport verify_counterexample() {
  return verify_counterexample(counterexample_matrix());
}

}  // namespace zeroone

#endif
