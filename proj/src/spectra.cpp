#include "zeroone/spectra.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

#include "zeroone/errors.hpp"
#include "zeroone/exact.hpp"

namespace zeroone {

SpectrumReport spectrum(int n, const std::vector<BitMatrix>& phi_reps_below,
                        const LevelResult* level, int threads) {
  if (phi_reps_below.empty()) {
    throw DependencyError("spectrum(" + std::to_string(n) +
                          "): phi representatives of order " +
                          std::to_string(n - 1) + " required");
  }
  for (const BitMatrix& m : phi_reps_below) {
    if (m.order() != n - 1) {
      throw DependencyError("spectrum(" + std::to_string(n) +
                            "): seed of order " + std::to_string(m.order()) +
                            " does not belong to level " +
                            std::to_string(n - 1));
    }
  }
  SpectrumReport rep;
  rep.order = n;
  CoveredSet covered = extension_covered_union(phi_reps_below, threads);
  rep.dets = covered.values();
  rep.max_det = rep.dets.empty() ? 0 : rep.dets.back();
  std::int64_t a = 1;
  while (covered.test(a)) ++a;
  rep.first_missing = a;

  if (level != nullptr) {
    if (level->order != n) {
      throw DependencyError("spectrum(" + std::to_string(n) +
                            "): classification level " +
                            std::to_string(level->order) + " supplied");
    }
    rep.have_counts = true;
    mpz_class max_count = 0;
    std::int64_t max_adv = 0;
    for (const ClassRecord& r : level->records) {
      int rk = r.snf.rank();
      rep.rank_census[rk] += r.matrices;
      if (rk == n) {
        rep.regular_count += r.matrices;
        std::int64_t adv = 1;
        for (std::int64_t d : r.snf.diag) adv *= d;
        if (adv > max_adv) {
          max_adv = adv;
          max_count = 0;
        }
        if (adv == max_adv) max_count += r.matrices;
      }
    }
    if (max_adv != rep.max_det) {
      throw Error("spectrum: classification max |det| " +
                  std::to_string(max_adv) + " disagrees with extension sweep " +
                  std::to_string(rep.max_det));
    }
    rep.max_det_count = max_count / 2;
    if (rep.max_det_count * 2 != max_count) {
      throw Error("spectrum: matrices at the maximal |det| not even");
    }
  }
  return rep;
}

bool lemma_allows(const SnfVector& s, const SnfVector& s_prime) {
  if (!validate_chain(s) || !validate_chain(s_prime)) {
    throw ConfigError("lemma_allows: invalid SNF vector");
  }
  if (s_prime.order() != s.order() + 1) {
    throw DimensionError("lemma_allows: orders must differ by one");
  }
  int r = s.rank();
  int rp = s_prime.rank();
  if (rp < r || rp > r + 2) return false;
  // product of the first i extension factors divides the base product
  mpz_class prod_base = 1, prod_ext = 1;
  for (int i = 0; i < r; ++i) {
    prod_base *= static_cast<unsigned long>(s.diag[static_cast<size_t>(i)]);
    prod_ext *=
        static_cast<unsigned long>(s_prime.diag[static_cast<size_t>(i)]);
    if (prod_ext == 0 || prod_base % prod_ext != 0) return false;
  }
  // prod_{i<n} d_i divides det A'
  int n = s.order();
  mpz_class head = 1;
  for (int i = 0; i + 1 < n; ++i) {
    head *= static_cast<unsigned long>(s.diag[static_cast<size_t>(i)]);
  }
  if (head == 0) return true;  // det A' is then 0 as well, divisible
  mpz_class det_ext = 1;
  for (std::int64_t d : s_prime.diag) det_ext *= static_cast<unsigned long>(d);
  return det_ext % head == 0;
}

IncidenceMatrix incidence(const LevelResult& level_n,
                          const LevelResult& level_above, int threads) {
  if (level_above.order != level_n.order + 1) {
    throw DependencyError("incidence: levels must be consecutive");
  }
  IncidenceMatrix m;
  m.order = level_n.order;
  for (const ClassRecord& r : level_n.records) m.from_snfs.push_back(r.snf);
  for (const ClassRecord& r : level_above.records) m.to_snfs.push_back(r.snf);
  size_t cols = m.to_snfs.size();
  std::vector<std::uint8_t> witnessed(m.from_snfs.size() * cols, 0);
  std::map<SnfVector, size_t> to_index;
  for (size_t j = 0; j < m.to_snfs.size(); ++j) to_index[m.to_snfs[j]] = j;
  std::map<SnfVector, size_t> from_index;
  for (size_t i = 0; i < m.from_snfs.size(); ++i) from_index[m.from_snfs[i]] = i;

  if (threads <= 0) threads = omp_get_max_threads();
  const auto& reps = level_n.phi_reps;
  bool missing_ext = false;
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint8_t> local(witnessed.size(), 0);
#pragma omp for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(reps.size()); ++i) {
      const BitMatrix& base = reps[static_cast<size_t>(i)];
      size_t row = from_index.at(smith_normal_form(base));
      for (const SnfVector& ext : extension_snf_set(base)) {
        auto it = to_index.find(ext);
        if (it == to_index.end()) {
#pragma omp atomic write
          missing_ext = true;
        } else {
          local[row * cols + it->second] = 1;
        }
      }
    }
#pragma omp critical
    for (size_t k = 0; k < witnessed.size(); ++k) {
      witnessed[k] |= local[k];
    }
  }
  if (missing_ext) {
    throw Error("incidence: an extension SNF is missing from level " +
                std::to_string(level_above.order) +
                "; the level data is incomplete");
  }

  m.cells.resize(witnessed.size());
  for (size_t i = 0; i < m.from_snfs.size(); ++i) {
    for (size_t j = 0; j < cols; ++j) {
      if (witnessed[i * cols + j]) {
        m.cells[i * cols + j] = IncidenceCell::kOne;
      } else if (!lemma_allows(m.from_snfs[i], m.to_snfs[j])) {
        m.cells[i * cols + j] = IncidenceCell::kZeroExplained;
      } else {
        m.cells[i * cols + j] = IncidenceCell::kZeroUnexplained;
      }
    }
  }
  return m;
}

std::string render_incidence(const IncidenceMatrix& m, bool ascii) {
  const char* one = ascii ? "1" : "•";
  const char* expl = ascii ? "x" : "⋆";
  const char* unexpl = ascii ? "o" : "∘";
  std::ostringstream os;
  for (size_t i = 0; i < m.from_snfs.size(); ++i) {
    os << format_snf_short(m.from_snfs[i]) << '\t';
    for (size_t j = 0; j < m.to_snfs.size(); ++j) {
      switch (m.cell(i, j)) {
        case IncidenceCell::kOne:
          os << one;
          break;
        case IncidenceCell::kZeroExplained:
          os << expl;
          break;
        case IncidenceCell::kZeroUnexplained:
          os << unexpl;
          break;
      }
    }
    os << '\n';
  }
  return os.str();
}

BitMatrix counterexample_matrix() {
  // Four blocks with 2,3,2,3 ones per row and 2,2,3,3 per column; singular
  // of rank 9 with no regular order-9 minor of trivial SNF.
  return BitMatrix::from_bits({
      "0011101001",
      "0110010101",
      "1100011010",
      "1001100110",
      "0011000111",
      "1100001110",
      "1010011100",
      "0101111000",
      "0110110001",
      "1001100011",
  });
}

CounterexampleReport verify_counterexample(const BitMatrix& f) {
  CounterexampleReport rep;
  if (f.order() != 10) return rep;
  rep.rank_ok = rank(f) == 9;
  SnfVector expected;
  expected.diag = {1, 1, 1, 1, 1, 1, 1, 1, 1, 0};
  rep.snf_ok = smith_normal_form(f) == expected;
  SnfVector trivial;
  trivial.diag.assign(9, 1);
  rep.minors_ok = true;
  for (int i = 0; i < 10 && rep.minors_ok; ++i) {
    for (int j = 0; j < 10 && rep.minors_ok; ++j) {
      BitMatrix minor(9);
      int mr = 0;
      for (int r = 0; r < 10; ++r) {
        if (r == i) continue;
        int mc = 0;
        for (int c = 0; c < 10; ++c) {
          if (c == j) continue;
          minor.set_bit(mr, mc, f.bit(r, c));
          ++mc;
        }
        ++mr;
      }
      if (smith_normal_form(minor) == trivial) rep.minors_ok = false;
    }
  }
  rep.block_sums_ok = true;
  auto row_block_sum = [&f](int r, int c0, int c1) {
    int s = 0;
    for (int c = c0; c < c1; ++c) s += f.bit(r, c) ? 1 : 0;
    return s;
  };
  auto col_block_sum = [&f](int c, int r0, int r1) {
    int s = 0;
    for (int r = r0; r < r1; ++r) s += f.bit(r, c) ? 1 : 0;
    return s;
  };
  for (int r = 0; r < 4; ++r) {
    if (row_block_sum(r, 0, 4) != 2) rep.block_sums_ok = false;    // A
    if (row_block_sum(r, 4, 10) != 3) rep.block_sums_ok = false;   // B
  }
  for (int r = 4; r < 10; ++r) {
    if (row_block_sum(r, 0, 4) != 2) rep.block_sums_ok = false;    // C
    if (row_block_sum(r, 4, 10) != 3) rep.block_sums_ok = false;   // D
  }
  for (int c = 0; c < 4; ++c) {
    if (col_block_sum(c, 0, 4) != 2) rep.block_sums_ok = false;    // A
    if (col_block_sum(c, 4, 10) != 3) rep.block_sums_ok = false;   // C
  }
  for (int c = 4; c < 10; ++c) {
    if (col_block_sum(c, 0, 4) != 2) rep.block_sums_ok = false;    // B
    if (col_block_sum(c, 4, 10) != 3) rep.block_sums_ok = false;   // D
  }
  return rep;
}

}  // namespace zeroone
