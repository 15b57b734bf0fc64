#include "zeroone/canon.hpp"

#include <algorithm>
#include <bit>

#include "zeroone/errors.hpp"

namespace zeroone {
namespace detail {

namespace {

inline std::uint64_t full_word(int num_cols) {
  return num_cols == 64 ? ~std::uint64_t{0}
                        : (std::uint64_t{1} << num_cols) - 1;
}

inline unsigned long long checked_add_ull(unsigned long long a,
                                          unsigned long long b) {
  unsigned long long r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("minimizing-permutation count exceeds 64 bits");
  }
  return r;
}

inline unsigned long long checked_mul_ull(unsigned long long a,
                                          unsigned long long b) {
  unsigned long long r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("minimizing-permutation count exceeds 64 bits");
  }
  return r;
}

}  // namespace

std::uint64_t PiSearch::induced_word(const Frame& f, std::uint64_t w) const {
  // Per column class, the ones of the row end up packed at the right end,
  // so the class contributes (2^v - 1) at its right edge.
  std::uint64_t out = 0;
  for (int t = 0; t + 1 < f.num_bounds; ++t) {
    int lo = f.bounds[static_cast<size_t>(t)];
    int hi = f.bounds[static_cast<size_t>(t) + 1];
    std::uint64_t mask = ((hi - lo) == 64 ? ~std::uint64_t{0}
                                          : ((std::uint64_t{1} << (hi - lo)) - 1))
                         << (num_cols_ - hi);
    int v = std::popcount(w & mask);
    out |= ((std::uint64_t{1} << v) - 1) << (num_cols_ - hi);
  }
  return out;
}

bool PiSearch::symmetry_collapses(const Frame& f, int remaining) const {
  if (remaining < 2) return false;
  int special = -1;
  for (int t = 0; t + 1 < f.num_bounds; ++t) {
    int lo = f.bounds[static_cast<size_t>(t)];
    int hi = f.bounds[static_cast<size_t>(t) + 1];
    std::uint64_t mask = ((hi - lo) == 64 ? ~std::uint64_t{0}
                                          : ((std::uint64_t{1} << (hi - lo)) - 1))
                         << (num_cols_ - hi);
    bool all_zero = true, all_one = true;
    for (int r = 0; r < num_rows_; ++r) {
      if ((f.used_mask >> r) & 1u) continue;
      std::uint64_t sub = f.words[static_cast<size_t>(r)] & mask;
      if (sub != 0) all_zero = false;
      if (sub != mask) all_one = false;
      if (!all_zero && !all_one) break;
    }
    if (all_zero || all_one) continue;
    if (special >= 0) return false;  // two non-uniform classes
    special = t;
  }
  if (special < 0) return true;  // all classes uniform: identical rows
  int lo = f.bounds[static_cast<size_t>(special)];
  int hi = f.bounds[static_cast<size_t>(special) + 1];
  if (hi - lo != remaining) return false;
  std::uint64_t mask = ((hi - lo) == 64 ? ~std::uint64_t{0}
                                        : ((std::uint64_t{1} << (hi - lo)) - 1))
                       << (num_cols_ - hi);
  int want = -1;
  for (int r = 0; r < num_rows_; ++r) {
    if ((f.used_mask >> r) & 1u) continue;
    int s = std::popcount(f.words[static_cast<size_t>(r)] & mask);
    if (want < 0) want = s;
    if (s != want) return false;
  }
  if (want != 1 && want != remaining - 1) return false;
  for (int p = lo; p < hi; ++p) {
    std::uint64_t bit = std::uint64_t{1} << (num_cols_ - 1 - p);
    int s = 0;
    for (int r = 0; r < num_rows_; ++r) {
      if ((f.used_mask >> r) & 1u) continue;
      if (f.words[static_cast<size_t>(r)] & bit) ++s;
    }
    if (s != want) return false;
  }
  return true;
}

int PiSearch::collect_candidates(const Frame& f, Candidate* out,
                                 int* full_count) {
  int remaining = num_rows_ - std::popcount(f.used_mask);
  if (opts_.symmetry_heuristic && symmetry_collapses(f, remaining)) {
    for (int r = 0; r < num_rows_; ++r) {
      if (!((f.used_mask >> r) & 1u)) {
        out[0] = Candidate{static_cast<std::uint8_t>(r),
                           static_cast<std::uint8_t>(remaining)};
        *full_count = remaining;
        return 1;
      }
    }
  }
  std::uint64_t best_iw = ~std::uint64_t{0};
  int n_cand = 0;
  for (int r = 0; r < num_rows_; ++r) {
    if ((f.used_mask >> r) & 1u) continue;
    std::uint64_t iw = induced_word(f, f.words[static_cast<size_t>(r)]);
    if (iw < best_iw) {
      best_iw = iw;
      n_cand = 0;
      out[n_cand++] = Candidate{static_cast<std::uint8_t>(r), 1};
    } else if (iw == best_iw) {
      out[n_cand++] = Candidate{static_cast<std::uint8_t>(r), 1};
    }
  }
  *full_count = n_cand;
  if (opts_.symmetry_heuristic && n_cand > 1) {
    // identical candidate rows are interchangeable: keep one per word value
    int w = 0;
    for (int i = 0; i < n_cand; ++i) {
      bool dup = false;
      for (int j = 0; j < w; ++j) {
        if (f.words[out[i].row] == f.words[out[j].row]) {
          out[j].multiplicity =
              static_cast<std::uint8_t>(out[j].multiplicity + 1);
          dup = true;
          break;
        }
      }
      if (!dup) out[w++] = out[i];
    }
    n_cand = w;
  }
  return n_cand;
}

void PiSearch::make_child(const Frame& f, std::uint64_t row_word,
                          Frame& child) const {
  std::array<std::uint8_t, kMax> src;
  int idx = 0;
  child.num_bounds = 0;
  child.bounds[static_cast<size_t>(child.num_bounds++)] = 0;
  bool moved = false;
  for (int t = 0; t + 1 < f.num_bounds; ++t) {
    int lo = f.bounds[static_cast<size_t>(t)];
    int hi = f.bounds[static_cast<size_t>(t) + 1];
    int zeros = 0;
    for (int p = lo; p < hi; ++p) {
      if (!((row_word >> (num_cols_ - 1 - p)) & 1u)) {
        src[static_cast<size_t>(idx++)] = static_cast<std::uint8_t>(p);
        ++zeros;
      }
    }
    for (int p = lo; p < hi; ++p) {
      if ((row_word >> (num_cols_ - 1 - p)) & 1u) {
        src[static_cast<size_t>(idx++)] = static_cast<std::uint8_t>(p);
      }
    }
    int ones = hi - lo - zeros;
    if (zeros > 0 && ones > 0) {
      child.bounds[static_cast<size_t>(child.num_bounds++)] =
          static_cast<std::uint8_t>(lo + zeros);
    }
    child.bounds[static_cast<size_t>(child.num_bounds++)] =
        static_cast<std::uint8_t>(hi);
    for (int p = lo; p < hi && !moved; ++p) {
      if (src[static_cast<size_t>(p)] != p) moved = true;
    }
  }
  if (!moved) {
    child.col_order = f.col_order;
    child.words = f.words;
    return;
  }
  for (int p = 0; p < num_cols_; ++p) {
    child.col_order[static_cast<size_t>(p)] =
        f.col_order[src[static_cast<size_t>(p)]];
  }
  for (int r = 0; r < num_rows_; ++r) {
    if ((child.used_mask >> r) & 1u) continue;
    std::uint64_t w = f.words[static_cast<size_t>(r)];
    std::uint64_t g = 0;
    for (int p = 0; p < num_cols_; ++p) {
      g |= ((w >> (num_cols_ - 1 - src[static_cast<size_t>(p)])) & 1u)
           << (num_cols_ - 1 - p);
    }
    child.words[static_cast<size_t>(r)] = g;
  }
}

void PiSearch::search(int depth, unsigned long long multiplier) {
  Frame& f = frames_[static_cast<size_t>(depth)];
  Candidate cands[kMax];
  int full = 0;
  int n_cand = collect_candidates(f, cands, &full);
  std::uint64_t iw = induced_word(f, f.words[cands[0].row]);
  if (iw > best_[static_cast<size_t>(depth)]) return;  // bound step
  if (iw < best_[static_cast<size_t>(depth)]) {
    best_[static_cast<size_t>(depth)] = iw;
    std::uint64_t filler = full_word(num_cols_);
    for (int d = depth + 1; d < num_rows_; ++d) {
      best_[static_cast<size_t>(d)] = filler;
    }
    leaves_ = 0;  // every previously counted leaf is now beaten
    have_leaf_ = false;
    res_marked_depth_ = -1;
    res_marked_unique_ = false;
  }
  uniq_below_[static_cast<size_t>(depth) + 1] =
      uniq_below_[static_cast<size_t>(depth)] && full == 1;
  for (int c = 0; c < n_cand; ++c) {
    int r = cands[c].row;
    unsigned long long mult =
        checked_mul_ull(multiplier, cands[c].multiplicity);
    choice_[static_cast<size_t>(depth)] = static_cast<std::uint8_t>(r);
    if (r == marked_) marked_depth_current_ = depth;
    Frame& child = frames_[static_cast<size_t>(depth) + 1];
    child.used_mask = f.used_mask | (std::uint64_t{1} << r);
    make_child(f, f.words[static_cast<size_t>(r)], child);
    if (depth + 1 == num_rows_) {
      leaves_ = checked_add_ull(leaves_, mult);
      have_leaf_ = true;
      std::copy_n(choice_.begin(), num_rows_, best_choice_.begin());
      std::copy_n(child.col_order.begin(), num_cols_, best_cols_.begin());
      if (marked_ >= 0) {
        int d = marked_depth_current_;
        if (res_marked_depth_ < 0 || d < res_marked_depth_) {
          res_marked_depth_ = d;
          res_marked_unique_ = uniq_below_[static_cast<size_t>(d)];
        }
      }
    } else {
      search(depth + 1, mult);
    }
    if (r == marked_) marked_depth_current_ = -1;
  }
}

PiSearch::Result PiSearch::finish() {
  Result res;
  res.num_rows = num_rows_;
  res.num_cols = num_cols_;
  std::copy_n(best_.begin(), num_rows_, res.rep.begin());
  res.row_choice = best_choice_;
  res.col_order = best_cols_;
  res.leaves = leaves_;
  res.marked_depth = res_marked_depth_;
  res.marked_prefix_unique = res_marked_unique_;
  return res;
}

PiSearch::Result PiSearch::run(const std::uint64_t* rows, int num_rows,
                               int num_cols, int marked_row) {
  num_rows_ = num_rows;
  num_cols_ = num_cols;
  marked_ = marked_row;
  Frame& f0 = frames_[0];
  f0.used_mask = 0;
  f0.num_bounds = 0;
  f0.bounds[static_cast<size_t>(f0.num_bounds++)] = 0;
  if (num_cols > 0) {
    f0.bounds[static_cast<size_t>(f0.num_bounds++)] =
        static_cast<std::uint8_t>(num_cols);
  }
  for (int p = 0; p < num_cols; ++p) {
    f0.col_order[static_cast<size_t>(p)] = static_cast<std::uint8_t>(p);
  }
  for (int r = 0; r < num_rows; ++r) {
    source_[static_cast<size_t>(r)] = rows[r];
    f0.words[static_cast<size_t>(r)] = rows[r];
  }
  std::uint64_t filler = full_word(num_cols);
  for (int d = 0; d < num_rows; ++d) best_[static_cast<size_t>(d)] = filler;
  uniq_below_[0] = true;
  leaves_ = 0;
  have_leaf_ = false;
  marked_depth_current_ = -1;
  res_marked_depth_ = -1;
  res_marked_unique_ = false;
  if (num_rows == 0) {
    leaves_ = 1;
    for (int p = 0; p < num_cols; ++p) {
      best_cols_[static_cast<size_t>(p)] = static_cast<std::uint8_t>(p);
    }
    return finish();
  }
  search(0, 1);
  return finish();
}

void PiSearch::prepare_block(const std::uint64_t* rows, int num_rows,
                             int num_cols, BlockPrefix& out) {
  num_rows_ = num_rows;
  num_cols_ = num_cols;
  marked_ = -1;
  out.num_rows = num_rows;
  out.num_cols = num_cols;
  out.frames.resize(static_cast<size_t>(num_rows) + 1);
  Frame& f0 = out.frames[0];
  f0.used_mask = 0;
  f0.num_bounds = 0;
  f0.bounds[static_cast<size_t>(f0.num_bounds++)] = 0;
  if (num_cols > 0) {
    f0.bounds[static_cast<size_t>(f0.num_bounds++)] =
        static_cast<std::uint8_t>(num_cols);
  }
  for (int p = 0; p < num_cols; ++p) {
    f0.col_order[static_cast<size_t>(p)] = static_cast<std::uint8_t>(p);
  }
  for (int r = 0; r < num_rows; ++r) {
    f0.words[static_cast<size_t>(r)] = rows[r];
  }
  out.uniq_below[0] = true;
  Candidate cands[kMax];
  for (int depth = 0; depth < num_rows; ++depth) {
    Frame& f = out.frames[static_cast<size_t>(depth)];
    int full = 0;
    collect_candidates(f, cands, &full);
    int r = cands[0].row;  // greedy first branch
    out.choices[static_cast<size_t>(depth)] = static_cast<std::uint8_t>(r);
    out.rep[static_cast<size_t>(depth)] =
        induced_word(f, f.words[static_cast<size_t>(r)]);
    out.uniq_below[static_cast<size_t>(depth) + 1] =
        out.uniq_below[static_cast<size_t>(depth)] && full == 1;
    Frame& child = out.frames[static_cast<size_t>(depth) + 1];
    child.used_mask = f.used_mask | (std::uint64_t{1} << r);
    make_child(f, f.words[static_cast<size_t>(r)], child);
  }
}

PiSearch::Result PiSearch::run_bordered(const BlockPrefix& bp,
                                        std::uint64_t inserted,
                                        int resume_depth) {
  num_rows_ = bp.num_rows + 1;
  num_cols_ = bp.num_cols;
  marked_ = num_rows_ - 1;
  const Frame& snap = bp.frames[static_cast<size_t>(resume_depth)];
  Frame& f = frames_[static_cast<size_t>(resume_depth)];
  f = snap;
  std::uint64_t g = 0;
  for (int p = 0; p < num_cols_; ++p) {
    g |= ((inserted >> (num_cols_ - 1 - f.col_order[static_cast<size_t>(p)])) &
          1u)
         << (num_cols_ - 1 - p);
  }
  f.words[static_cast<size_t>(marked_)] = g;
  std::uint64_t filler = full_word(num_cols_);
  for (int d = 0; d < resume_depth; ++d) {
    best_[static_cast<size_t>(d)] = bp.rep[static_cast<size_t>(d)];
    choice_[static_cast<size_t>(d)] = bp.choices[static_cast<size_t>(d)];
  }
  for (int d = resume_depth; d < num_rows_; ++d) {
    best_[static_cast<size_t>(d)] = filler;
  }
  uniq_below_[static_cast<size_t>(resume_depth)] =
      bp.uniq_below[static_cast<size_t>(resume_depth)];
  leaves_ = 0;
  have_leaf_ = false;
  marked_depth_current_ = -1;
  res_marked_depth_ = -1;
  res_marked_unique_ = false;
  search(resume_depth, 1);
  Result res = finish();
  res.leaves_valid = resume_depth == 0;
  return res;
}

}  // namespace detail

namespace {

BitMatrix rep_to_matrix(const detail::PiSearch::Result& r) {
  BitMatrix m(r.num_cols);
  for (int i = 0; i < r.num_rows; ++i) {
    m.set_row(i, r.rep[static_cast<size_t>(i)]);
  }
  return m;
}

// Product of g! over groups of g identical values.
mpz_class duplicate_group_factor(std::vector<std::uint64_t> vals) {
  std::sort(vals.begin(), vals.end());
  mpz_class out = 1;
  size_t i = 0;
  while (i < vals.size()) {
    size_t j = i;
    while (j < vals.size() && vals[j] == vals[i]) ++j;
    if (j - i > 1) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(j - i));
      out *= f;
    }
    i = j;
  }
  return out;
}

std::vector<std::uint64_t> column_words(const BitMatrix& m) {
  std::vector<std::uint64_t> cols(static_cast<size_t>(m.order()), 0);
  for (int j = 0; j < m.order(); ++j) {
    std::uint64_t w = 0;
    for (int i = 0; i < m.order(); ++i) {
      w = (w << 1) | (m.bit(i, j) ? 1u : 0u);
    }
    cols[static_cast<size_t>(j)] = w;
  }
  return cols;
}

}  // namespace

CanonicalCert pi_representative(const BitMatrix& a, const CanonOptions& opts) {
  int n = a.order();
  detail::PiSearch search(opts);
  auto res = search.run(a.rows().data(), n, n);
  CanonicalCert cert;
  cert.rep = rep_to_matrix(res);
  std::vector<int> p_images(static_cast<size_t>(n));
  std::vector<int> q_images(static_cast<size_t>(n));
  for (int d = 0; d < n; ++d) {
    p_images[res.row_choice[static_cast<size_t>(d)]] = d;
    q_images[static_cast<size_t>(d)] = res.col_order[static_cast<size_t>(d)];
  }
  cert.p = Perm(std::move(p_images));
  cert.q = Perm(std::move(q_images));
  // Each minimizing row order admits one column arrangement up to
  // permutations of identical representative columns.
  cert.count = mpz_class(static_cast<unsigned long>(res.leaves)) *
               duplicate_group_factor(column_words(cert.rep));
  return cert;
}

unsigned long long pi_minimizing_row_perms(const BitMatrix& a,
                                           const CanonOptions& opts) {
  detail::PiSearch search(opts);
  return search.run(a.rows().data(), a.order(), a.order()).leaves;
}

mpz_class pi_class_size(const BitMatrix& a, const CanonOptions& opts) {
  int n = a.order();
  if (n == 0) return 1;
  mpz_class n_fact;
  mpz_fac_ui(n_fact.get_mpz_t(), static_cast<unsigned long>(n));
  // row arrangements: n! over the multiplicities of equal rows
  mpz_class a_factor = n_fact / duplicate_group_factor(a.rows());
  // column arrangements: n!/p with p the minimizing row-permutation count
  // of the transpose
  unsigned long long p = pi_minimizing_row_perms(a.transpose(), opts);
  mpz_class b = n_fact / static_cast<unsigned long>(p);
  if (b * static_cast<unsigned long>(p) != n_fact) {
    throw Error("pi_class_size: stabilizer does not divide n!");
  }
  return a_factor * b;
}

BitMatrix phi_representative(const BitMatrix& a, const CanonOptions& opts) {
  int n = a.order();
  detail::PiSearch search(opts);
  BitMatrix best;
  bool have = false;
  for (int i = 0; i <= n; ++i) {
    BitMatrix ri = xi_row(a, i);
    for (int j = 0; j <= n; ++j) {
      BitMatrix rij = xi_col(ri, j);
      auto res = search.run(rij.rows().data(), n, n);
      BitMatrix rep = rep_to_matrix(res);
      if (!have || lex_less(rep, best)) {
        best = std::move(rep);
        have = true;
      }
    }
  }
  return best;
}

std::vector<BitMatrix> phi_orbit_pi_reps(const BitMatrix& a,
                                         const CanonOptions& opts) {
  int n = a.order();
  detail::PiSearch search(opts);
  std::vector<BitMatrix> reps;
  reps.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int i = 0; i <= n; ++i) {
    BitMatrix ri = xi_row(a, i);
    for (int j = 0; j <= n; ++j) {
      BitMatrix rij = xi_col(ri, j);
      reps.push_back(rep_to_matrix(search.run(rij.rows().data(), n, n)));
    }
  }
  std::sort(reps.begin(), reps.end(),
            [](const BitMatrix& x, const BitMatrix& y) { return lex_less(x, y); });
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

}  // namespace zeroone
