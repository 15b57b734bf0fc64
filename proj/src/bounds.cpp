#include "zeroone/bounds.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

#include "zeroone/errors.hpp"
#include "zeroone/exact.hpp"

namespace zeroone {

std::int64_t paseman_bound(int n) {
  if (n < 2) throw ConfigError("paseman_bound: n must be >= 2");
  return 2 * fibonacci_number(n - 1);
}

namespace {

struct SeedSweep {
  CoveredSet covered;
  std::int64_t local_dmax;
  std::vector<std::pair<std::int64_t, BitMatrix>> promising;  // (|det|, A')
};

// All borders of one seed with the poor-column filter: for a fixed right
// column y the determinant is b*det(A) - sum_c T_c x_c with
// T_c = sum_r y_r C[r][c]; if neither the positive nor the negative
// coefficient sum reaches `threshold` the column is skipped, otherwise
// (x, b) runs a Gray code at one addition per step.
SeedSweep sweep_seed(const BitMatrix& seed, std::int64_t threshold,
                     std::int64_t dmax_snapshot, std::int64_t limit,
                     bool pruning) {
  int m = seed.order();
  if (m > 40) throw OverflowError("bound sweep limited to seed order 40");
  std::int64_t det_base;
  std::vector<std::int64_t> cof(static_cast<size_t>(m) * m);
  {
    Int128 d = determinant(seed);
    if (d > INT64_MAX / 4 || d < INT64_MIN / 4) {
      throw OverflowError("seed determinant exceeds the sweep range");
    }
    det_base = static_cast<std::int64_t>(d);
    IntMatrix c = cofactor_matrix(seed);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        Int128 v = c.at(i, j);
        if (v > INT64_MAX / 4 || v < INT64_MIN / 4) {
          throw OverflowError("cofactor exceeds the sweep range");
        }
        cof[static_cast<size_t>(i) * m + j] = static_cast<std::int64_t>(v);
      }
    }
  }

  SeedSweep out{CoveredSet(limit), std::max<std::int64_t>(dmax_snapshot, 1), {}};
  std::vector<std::int64_t> t(static_cast<size_t>(std::max(m, 1)), 0);
  std::uint64_t y = 0;
  std::uint64_t ny = std::uint64_t{1} << m;
  std::uint64_t nxb = std::uint64_t{1} << (m + 1);
  for (std::uint64_t ty = 0;; ++ty) {
    std::int64_t splus = det_base > 0 ? det_base : 0;
    std::int64_t sminus = det_base < 0 ? det_base : 0;
    for (int c = 0; c < m; ++c) {
      std::int64_t v = -t[static_cast<size_t>(c)];
      if (v > 0) {
        splus += v;
      } else {
        sminus += v;
      }
    }
    if (!pruning || std::max(splus, -sminus) >= threshold) {
      // bit 0 of the Gray word is b, bit k >= 1 is x bit k-1
      std::int64_t val = 0;
      std::uint64_t g = 0;
      for (std::uint64_t tu = 0;; ++tu) {
        std::int64_t a = val < 0 ? -val : val;
        out.covered.set(a);
        if (a > out.local_dmax) out.local_dmax = a;
        if (10 * a > 9 * out.local_dmax && a > 0) {
          std::uint64_t x = g >> 1;
          int b = static_cast<int>(g & 1);
          out.promising.emplace_back(a, bordered(seed, x, y, b));
        }
        if (tu + 1 == nxb) break;
        int k = std::countr_zero(tu + 1);
        std::uint64_t bit = std::uint64_t{1} << k;
        g ^= bit;
        bool on = (g & bit) != 0;
        std::int64_t delta;
        if (k == 0) {
          delta = det_base;
        } else {
          delta = -t[static_cast<size_t>(m - 1 - (k - 1))];
        }
        val += on ? delta : -delta;
      }
    }
    if (ty + 1 == ny) break;
    int j = std::countr_zero(ty + 1);  // y bit j flips: base row m-1-j
    std::uint64_t bit = std::uint64_t{1} << j;
    y ^= bit;
    int row = m - 1 - j;
    bool on = (y & bit) != 0;
    for (int c = 0; c < m; ++c) {
      std::int64_t v = cof[static_cast<size_t>(row) * m + c];
      t[static_cast<size_t>(c)] += on ? v : -v;
    }
  }
  return out;
}

}  // namespace

BoundRun heuristic_round(const std::vector<BitMatrix>& seeds,
                         const BoundOptions& opts) {
  if (seeds.empty()) throw ConfigError("heuristic_round: no seeds");
  int m = seeds.front().order();
  for (const BitMatrix& s : seeds) {
    if (s.order() != m) throw DimensionError("heuristic_round: mixed orders");
  }
  BoundRun run;
  run.order = m + 1;
  std::int64_t limit = hadamard_floor_i64(m + 1);
  run.covered = CoveredSet(limit);
  run.first0 = 1;
  run.dmax = 1;
  int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

  std::vector<std::pair<std::int64_t, BitMatrix>> promising;
  // fixed-size chunks keep the result independent of the thread count while
  // letting the skip threshold grow between chunks
  constexpr std::size_t kChunk = 8;
  for (std::size_t base = 0; base < seeds.size(); base += kChunk) {
    std::size_t end = std::min(seeds.size(), base + kChunk);
    std::vector<SeedSweep> sweeps(end - base);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(end - base); ++i) {
      sweeps[static_cast<size_t>(i)] =
          sweep_seed(seeds[base + static_cast<size_t>(i)], run.first0,
                     run.dmax, limit, opts.pruning);
    }
    for (SeedSweep& s : sweeps) {
      run.covered.merge(s.covered);
      run.dmax = std::max(run.dmax, s.local_dmax);
      for (auto& p : s.promising) promising.push_back(std::move(p));
    }
    while (run.covered.test(run.first0)) ++run.first0;
  }

  // rank by |det| descending, lex ascending on ties, then dedupe and cap
  std::sort(promising.begin(), promising.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return lex_less(a.second, b.second);
            });
  promising.erase(std::unique(promising.begin(), promising.end(),
                              [](const auto& a, const auto& b) {
                                return a.second == b.second;
                              }),
                  promising.end());
  if (promising.size() > opts.promising_cap) {
    promising.resize(opts.promising_cap);
  }
  run.promising.reserve(promising.size());
  for (auto& p : promising) run.promising.push_back(std::move(p.second));
  return run;
}

std::vector<BoundChain> iterate_bounds(const std::vector<BitMatrix>& seeds,
                                       int rounds, const BoundOptions& opts) {
  if (rounds < 1) throw ConfigError("iterate_bounds: rounds must be >= 1");
  std::vector<BoundChain> chain;
  std::vector<BitMatrix> cur = seeds;
  for (int r = 0; r < rounds; ++r) {
    BoundRun run = heuristic_round(cur, opts);
    chain.push_back(BoundChain{run.order, run.first0, cur.size()});
    if (run.promising.empty()) break;  // nothing left to extend
    cur = std::move(run.promising);
  }
  return chain;
}

std::vector<Witness> collect_witnesses(const std::vector<BitMatrix>& seeds,
                                       std::int64_t limit) {
  if (limit < 1) throw ConfigError("collect_witnesses: limit must be >= 1");
  std::vector<Witness> out(static_cast<size_t>(limit));
  std::vector<bool> have(static_cast<size_t>(limit), false);
  have[0] = true;  // value 0 needs no witness
  std::int64_t missing = limit - 1;
  for (const BitMatrix& seed : seeds) {
    if (missing == 0) break;
    enumerate_extension_dets(seed, [&](const ExtensionDet& e) {
      std::int64_t a = e.det < 0 ? -e.det : e.det;
      if (a < limit && !have[static_cast<size_t>(a)]) {
        have[static_cast<size_t>(a)] = true;
        out[static_cast<size_t>(a)] = Witness{a, seed, e.x, e.y, e.b};
        --missing;
      }
    });
  }
  if (missing != 0) {
    throw Error("collect_witnesses: " + std::to_string(missing) +
                " values in [1," + std::to_string(limit) + ") uncovered");
  }
  out.erase(out.begin());  // drop the value-0 slot
  return out;
}

namespace {

std::string word_hex(std::uint64_t w) {
  static const char* digits = "0123456789ABCDEF";
  std::string s;
  do {
    s.insert(s.begin(), digits[w & 0xF]);
    w >>= 4;
  } while (w != 0);
  return s;
}

std::uint64_t parse_word_hex(const std::string& s) {
  std::uint64_t w = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'A' && c <= 'F') {
      d = c - 'A' + 10;
    } else if (c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else {
      throw ParseError("bad hex word in witness file");
    }
    w = (w << 4) | static_cast<std::uint64_t>(d);
  }
  return w;
}

}  // namespace

void write_witness_file(std::ostream& os, const std::vector<Witness>& ws) {
  os << "value\tseed\tx\ty\tb\n";
  for (const Witness& w : ws) {
    os << w.value << '\t' << format_matrix_line(w.seed) << '\t'
       << word_hex(w.x) << '\t' << word_hex(w.y) << '\t' << w.b << '\n';
  }
}

std::vector<Witness> read_witness_file(std::istream& is) {
  std::vector<Witness> out;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string value, seed, x, y, b;
    if (!std::getline(ls, value, '\t') || !std::getline(ls, seed, '\t') ||
        !std::getline(ls, x, '\t') || !std::getline(ls, y, '\t') ||
        !std::getline(ls, b, '\t')) {
      throw ParseError("bad witness line: " + line);
    }
    Witness w;
    w.value = std::stoll(value);
    w.seed = parse_matrix_line(seed);
    w.x = parse_word_hex(x);
    w.y = parse_word_hex(y);
    w.b = std::stoi(b);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::string> verify_witnesses(const std::vector<Witness>& ws,
                                          std::int64_t limit) {
  std::vector<std::string> violations;
  std::vector<bool> have(static_cast<size_t>(std::max<std::int64_t>(limit, 1)),
                         false);
  for (const Witness& w : ws) {
    Int128 d = determinant(bordered(w.seed, w.x, w.y, w.b));
    Int128 a = d < 0 ? -d : d;
    if (a != Int128(w.value)) {
      violations.push_back("witness for " + std::to_string(w.value) +
                           " has |det| = " + int128_to_string(a));
      continue;
    }
    if (w.value >= 1 && w.value < limit) have[static_cast<size_t>(w.value)] = true;
  }
  for (std::int64_t v = 1; v < limit; ++v) {
    if (!have[static_cast<size_t>(v)]) {
      violations.push_back("value " + std::to_string(v) + " has no witness");
    }
  }
  return violations;
}

}  // namespace zeroone
