// Test-only reference implementations, kept deliberately naive and
// independent of the production code paths they check.
#ifndef ZEROONE_TESTS_ORACLES_HPP
#define ZEROONE_TESTS_ORACLES_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "zeroone/bitmat.hpp"
#include "zeroone/exact.hpp"

namespace zeroone::oracle {

// Cofactor expansion along the first row.
inline Int128 det_expansion(const IntMatrix& m) {
  int n = m.order();
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  Int128 acc = 0;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix sub(n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        sub.at(r - 1, cc++) = m.at(r, c);
      }
    }
    Int128 term = m.at(0, j) * det_expansion(sub);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

inline Int128 det_expansion(const BitMatrix& m) {
  return det_expansion(IntMatrix::from(m));
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Perm> out;
  do {
    out.emplace_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

// Minimum of the full orbit plus the number of minimizing pairs.
struct OrbitMin {
  BitMatrix rep;
  unsigned long long pairs = 0;
};

inline OrbitMin orbit_min(const BitMatrix& a) {
  auto perms = all_perms(a.order());
  OrbitMin out;
  bool have = false;
  for (const Perm& p : perms) {
    for (const Perm& q : perms) {
      BitMatrix m = apply_perms(a, p, q);
      if (!have || lex_less(m, out.rep)) {
        out.rep = m;
        out.pairs = 1;
        have = true;
      } else if (m == out.rep) {
        ++out.pairs;
      }
    }
  }
  return out;
}

inline std::vector<BitMatrix> orbit_elements(const BitMatrix& a) {
  auto perms = all_perms(a.order());
  std::vector<BitMatrix> out;
  for (const Perm& p : perms) {
    for (const Perm& q : perms) out.push_back(apply_perms(a, p, q));
  }
  std::sort(out.begin(), out.end(),
            [](const BitMatrix& x, const BitMatrix& y) { return lex_less(x, y); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Full closure under row/column permutations and the modulo-two transforms;
// the lex-min of the closure is the phi-representative.
inline std::vector<BitMatrix> phi_orbit_closure(const BitMatrix& a) {
  auto less = [](const BitMatrix& x, const BitMatrix& y) {
    return lex_less(x, y);
  };
  std::set<BitMatrix, decltype(less)> seen(less);
  std::vector<BitMatrix> queue{a};
  seen.insert(a);
  int n = a.order();
  auto perms = all_perms(n);
  while (!queue.empty()) {
    BitMatrix cur = queue.back();
    queue.pop_back();
    std::vector<BitMatrix> next;
    for (int i = 0; i <= n; ++i) {
      next.push_back(xi_row(cur, i));
      next.push_back(xi_col(cur, i));
    }
    for (const Perm& p : perms) {
      next.push_back(apply_perms(cur, p, Perm::identity(n)));
      next.push_back(apply_perms(cur, Perm::identity(n), p));
    }
    for (BitMatrix& m : next) {
      if (seen.insert(m).second) queue.push_back(m);
    }
  }
  return std::vector<BitMatrix>(seen.begin(), seen.end());
}

inline BitMatrix random_matrix(int n, std::mt19937_64& rng) {
  BitMatrix m(n);
  std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (int i = 0; i < n; ++i) m.set_row(i, rng() & mask);
  return m;
}

inline Perm random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  return Perm(idx);
}

// gcd of all k x k minors; d_1...d_k must equal this for the SNF.
inline Int128 minor_gcd(const IntMatrix& m, int k) {
  int n = m.order();
  std::vector<int> rows(static_cast<size_t>(k)), cols(static_cast<size_t>(k));
  Int128 g = 0;
  std::vector<int> rsel(static_cast<size_t>(k));
  std::vector<bool> rmask(static_cast<size_t>(n), false);
  std::fill(rmask.begin(), rmask.begin() + k, true);
  std::vector<bool> rm = rmask;
  do {
    int ri = 0;
    for (int i = 0; i < n; ++i) {
      if (rm[static_cast<size_t>(i)]) rsel[static_cast<size_t>(ri++)] = i;
    }
    std::vector<bool> cm(static_cast<size_t>(n), false);
    std::fill(cm.begin(), cm.begin() + k, true);
    do {
      int ci = 0;
      IntMatrix sub(k);
      for (int j = 0; j < n; ++j) {
        if (!cm[static_cast<size_t>(j)]) continue;
        for (int i = 0; i < k; ++i) {
          sub.at(i, ci) = m.at(rsel[static_cast<size_t>(i)], j);
        }
        ++ci;
      }
      Int128 d = det_expansion(sub);
      if (d < 0) d = -d;
      // gcd accumulate
      while (d != 0) {
        Int128 t = g % d;
        g = d;
        d = t;
      }
    } while (std::prev_permutation(cm.begin(), cm.end()));
  } while (std::prev_permutation(rm.begin(), rm.end()));
  return g;
}

}  // namespace zeroone::oracle

#endif
