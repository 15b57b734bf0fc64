#include "zeroone/extend.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace zeroone {

BitMatrix bordered(const BitMatrix& base, std::uint64_t x, std::uint64_t y,
                   int b) {
  int m = base.order();
  BitMatrix out(m + 1);
  for (int i = 0; i < m; ++i) {
    std::uint64_t yi = (y >> (m - 1 - i)) & 1u;
    out.set_row(i, (base.row(i) << 1) | yi);
  }
  out.set_row(m, (x << 1) | static_cast<std::uint64_t>(b & 1));
  return out;
}

namespace {

// Cofactors narrowed to 64 bits after a checked conversion; the guard below
// keeps every partial sum away from the int64 edge.
struct GrayKernel {
  int m;
  std::int64_t det_base;
  std::vector<std::int64_t> cof;  // cof[i*m + j]

  explicit GrayKernel(const BitMatrix& base) : m(base.order()) {
    if (m > 40) {
      throw OverflowError("extension sweep limited to base order 40");
    }
    det_base = narrow(determinant(base));
    IntMatrix c = cofactor_matrix(base);
    cof.resize(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        cof[static_cast<size_t>(i) * m + j] = narrow(c.at(i, j));
      }
    }
  }

  static std::int64_t narrow(Int128 v) {
    if (v > Int128(INT64_MAX) / 4 || v < Int128(INT64_MIN) / 4) {
      throw OverflowError("cofactor exceeds the sweep kernel range");
    }
    return static_cast<std::int64_t>(v);
  }
};

}  // namespace

void enumerate_extension_dets(
    const BitMatrix& base, const std::function<void(const ExtensionDet&)>& f) {
  GrayKernel k(base);
  int m = k.m;
  std::uint64_t nx = std::uint64_t{1} << m;
  // det = b det(B) - sum_r y_r s[r] with s[r] = sum_c cof[r][c] x_c
  std::vector<std::int64_t> s(static_cast<size_t>(std::max(m, 1)), 0);
  std::uint64_t x = 0;
  for (std::uint64_t tx = 0;; ++tx) {
    std::int64_t val = 0;  // sum_r y_r s[r] for the current Gray y
    std::uint64_t y = 0;
    f(ExtensionDet{x, 0, 0, 0});
    f(ExtensionDet{x, 0, 1, k.det_base});
    for (std::uint64_t ty = 1; ty < nx; ++ty) {
      int j = std::countr_zero(ty);  // y bit j flips: base row m-1-j
      std::uint64_t bit = std::uint64_t{1} << j;
      y ^= bit;
      std::int64_t sr = s[static_cast<size_t>(m - 1 - j)];
      val += (y & bit) ? sr : -sr;
      f(ExtensionDet{x, y, 0, -val});
      f(ExtensionDet{x, y, 1, k.det_base - val});
    }
    if (tx + 1 == nx) break;
    int i = std::countr_zero(tx + 1);  // x bit i flips: base column m-1-i
    std::uint64_t bit = std::uint64_t{1} << i;
    x ^= bit;
    int col = m - 1 - i;
    bool added = (x & bit) != 0;
    for (int r = 0; r < m; ++r) {
      std::int64_t c = k.cof[static_cast<size_t>(r) * m + col];
      s[static_cast<size_t>(r)] += added ? c : -c;
    }
  }
}

void enumerate_extension_dets_direct(
    const BitMatrix& base, const std::function<void(const ExtensionDet&)>& f) {
  int m = base.order();
  std::uint64_t n = std::uint64_t{1} << m;
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = 0; y < n; ++y) {
      for (int b = 0; b < 2; ++b) {
        Int128 d = determinant(bordered(base, x, y, b));
        f(ExtensionDet{x, y, b, GrayKernel::narrow(d)});
      }
    }
  }
}

CoveredSet::CoveredSet(std::int64_t limit) : limit_(limit) {
  if (limit < 0) throw ConfigError("CoveredSet limit must be >= 0");
  bits_.assign(static_cast<size_t>(limit / 64 + 1), 0);
}

void CoveredSet::set(std::int64_t v) {
  if (v < 0 || v > limit_) {
    throw OverflowError("covered value outside the bitmap range");
  }
  bits_[static_cast<size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
}

bool CoveredSet::test(std::int64_t v) const {
  if (v < 0 || v > limit_) return false;
  return (bits_[static_cast<size_t>(v >> 6)] >> (v & 63)) & 1u;
}

void CoveredSet::merge(const CoveredSet& other) {
  if (other.limit_ > limit_) {
    bits_.resize(static_cast<size_t>(other.limit_ / 64 + 1), 0);
    limit_ = other.limit_;
  }
  for (size_t i = 0; i < other.bits_.size(); ++i) bits_[i] |= other.bits_[i];
}

std::int64_t CoveredSet::first_missing() const {
  for (size_t w = 0; w < bits_.size(); ++w) {
    if (bits_[w] != ~std::uint64_t{0}) {
      std::int64_t v = static_cast<std::int64_t>(w) * 64 +
                       std::countr_one(bits_[w]);
      return v;  // may be limit_+1 when the tail word is partially full
    }
  }
  return limit_ + 1;
}

std::vector<std::int64_t> CoveredSet::values() const {
  std::vector<std::int64_t> out;
  for (std::int64_t v = 0; v <= limit_; ++v) {
    if (test(v)) out.push_back(v);
  }
  return out;
}

ExtensionSpectrum extension_spectrum(const BitMatrix& base) {
  ExtensionSpectrum spec;
  spec.base = base;
  spec.covered = CoveredSet(hadamard_floor_i64(base.order() + 1));
  enumerate_extension_dets(base, [&spec](const ExtensionDet& e) {
    spec.covered.set(e.det < 0 ? -e.det : e.det);
  });
  spec.first_missing = spec.covered.first_missing();
  return spec;
}

CoveredSet extension_covered_union(const std::vector<BitMatrix>& bases,
                                   int threads) {
  if (bases.empty()) throw ConfigError("extension_covered_union: no bases");
  int order = bases.front().order();
  for (const BitMatrix& b : bases) {
    if (b.order() != order) {
      throw DimensionError("extension_covered_union: mixed base orders");
    }
  }
  std::int64_t limit = hadamard_floor_i64(order + 1);
  CoveredSet total(limit);
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    CoveredSet local(limit);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(bases.size()); ++i) {
      enumerate_extension_dets(bases[static_cast<size_t>(i)],
                               [&local](const ExtensionDet& e) {
                                 local.set(e.det < 0 ? -e.det : e.det);
                               });
    }
#pragma omp critical
    total.merge(local);
  }
  return total;
}

std::set<SnfVector> extension_snf_set(const BitMatrix& base) {
  SnfDecomposition dec = snf_decomposition(base);
  int m = base.order();
  std::uint64_t n = std::uint64_t{1} << m;
  std::set<SnfVector> out;
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = 0; y < n; ++y) {
      for (int b = 0; b < 2; ++b) {
        out.insert(snf_of_extension(dec, x, y, b));
      }
    }
  }
  return out;
}

BitMatrix fibonacci_matrix(int n) {
  if (n < 1) throw DimensionError("fibonacci_matrix: n must be >= 1");
  BitMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int d = j - i;
      if (d == -1 || d == 0 || (d > 0 && d % 2 == 0)) m.set_bit(i, j, true);
    }
  }
  return m;
}

std::int64_t fibonacci_number(int n) {
  if (n < 1) throw ConfigError("fibonacci_number: n must be >= 1");
  std::int64_t a = 1, b = 1;  // f_1, f_2
  for (int i = 3; i <= n; ++i) {
    std::int64_t c = a + b;
    a = b;
    b = c;
  }
  return n == 1 ? 1 : b;
}

}  // namespace zeroone
