#include "zeroone/exact.hpp"

#include <algorithm>
#include <cstdlib>

namespace zeroone {

std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // -2^127 survives the negation below because unsigned math wraps.
  unsigned __int128 u =
      neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.insert(s.begin(), '-');
  return s;
}

IntMatrix::IntMatrix(int order) : order_(order) {
  if (order < 0 || order > BitMatrix::kMaxOrder) {
    throw DimensionError("IntMatrix order out of range");
  }
  entries_.assign(static_cast<size_t>(order) * order, 0);
}

IntMatrix IntMatrix::identity(int order) {
  IntMatrix m(order);
  for (int i = 0; i < order; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from(const BitMatrix& b) {
  IntMatrix m(b.order());
  for (int i = 0; i < b.order(); ++i) {
    for (int j = 0; j < b.order(); ++j) m.at(i, j) = b.bit(i, j) ? 1 : 0;
  }
  return m;
}

IntMatrix IntMatrix::from(const SignMatrix& s) {
  IntMatrix m(s.order());
  for (int i = 0; i < s.order(); ++i) {
    for (int j = 0; j < s.order(); ++j) m.at(i, j) = s.at(i, j);
  }
  return m;
}

IntMatrix IntMatrix::multiply(const IntMatrix& other) const {
  if (order_ != other.order_) throw DimensionError("multiply: order mismatch");
  IntMatrix out(order_);
  for (int i = 0; i < order_; ++i) {
    for (int k = 0; k < order_; ++k) {
      Int128 a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < order_; ++j) {
        out.at(i, j) = checked_add(out.at(i, j), checked_mul(a, other.at(k, j)));
      }
    }
  }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(order_);
  for (int i = 0; i < order_; ++i) {
    for (int j = 0; j < order_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

Int128 determinant(const IntMatrix& m) {
  int n = m.order();
  if (n == 0) return 1;
  IntMatrix w = m;
  Int128 prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i) {
        if (w.at(i, k) != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) return 0;
      for (int j = k; j < n; ++j) std::swap(w.at(k, j), w.at(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int128 t = checked_sub(checked_mul(w.at(k, k), w.at(i, j)),
                               checked_mul(w.at(i, k), w.at(k, j)));
        w.at(i, j) = t / prev;  // exact by the Bareiss identity
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  Int128 det = w.at(n - 1, n - 1);
  return sign > 0 ? det : -det;
}

Int128 determinant(const BitMatrix& m) { return determinant(IntMatrix::from(m)); }
Int128 determinant(const SignMatrix& m) { return determinant(IntMatrix::from(m)); }

int rank(const IntMatrix& m) {
  int n = m.order();
  IntMatrix w = m;
  Int128 prev = 1;
  int r = 0;
  for (int k = 0; k < n; ++k) {
    int pi = -1, pj = -1;
    for (int i = k; i < n && pi < 0; ++i) {
      for (int j = k; j < n; ++j) {
        if (w.at(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi < 0) break;
    if (pi != k) {
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(pi, j));
    }
    if (pj != k) {
      for (int i = 0; i < n; ++i) std::swap(w.at(i, k), w.at(i, pj));
    }
    ++r;
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int128 t = checked_sub(checked_mul(w.at(k, k), w.at(i, j)),
                               checked_mul(w.at(i, k), w.at(k, j)));
        w.at(i, j) = t / prev;
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  return r;
}

int rank(const BitMatrix& m) { return rank(IntMatrix::from(m)); }
int rank(const SignMatrix& m) { return rank(IntMatrix::from(m)); }

namespace {

Int128 minor_determinant(const IntMatrix& m, int skip_row, int skip_col) {
  int n = m.order();
  IntMatrix sub(n - 1);
  int si = 0;
  for (int i = 0; i < n; ++i) {
    if (i == skip_row) continue;
    int sj = 0;
    for (int j = 0; j < n; ++j) {
      if (j == skip_col) continue;
      sub.at(si, sj) = m.at(i, j);
      ++sj;
    }
    ++si;
  }
  return determinant(sub);
}

}  // namespace

IntMatrix cofactor_matrix(const IntMatrix& m) {
  int n = m.order();
  IntMatrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Int128 d = minor_determinant(m, i, j);
      c.at(i, j) = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return c;
}

IntMatrix cofactor_matrix(const BitMatrix& m) {
  return cofactor_matrix(IntMatrix::from(m));
}

IntMatrix adjugate(const IntMatrix& m) { return cofactor_matrix(m).transpose(); }
IntMatrix adjugate(const BitMatrix& m) { return adjugate(IntMatrix::from(m)); }

HadamardBound hadamard_bound(int n) {
  if (n < 1) throw DimensionError("hadamard_bound: n must be >= 1");
  HadamardBound b;
  mpz_ui_pow_ui(b.bound_sq_num.get_mpz_t(), static_cast<unsigned>(n + 1),
                static_cast<unsigned>(n + 1));
  mpz_ui_pow_ui(b.bound_sq_den.get_mpz_t(), 4, static_cast<unsigned>(n));
  // floor(sqrt(num)/2^n) = floor(isqrt(num)/2^n) since 2^n is an integer.
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), b.bound_sq_num.get_mpz_t());
  b.floor_value = root >> n;
  return b;
}

std::int64_t hadamard_floor_i64(int n) {
  HadamardBound b = hadamard_bound(n);
  if (!b.floor_value.fits_slong_p()) {
    throw OverflowError("hadamard bound does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(b.floor_value.get_si());
}

}  // namespace zeroone
