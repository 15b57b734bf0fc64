#include "zeroone/snf.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace zeroone {

int SnfVector::rank() const {
  int r = 0;
  for (std::int64_t d : diag) {
    if (d != 0) ++r;
  }
  return r;
}

bool SnfVector::operator<(const SnfVector& other) const {
  int ra = rank(), rb = other.rank();
  if (ra != rb) return ra < rb;
  return diag < other.diag;
}

bool validate_chain(const SnfVector& v) {
  bool seen_zero = false;
  std::int64_t prev = 0;
  for (size_t i = 0; i < v.diag.size(); ++i) {
    std::int64_t d = v.diag[i];
    if (d < 0) return false;
    if (d == 0) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;  // zeros must form a suffix
    if (i > 0 && d % prev != 0) return false;
    prev = d;
  }
  return true;
}

SnfVector parse_snf(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    s = s.substr(1, s.size() - 2);
  }
  SnfVector v;
  if (s.empty()) return v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t caret = tok.find('^');
    try {
      if (caret == std::string::npos) {
        v.diag.push_back(std::stoll(tok));
      } else {
        std::int64_t base = std::stoll(tok.substr(0, caret));
        long reps = std::stol(tok.substr(caret + 1));
        if (reps < 0) throw ParseError("negative repeat in SNF vector");
        for (long r = 0; r < reps; ++r) v.diag.push_back(base);
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("bad SNF token '" + tok + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("SNF token out of range '" + tok + "'");
    }
  }
  return v;
}

std::string format_snf(const SnfVector& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.diag.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(v.diag[i]);
  }
  out.push_back(')');
  return out;
}

std::string format_snf_short(const SnfVector& v) {
  std::string out = "(";
  size_t i = 0;
  bool first = true;
  while (i < v.diag.size()) {
    size_t j = i;
    while (j < v.diag.size() && v.diag[j] == v.diag[i]) ++j;
    if (!first) out.push_back(',');
    first = false;
    out += std::to_string(v.diag[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  out.push_back(')');
  return out;
}

namespace {

// Pivot-to-corner elementary reduction.  Row operations go into P (left),
// column operations into Q (right), both kept unimodular.
struct SnfWorker {
  int n;
  IntMatrix a;
  IntMatrix p;
  IntMatrix q;
  bool track;

  SnfWorker(const IntMatrix& m, bool with_transforms)
      : n(m.order()),
        a(m),
        p(with_transforms ? IntMatrix::identity(m.order()) : IntMatrix()),
        q(with_transforms ? IntMatrix::identity(m.order()) : IntMatrix()),
        track(with_transforms) {}

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < n; ++c) std::swap(a.at(i, c), a.at(j, c));
    if (track) {
      for (int c = 0; c < n; ++c) std::swap(p.at(i, c), p.at(j, c));
    }
  }

  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < n; ++r) std::swap(a.at(r, i), a.at(r, j));
    if (track) {
      for (int r = 0; r < n; ++r) std::swap(q.at(r, i), q.at(r, j));
    }
  }

  void add_row(int dst, int src, Int128 factor) {  // row dst += factor*row src
    for (int c = 0; c < n; ++c) {
      a.at(dst, c) = checked_add(a.at(dst, c), checked_mul(factor, a.at(src, c)));
    }
    if (track) {
      for (int c = 0; c < n; ++c) {
        p.at(dst, c) =
            checked_add(p.at(dst, c), checked_mul(factor, p.at(src, c)));
      }
    }
  }

  void add_col(int dst, int src, Int128 factor) {
    for (int r = 0; r < n; ++r) {
      a.at(r, dst) = checked_add(a.at(r, dst), checked_mul(factor, a.at(r, src)));
    }
    if (track) {
      for (int r = 0; r < n; ++r) {
        q.at(r, dst) =
            checked_add(q.at(r, dst), checked_mul(factor, q.at(r, src)));
      }
    }
  }

  void negate_row(int i) {
    for (int c = 0; c < n; ++c) a.at(i, c) = -a.at(i, c);
    if (track) {
      for (int c = 0; c < n; ++c) p.at(i, c) = -p.at(i, c);
    }
  }

  // Smallest nonzero |entry| of the trailing block, or false if it is zero.
  bool find_pivot(int t, int& pi, int& pj) {
    pi = -1;
    Int128 best = 0;
    for (int i = t; i < n; ++i) {
      for (int j = t; j < n; ++j) {
        Int128 v = a.at(i, j);
        if (v == 0) continue;
        Int128 av = v < 0 ? -v : v;
        if (pi < 0 || av < best) {
          best = av;
          pi = i;
          pj = j;
        }
      }
    }
    return pi >= 0;
  }

  SnfVector run() {
    for (int t = 0; t < n; ++t) {
      int pi, pj;
      if (!find_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      for (;;) {
        bool clean = true;
        for (int i = t + 1; i < n; ++i) {
          Int128 v = a.at(i, t);
          if (v == 0) continue;
          Int128 f = v / a.at(t, t);
          if (f != 0) add_row(i, t, -f);
          if (a.at(i, t) != 0) {  // remainder: smaller pivot available
            swap_rows(t, i);
            clean = false;
          }
        }
        for (int j = t + 1; j < n; ++j) {
          Int128 v = a.at(t, j);
          if (v == 0) continue;
          Int128 f = v / a.at(t, t);
          if (f != 0) add_col(j, t, -f);
          if (a.at(t, j) != 0) {
            swap_cols(t, j);
            clean = false;
          }
        }
        if (!clean) continue;
        // pivot divides the rest of the block, or a violating entry is
        // pulled into the pivot column and the loop repeats
        bool divides = true;
        for (int i = t + 1; i < n && divides; ++i) {
          for (int j = t + 1; j < n; ++j) {
            if (a.at(i, j) % a.at(t, t) != 0) {
              add_row(t, i, 1);
              divides = false;
              break;
            }
          }
        }
        if (divides) break;
      }
      if (a.at(t, t) < 0) negate_row(t);
    }
    SnfVector v;
    v.diag.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      Int128 d = a.at(i, i);
      v.diag[static_cast<size_t>(i)] =
          static_cast<std::int64_t>(d < 0 ? -d : d);
    }
    return v;
  }
};

}  // namespace

SnfVector smith_normal_form(const IntMatrix& m) {
  SnfWorker w(m, false);
  return w.run();
}

SnfVector smith_normal_form(const BitMatrix& m) {
  return smith_normal_form(IntMatrix::from(m));
}

SnfDecomposition snf_decomposition(const IntMatrix& m) {
  SnfWorker w(m, true);
  SnfDecomposition dec;
  dec.d = w.run();
  dec.p = std::move(w.p);
  dec.q = std::move(w.q);
  return dec;
}

SnfDecomposition snf_decomposition(const BitMatrix& m) {
  return snf_decomposition(IntMatrix::from(m));
}

SnfVector snf_of_extension(const SnfDecomposition& dec, std::uint64_t x,
                           std::uint64_t y, int b) {
  int m = dec.d.order();
  if (dec.p.order() != m || dec.q.order() != m) {
    throw ConfigError("snf_of_extension: decomposition orders disagree");
  }
  if (!validate_chain(dec.d)) {
    throw ConfigError("snf_of_extension: invalid divisibility chain");
  }
  if (b != 0 && b != 1) throw ConfigError("snf_of_extension: corner not a bit");

  // a = xQ (row vector), c = Py (column vector); bit j of x/y is column/row
  // j of the base, honouring the column-to-bit mapping of BitMatrix.
  std::vector<Int128> a(static_cast<size_t>(m), 0);
  std::vector<Int128> c(static_cast<size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    if ((x >> (m - 1 - i)) & 1u) {
      for (int j = 0; j < m; ++j) {
        a[static_cast<size_t>(j)] =
            checked_add(a[static_cast<size_t>(j)], dec.q.at(i, j));
      }
    }
    if ((y >> (m - 1 - i)) & 1u) {
      for (int j = 0; j < m; ++j) {
        c[static_cast<size_t>(j)] =
            checked_add(c[static_cast<size_t>(j)], dec.p.at(j, i));
      }
    }
  }

  // Reduce a_i and c_i modulo d_i with row/column operations through the
  // pivot; each quotient also shifts the corner.  For d_i = 1 this clears
  // the entry completely, so the leading ones vanish from the border.
  int base_rank = dec.d.rank();
  Int128 corner = b;
  for (int i = 0; i < base_rank; ++i) {
    Int128 d = dec.d.diag[static_cast<size_t>(i)];
    Int128& ai = a[static_cast<size_t>(i)];
    Int128& ci = c[static_cast<size_t>(i)];
    Int128 q = ai / d;
    ai -= q * d;
    corner = checked_sub(corner, checked_mul(q, ci));
    q = ci / d;
    ci -= q * d;
    corner = checked_sub(corner, checked_mul(q, ai));
  }

  int k = 0;
  while (k < m && dec.d.diag[static_cast<size_t>(k)] == 1) ++k;

  int r = m - k + 1;  // residual order
  IntMatrix res(r);
  for (int i = 0; i < m - k; ++i) {
    res.at(i, i) = dec.d.diag[static_cast<size_t>(k + i)];
    res.at(i, r - 1) = c[static_cast<size_t>(k + i)];
    res.at(r - 1, i) = a[static_cast<size_t>(k + i)];
  }
  res.at(r - 1, r - 1) = corner;

  SnfVector tail = smith_normal_form(res);
  SnfVector out;
  out.diag.assign(static_cast<size_t>(k), 1);
  out.diag.insert(out.diag.end(), tail.diag.begin(), tail.diag.end());
  return out;
}

}  // namespace zeroone
