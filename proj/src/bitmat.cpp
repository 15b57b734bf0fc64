#include "zeroone/bitmat.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace zeroone {

namespace {

void check_order(int order) {
  if (order < 0 || order > BitMatrix::kMaxOrder) {
    throw DimensionError("matrix order " + std::to_string(order) +
                         " out of range [0, 63]");
  }
}

std::uint64_t row_limit(int order) {
  return order == 0 ? 1 : (std::uint64_t{1} << order);
}

}  // namespace

BitMatrix::BitMatrix(int order) : order_(order) {
  check_order(order);
  rows_.assign(static_cast<size_t>(order), 0);
}

BitMatrix::BitMatrix(int order, std::vector<std::uint64_t> rows)
    : order_(order), rows_(std::move(rows)) {
  check_order(order);
  if (rows_.size() != static_cast<size_t>(order)) {
    throw DimensionError("row count does not match order");
  }
  for (std::uint64_t w : rows_) {
    if (w >= row_limit(order)) {
      throw MalformedMatrixError("row word out of range for order " +
                                 std::to_string(order));
    }
  }
}

BitMatrix BitMatrix::from_rows(int order,
                               const std::vector<std::uint64_t>& rows) {
  return BitMatrix(order, rows);
}

BitMatrix BitMatrix::from_bits(const std::vector<std::string>& rows) {
  int n = static_cast<int>(rows.size());
  BitMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const std::string& s = rows[static_cast<size_t>(i)];
    if (static_cast<int>(s.size()) != n) {
      throw DimensionError("binary row length does not match order");
    }
    std::uint64_t w = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw ParseError("bad binary digit");
      w = (w << 1) | static_cast<std::uint64_t>(c - '0');
    }
    m.set_row(i, w);
  }
  return m;
}

BitMatrix BitMatrix::identity(int order) {
  BitMatrix m(order);
  for (int i = 0; i < order; ++i) {
    m.set_row(i, std::uint64_t{1} << (order - 1 - i));
  }
  return m;
}

BitMatrix BitMatrix::ones(int order) {
  BitMatrix m(order);
  std::uint64_t full = row_limit(order) - 1;
  for (int i = 0; i < order; ++i) m.set_row(i, full);
  return m;
}

void BitMatrix::set_row(int i, std::uint64_t word) {
  if (word >= row_limit(order_)) {
    throw MalformedMatrixError("row word out of range");
  }
  rows_[static_cast<size_t>(i)] = word;
}

void BitMatrix::set_bit(int i, int j, bool value) {
  std::uint64_t mask = std::uint64_t{1} << (order_ - 1 - j);
  if (value) {
    rows_[static_cast<size_t>(i)] |= mask;
  } else {
    rows_[static_cast<size_t>(i)] &= ~mask;
  }
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(order_);
  for (int i = 0; i < order_; ++i) {
    for (int j = 0; j < order_; ++j) {
      if (bit(i, j)) t.set_bit(j, i, true);
    }
  }
  return t;
}

std::ostream& operator<<(std::ostream& os, const BitMatrix& m) {
  return os << format_matrix_line(m);
}

std::strong_ordering lex_compare(const BitMatrix& a, const BitMatrix& b) {
  if (a.order() != b.order()) {
    throw DimensionError("lex_compare: order mismatch");
  }
  return a.rows() <=> b.rows();
}

bool lex_less(const BitMatrix& a, const BitMatrix& b) {
  return lex_compare(a, b) == std::strong_ordering::less;
}

SignMatrix::SignMatrix(int order) : order_(order) {
  check_order(order);
  entries_.assign(static_cast<size_t>(order) * order, 1);
}

void SignMatrix::set(int i, int j, int value) {
  if (value != 1 && value != -1) {
    throw MalformedMatrixError("SignMatrix entries must be +-1");
  }
  entries_[static_cast<size_t>(i) * order_ + j] = static_cast<std::int8_t>(value);
}

Perm::Perm(int order) {
  check_order(order);
  images_.resize(static_cast<size_t>(order));
  inverse_.resize(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) {
    images_[static_cast<size_t>(i)] = i;
    inverse_[static_cast<size_t>(i)] = i;
  }
}

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  int n = static_cast<int>(images_.size());
  inverse_.assign(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int v = images_[static_cast<size_t>(i)];
    if (v < 0 || v >= n || inverse_[static_cast<size_t>(v)] != -1) {
      throw MalformedMatrixError("images do not form a permutation");
    }
    inverse_[static_cast<size_t>(v)] = i;
  }
}

Perm Perm::inverse() const {
  Perm p;
  p.images_ = inverse_;
  p.inverse_ = images_;
  return p;
}

Perm Perm::then(const Perm& b) const {
  if (order() != b.order()) throw DimensionError("perm order mismatch");
  std::vector<int> imgs(images_.size());
  for (int i = 0; i < order(); ++i) {
    imgs[static_cast<size_t>(i)] = b.image(image(i));
  }
  return Perm(std::move(imgs));
}

BitMatrix apply_perms(const BitMatrix& a, const Perm& p, const Perm& q) {
  int n = a.order();
  if (p.order() != n || q.order() != n) {
    throw DimensionError("apply_perms: order mismatch");
  }
  BitMatrix out(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t src = a.row(p.preimage(i));
    std::uint64_t w = 0;
    for (int j = 0; j < n; ++j) {
      w |= ((src >> (n - 1 - q.image(j))) & 1u) << (n - 1 - j);
    }
    out.set_row(i, w);
  }
  return out;
}

SignMatrix psi_embed(const BitMatrix& a) {
  int n = a.order();
  SignMatrix b(n + 1);
  for (int j = 0; j < n; ++j) b.set(0, j, -1);
  b.set(0, n, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b.set(i + 1, j, a.bit(i, j) ? 1 : -1);
    b.set(i + 1, n, 1);
  }
  return b;
}

BitMatrix xi_row(const BitMatrix& a, int i) {
  int n = a.order();
  if (i < 0 || i > n) throw DimensionError("xi_row: index out of range");
  if (i == 0) return a;
  BitMatrix out = a;
  std::uint64_t pivot = a.row(i - 1);
  for (int r = 0; r < n; ++r) {
    if (r != i - 1) out.set_row(r, a.row(r) ^ pivot);
  }
  return out;
}

BitMatrix xi_col(const BitMatrix& a, int j) {
  int n = a.order();
  if (j < 0 || j > n) throw DimensionError("xi_col: index out of range");
  if (j == 0) return a;
  return xi_row(a.transpose(), j).transpose();
}

BitMatrix from_hex(const std::vector<std::string>& rows) {
  int n = static_cast<int>(rows.size());
  check_order(n);
  BitMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const std::string& tok = rows[static_cast<size_t>(i)];
    if (tok.empty()) throw ParseError("empty hex token");
    std::uint64_t w = 0;
    for (char c : tok) {
      int digit;
      if (c >= '0' && c <= '9') {
        digit = c - '0';
      } else if (c >= 'A' && c <= 'F') {
        digit = c - 'A' + 10;
      } else if (c >= 'a' && c <= 'f') {
        digit = c - 'a' + 10;
      } else {
        throw ParseError(std::string("bad hex digit '") + c + "'");
      }
      if (w > (row_limit(BitMatrix::kMaxOrder) >> 4)) {
        throw MalformedMatrixError("hex row word too large");
      }
      w = (w << 4) | static_cast<std::uint64_t>(digit);
    }
    if (w >= row_limit(n)) {
      throw MalformedMatrixError("hex row word " + tok +
                                 " out of range for order " + std::to_string(n));
    }
    m.set_row(i, w);
  }
  return m;
}

std::vector<std::string> to_hex(const BitMatrix& m) {
  static const char* digits = "0123456789ABCDEF";
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(m.order()));
  for (int i = 0; i < m.order(); ++i) {
    std::uint64_t w = m.row(i);
    std::string s;
    do {
      s.insert(s.begin(), digits[w & 0xF]);
      w >>= 4;
    } while (w != 0);
    out.push_back(std::move(s));
  }
  return out;
}

BitMatrix parse_matrix_line(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      toks.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !toks.empty()) toks.push_back(cur);
  return from_hex(toks);
}

std::string format_matrix_line(const BitMatrix& m) {
  std::string out;
  auto hex = to_hex(m);
  for (size_t i = 0; i < hex.size(); ++i) {
    if (i) out.push_back(',');
    out += hex[i];
  }
  return out;
}

std::vector<BitMatrix> read_matrix_set(std::istream& is) {
  std::vector<BitMatrix> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(parse_matrix_line(line));
  }
  return out;
}

std::vector<BitMatrix> read_matrix_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_matrix_set(in);
}

void write_matrix_set(std::ostream& os, const std::vector<BitMatrix>& set) {
  for (const BitMatrix& m : set) os << format_matrix_line(m) << '\n';
}

void write_matrix_set_file(const std::string& path,
                           const std::vector<BitMatrix>& set) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_matrix_set(out, set);
  if (!out.flush()) throw IoError("write failed: " + path);
}

}  // namespace zeroone
