#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zeroone/extend.hpp"
#include "zeroone/snf.hpp"
#include "zeroone/spectra.hpp"

using namespace zeroone;

namespace {

SnfVector snf_of(std::vector<std::int64_t> d) {
  SnfVector v;
  v.diag = std::move(d);
  return v;
}

}  // namespace

TEST_CASE("chain validation") {
  CHECK(validate_chain(snf_of({1, 1, 2, 0})));
  CHECK(validate_chain(snf_of({})));
  CHECK(validate_chain(snf_of({0, 0})));
  CHECK_FALSE(validate_chain(snf_of({1, 2, 3})));
  CHECK_FALSE(validate_chain(snf_of({1, 0, 2})));
  CHECK_FALSE(validate_chain(snf_of({-1, 1})));
}

TEST_CASE("snf parsing and formatting") {
  CHECK(parse_snf("(1^3,2,0)") == snf_of({1, 1, 1, 2, 0}));
  CHECK(parse_snf("(1,1,2)") == snf_of({1, 1, 2}));
  CHECK(parse_snf("1,1,2") == snf_of({1, 1, 2}));
  CHECK(format_snf(snf_of({1, 1, 2})) == "(1,1,2)");
  CHECK(format_snf_short(snf_of({1, 1, 1, 2, 0})) == "(1^3,2,0)");
  CHECK_THROWS_AS(parse_snf("(1,x)"), ParseError);
}

TEST_CASE("known forms") {
  CHECK(smith_normal_form(from_hex({"3", "5", "6"})) == snf_of({1, 1, 2}));
  for (int n = 1; n <= 6; ++n) {
    SnfVector ones;
    ones.diag.assign(static_cast<size_t>(n), 1);
    CHECK(smith_normal_form(BitMatrix::identity(n)) == ones);
  }
  // two order-5 matrices with |det| 4 but different invariant factors
  CHECK(smith_normal_form(from_hex({"3", "C", "15", "16", "19"})) ==
        snf_of({1, 1, 1, 2, 2}));
  CHECK(smith_normal_form(from_hex({"3", "5", "9", "11", "1E"})) ==
        snf_of({1, 1, 1, 1, 4}));
  SnfVector f_expected;
  f_expected.diag = {1, 1, 1, 1, 1, 1, 1, 1, 1, 0};
  CHECK(smith_normal_form(counterexample_matrix()) == f_expected);
}

TEST_CASE("snf properties on random matrices") {
  std::mt19937_64 rng(211);
  for (int it = 0; it < 400; ++it) {
    int n = 1 + static_cast<int>(rng() % 6);
    BitMatrix a = oracle::random_matrix(n, rng);
    SnfVector v = smith_normal_form(a);
    CHECK(validate_chain(v));
    CHECK(v.rank() == rank(a));
    Int128 d = determinant(a);
    if (d < 0) d = -d;
    if (v.rank() == n) {
      Int128 prod = 1;
      for (std::int64_t e : v.diag) prod *= e;
      CHECK(prod == d);
    } else {
      CHECK(d == 0);
    }
    // invariant under permutation and transposition
    Perm p = oracle::random_perm(n, rng);
    Perm q = oracle::random_perm(n, rng);
    CHECK(smith_normal_form(apply_perms(a, p, q)) == v);
    CHECK(smith_normal_form(a.transpose()) == v);
  }
}

TEST_CASE("invariant factor products match minor gcds") {
  std::mt19937_64 rng(223);
  for (int n = 2; n <= 4; ++n) {
    for (int it = 0; it < 40; ++it) {
      BitMatrix a = oracle::random_matrix(n, rng);
      SnfVector v = smith_normal_form(a);
      IntMatrix m = IntMatrix::from(a);
      Int128 prod = 1;
      for (int k = 1; k <= n; ++k) {
        prod = prod * v.diag[static_cast<size_t>(k - 1)];
        Int128 g = oracle::minor_gcd(m, k);
        CHECK(prod == g);
        if (g == 0) break;
      }
    }
  }
}

TEST_CASE("decomposition reconstructs the diagonal") {
  std::mt19937_64 rng(227);
  for (int it = 0; it < 150; ++it) {
    int n = 1 + static_cast<int>(rng() % 6);
    BitMatrix a = oracle::random_matrix(n, rng);
    SnfDecomposition dec = snf_decomposition(a);
    Int128 dp = determinant(dec.p), dq = determinant(dec.q);
    CHECK((dp == 1 || dp == -1));
    CHECK((dq == 1 || dq == -1));
    IntMatrix prod = dec.p.multiply(IntMatrix::from(a)).multiply(dec.q);
    IntMatrix expect(n);
    for (int i = 0; i < n; ++i) {
      expect.at(i, i) = dec.d.diag[static_cast<size_t>(i)];
    }
    CHECK(prod == expect);
    CHECK(dec.d == smith_normal_form(a));
  }
  SnfDecomposition id = snf_decomposition(BitMatrix::identity(4));
  CHECK(id.d == snf_of({1, 1, 1, 1}));
}

TEST_CASE("extension snf: trivial borders") {
  std::mt19937_64 rng(229);
  for (int it = 0; it < 60; ++it) {
    int n = 1 + static_cast<int>(rng() % 5);
    BitMatrix b = oracle::random_matrix(n, rng);
    SnfDecomposition dec = snf_decomposition(b);
    // zero row and column: diagonal plus a trailing zero
    SnfVector padded = dec.d;
    padded.diag.push_back(0);
    std::sort(padded.diag.begin(), padded.diag.end(),
              [](std::int64_t x, std::int64_t y) {
                if ((x == 0) != (y == 0)) return y == 0;
                return x < y;
              });
    CHECK(snf_of_extension(dec, 0, 0, 0) == padded);
    // corner 1 with zero row/column: block diagonal with a fresh 1
    SnfVector with_one = snf_of_extension(dec, 0, 0, 1);
    CHECK(validate_chain(with_one));
    CHECK(with_one == smith_normal_form(bordered(b, 0, 0, 1)));
  }
}

TEST_CASE("extension snf equals direct snf exhaustively at small orders") {
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      BitMatrix b(n);
      for (int i = 0; i < n; ++i) {
        b.set_row(i, (bits >> (n * i)) & ((std::uint64_t{1} << n) - 1));
      }
      SnfDecomposition dec = snf_decomposition(b);
      std::uint64_t lim = std::uint64_t{1} << n;
      for (std::uint64_t x = 0; x < lim; ++x) {
        for (std::uint64_t y = 0; y < lim; ++y) {
          for (int bb = 0; bb < 2; ++bb) {
            CHECK(snf_of_extension(dec, x, y, bb) ==
                  smith_normal_form(bordered(b, x, y, bb)));
          }
        }
      }
    }
  }
}

TEST_CASE("extension snf equals direct snf on random larger bases") {
  std::mt19937_64 rng(233);
  for (int it = 0; it < 400; ++it) {
    int n = 4 + static_cast<int>(rng() % 3);
    BitMatrix b = oracle::random_matrix(n, rng);
    SnfDecomposition dec = snf_decomposition(b);
    std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    for (int k = 0; k < 6; ++k) {
      std::uint64_t x = rng() & mask, y = rng() & mask;
      int bb = static_cast<int>(rng() & 1);
      CHECK(snf_of_extension(dec, x, y, bb) ==
            smith_normal_form(bordered(b, x, y, bb)));
    }
  }
}

TEST_CASE("extension snf rejects a broken decomposition") {
  SnfDecomposition dec = snf_decomposition(BitMatrix::identity(3));
  dec.d.diag = {1, 0, 2};
  CHECK_THROWS_AS(snf_of_extension(dec, 0, 0, 0), ConfigError);
}

TEST_CASE("record ordering is rank-major then lexicographic") {
  CHECK(snf_of({1, 1, 2, 0, 0}) < snf_of({1, 1, 1, 1, 0}));
  CHECK(snf_of({1, 1, 1, 0, 0}) < snf_of({1, 1, 2, 0, 0}));
  CHECK(snf_of({1, 1, 1, 1, 0}) < snf_of({1, 1, 1, 1, 1}));
  CHECK(snf_of({1, 1, 1, 1, 5}) < snf_of({1, 1, 1, 2, 2}));
}
