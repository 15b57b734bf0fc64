#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zeroone/count.hpp"
#include "zeroone/exact.hpp"

using namespace zeroone;

TEST_CASE("class-count formula against the published values") {
  const char* expected[] = {
      "2",
      "7",
      "36",
      "317",
      "5624",
      "251610",
      "33642660",
      "14685630688",
      "21467043671008",
      "105735224248507784",
      "1764356230257807614296",
      "100455994644460412263071692",
      "19674097197480928600253198363072",
      "13363679231028322645152300040033513414",
      "31735555932041230032311939400670284689732948",
  };
  for (int n = 1; n <= 15; ++n) {
    CHECK(pi_class_count(n) == mpz_class(expected[n - 1]));
  }
  CHECK_THROWS_AS(pi_class_count(0), ConfigError);
  CHECK_THROWS_AS(pi_class_count(31), ConfigError);
}

TEST_CASE("class count ratio column") {
  // (2^(n^2)/n!^2) / |A_n^pi| to five decimals
  const double expected[] = {1.00000, 0.57143, 0.39506, 0.35892, 0.41433,
                             0.52685, 0.65875, 0.77266, 0.85533, 0.91045,
                             0.94565, 0.96754, 0.98088, 0.98886, 0.99358};
  for (int n = 1; n <= 15; ++n) {
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2,
                  static_cast<unsigned long>(n) * static_cast<unsigned long>(n));
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
    mpq_class ratio(pow2, fact * fact * pi_class_count(n));
    ratio.canonicalize();
    double value = ratio.get_d();
    CHECK(std::abs(value - expected[n - 1]) < 5e-6);
  }
}

TEST_CASE("rank formulas against the published censuses") {
  const std::int64_t rank1[] = {1, 9, 49, 225, 961, 3969, 16129, 65025};
  const std::int64_t rank2[] = {0, 6, 288, 6750, 118800, 1807806, 25316928,
                                336954750};
  for (int n = 1; n <= 8; ++n) {
    CHECK(rank1_count(n) == mpz_class(static_cast<long>(rank1[n - 1])));
    CHECK(rank2_count(n) == mpz_class(static_cast<long>(rank2[n - 1])));
  }
}

TEST_CASE("rank formulas against exhaustive censuses") {
  for (int n = 1; n <= 4; ++n) {
    std::uint64_t total = std::uint64_t{1} << (n * n);
    long r1 = 0, r2 = 0;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      BitMatrix a(n);
      for (int i = 0; i < n; ++i) {
        a.set_row(i, (bits >> (n * i)) & ((std::uint64_t{1} << n) - 1));
      }
      int r = rank(a);
      if (r == 1) ++r1;
      if (r == 2) ++r2;
    }
    CHECK(rank1_count(n) == mpz_class(r1));
    CHECK(rank2_count(n) == mpz_class(r2));
  }
}

TEST_CASE("restricted partitions") {
  CHECK(partitions_at_most(0, 0) == 1);
  CHECK(partitions_at_most(0, 3) == 0);
  CHECK(partitions_at_most(6, 3) == 3);
  CHECK(partitions_at_most(7, 7) == 15);
  // full table for n, r <= 7
  const int table[8][8] = {
      {1, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1, 1, 1},
      {1, 1, 2, 2, 3, 3, 4, 4}, {1, 1, 2, 3, 4, 5, 7, 8},
      {1, 1, 2, 3, 5, 6, 9, 11}, {1, 1, 2, 3, 5, 7, 10, 13},
      {1, 1, 2, 3, 5, 7, 11, 14}, {1, 1, 2, 3, 5, 7, 11, 15},
  };
  for (int n = 0; n <= 7; ++n) {
    for (int r = 0; r <= 7; ++r) {
      CHECK(partitions_at_most(n, r) == table[n][r]);
    }
  }
}

TEST_CASE("partitions stabilize once n reaches r") {
  for (int r = 0; r <= 12; ++r) {
    mpz_class fixed = partitions_at_most(r, r);
    for (int n = r; n <= r + 5; ++n) {
      CHECK(partitions_at_most(n, r) == fixed);
    }
    if (r >= 1) CHECK(partitions_at_most(r - 1, r) <= fixed);
  }
}

TEST_CASE("snf count upper bound") {
  CHECK(snf_count_upper_bound(8, 36) == 4);   // p_8(2)^2
  CHECK(snf_count_upper_bound(6, 9) == 2);    // bound only; one class is empty
  CHECK(snf_count_upper_bound(6, 8) == 3);    // p_6(3)
  CHECK(snf_count_upper_bound(5, 1) == 1);
  CHECK_THROWS_AS(snf_count_upper_bound(4, 0), ConfigError);
}
