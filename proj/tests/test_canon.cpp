#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "zeroone/canon.hpp"
#include "zeroone/count.hpp"

using namespace zeroone;

namespace {

const CanonOptions kPlain{false};  // faithful traversal, no shortcuts
const CanonOptions kFast{true};

void check_cert(const BitMatrix& a, const CanonicalCert& cert) {
  CHECK(apply_perms(a, cert.p, cert.q) == cert.rep);
}

mpz_class big(unsigned long long v) {
  return mpz_class(static_cast<unsigned long>(v));
}

}  // namespace

TEST_CASE("paper example representative") {
  BitMatrix a = BitMatrix::from_bits({"101", "110", "100"});
  BitMatrix expect = BitMatrix::from_bits({"001", "011", "101"});
  for (const CanonOptions& opts : {kPlain, kFast}) {
    CanonicalCert cert = pi_representative(a, opts);
    CHECK(cert.rep == expect);
    CHECK(cert.count == 2);  // two minimizing pairs
    check_cert(a, cert);
  }
}

TEST_CASE("zero and ones matrices") {
  for (int n = 1; n <= 5; ++n) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
    for (const CanonOptions& opts : {kPlain, kFast}) {
      CanonicalCert z = pi_representative(BitMatrix::zero(n), opts);
      CHECK(z.rep == BitMatrix::zero(n));
      CHECK(z.count == fact * fact);
      CanonicalCert j = pi_representative(BitMatrix::ones(n), opts);
      CHECK(j.rep == BitMatrix::ones(n));
      CHECK(j.count == fact * fact);
    }
  }
}

TEST_CASE("identity representative") {
  CanonicalCert cert = pi_representative(BitMatrix::identity(3), kFast);
  CHECK(cert.rep == from_hex({"1", "2", "4"}));
  auto brute = oracle::orbit_min(BitMatrix::identity(3));
  CHECK(cert.rep == brute.rep);
  CHECK(cert.count == big(brute.pairs));
}

TEST_CASE("exhaustive oracle at orders 1-3") {
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      BitMatrix a(n);
      for (int i = 0; i < n; ++i) {
        a.set_row(i, (bits >> (n * i)) & ((std::uint64_t{1} << n) - 1));
      }
      auto brute = oracle::orbit_min(a);
      for (const CanonOptions& opts : {kPlain, kFast}) {
        CanonicalCert cert = pi_representative(a, opts);
        CHECK(cert.rep == brute.rep);
        CHECK(cert.count == big(brute.pairs));
        check_cert(a, cert);
      }
      CHECK(pi_class_size(a, kFast) == big(oracle::orbit_elements(a).size()));
    }
  }
}

TEST_CASE("random oracle at orders 4-5") {
  std::mt19937_64 rng(301);
  for (int n = 4; n <= 5; ++n) {
    for (int it = 0; it < 120; ++it) {
      BitMatrix a = oracle::random_matrix(n, rng);
      auto brute = oracle::orbit_min(a);
      CanonicalCert fast = pi_representative(a, kFast);
      CanonicalCert plain = pi_representative(a, kPlain);
      CHECK(fast.rep == brute.rep);
      CHECK(plain.rep == brute.rep);
      CHECK(fast.count == big(brute.pairs));
      CHECK(plain.count == big(brute.pairs));
      check_cert(a, fast);
      CHECK(pi_class_size(a, kFast) == big(oracle::orbit_elements(a).size()));
    }
  }
}

TEST_CASE("highly symmetric matrices agree across both paths") {
  std::mt19937_64 rng(303);
  for (int n = 4; n <= 6; ++n) {
    std::vector<BitMatrix> cases{BitMatrix::identity(n), BitMatrix::zero(n),
                                 BitMatrix::ones(n)};
    BitMatrix comp = BitMatrix::ones(n);
    for (int i = 0; i < n; ++i) comp.set_bit(i, i, false);
    cases.push_back(comp);  // complement of the identity
    for (int it = 0; it < 10; ++it) {
      BitMatrix a = oracle::random_matrix(n, rng);
      a.set_row(n - 1, a.row(0));  // force duplicate rows
      cases.push_back(a);
    }
    for (const BitMatrix& a : cases) {
      CanonicalCert fast = pi_representative(a, kFast);
      CanonicalCert plain = pi_representative(a, kPlain);
      CHECK(fast.rep == plain.rep);
      CHECK(fast.count == plain.count);
      check_cert(a, fast);
    }
  }
}

TEST_CASE("representative is idempotent and orbit-invariant") {
  std::mt19937_64 rng(307);
  for (int it = 0; it < 150; ++it) {
    int n = 3 + static_cast<int>(rng() % 4);
    BitMatrix a = oracle::random_matrix(n, rng);
    CanonicalCert cert = pi_representative(a, kFast);
    CHECK(pi_representative(cert.rep, kFast).rep == cert.rep);
    Perm p = oracle::random_perm(n, rng);
    Perm q = oracle::random_perm(n, rng);
    CHECK(pi_representative(apply_perms(a, p, q), kFast).rep == cert.rep);
  }
}

TEST_CASE("transpose class size matches the worked example") {
  BitMatrix a = BitMatrix::from_bits({"101", "110", "100"});
  CHECK(pi_class_size(a.transpose(), kFast) == 18);
  CHECK(pi_class_size(a.transpose(), kPlain) == 18);
  CHECK(pi_class_size(BitMatrix::zero(4), kFast) == 1);
}

TEST_CASE("class sizes partition the cube at orders 1-4") {
  for (int n = 1; n <= 4; ++n) {
    std::uint64_t total = std::uint64_t{1} << (n * n);
    mpz_class sum = 0;
    std::uint64_t reps = 0;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      BitMatrix a(n);
      for (int i = 0; i < n; ++i) {
        a.set_row(i, (bits >> (n * i)) & ((std::uint64_t{1} << n) - 1));
      }
      if (pi_representative(a, kFast).rep == a) {
        sum += pi_class_size(a, kFast);
        ++reps;
      }
    }
    mpz_class expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), 2,
                  static_cast<unsigned long>(n) * static_cast<unsigned long>(n));
    CHECK(sum == expect);
    CHECK(pi_class_count(n) == big(reps));
  }
}

TEST_CASE("phi representative of the order-2 example") {
  BitMatrix a = BitMatrix::from_bits({"01", "11"});
  BitMatrix expect = BitMatrix::from_bits({"01", "10"});
  CHECK(phi_representative(a, kFast) == expect);
  CHECK(phi_representative(BitMatrix::zero(3), kFast) == BitMatrix::zero(3));
}

TEST_CASE("phi orbits by exhaustive closure at orders 2-3") {
  for (int n = 2; n <= 3; ++n) {
    std::uint64_t total = std::uint64_t{1} << (n * n);
    std::set<std::vector<std::uint64_t>> distinct_reps;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      BitMatrix a(n);
      for (int i = 0; i < n; ++i) {
        a.set_row(i, (bits >> (n * i)) & ((std::uint64_t{1} << n) - 1));
      }
      auto closure = oracle::phi_orbit_closure(a);
      BitMatrix rep = phi_representative(a, kFast);
      CHECK(rep == closure.front());  // closure is sorted
      distinct_reps.insert(rep.rows());

      // the pi-representatives inside the phi-class
      std::set<std::vector<std::uint64_t>> expect_pi;
      for (const BitMatrix& m : closure) {
        expect_pi.insert(pi_representative(m, kFast).rep.rows());
      }
      auto got = phi_orbit_pi_reps(a, kFast);
      REQUIRE(got.size() == expect_pi.size());
      for (const BitMatrix& m : got) {
        CHECK(expect_pi.count(m.rows()) == 1);
      }
    }
    if (n == 2) CHECK(distinct_reps.size() == 3);
    if (n == 3) CHECK(distinct_reps.size() == 12);
  }
}

TEST_CASE("order-2 phi orbits have pi-orbit counts 1, 4 and 2") {
  std::set<size_t> sizes;
  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    BitMatrix a(2);
    a.set_row(0, bits & 3);
    a.set_row(1, (bits >> 2) & 3);
    BitMatrix rep = phi_representative(a, kFast);
    if (seen.insert(rep.rows()).second) {
      sizes.insert(phi_orbit_pi_reps(a, kFast).size());
    }
  }
  CHECK(sizes == std::set<size_t>{1, 2, 4});
}

TEST_CASE("phi invariance under transforms") {
  std::mt19937_64 rng(311);
  for (int it = 0; it < 60; ++it) {
    int n = 2 + static_cast<int>(rng() % 3);
    BitMatrix a = oracle::random_matrix(n, rng);
    BitMatrix rep = phi_representative(a, kFast);
    int i = static_cast<int>(rng() % (n + 1));
    int j = static_cast<int>(rng() % (n + 1));
    BitMatrix moved = xi_col(xi_row(a, i), j);
    Perm p = oracle::random_perm(n, rng);
    Perm q = oracle::random_perm(n, rng);
    moved = apply_perms(moved, p, q);
    CHECK(phi_representative(moved, kFast) == rep);
    CHECK(phi_representative(rep, kFast) == rep);
  }
}
