#include "zeroone/count.hpp"

#include <numeric>
#include <vector>

#include "zeroone/errors.hpp"

namespace zeroone {

namespace {

// All cycle-type vectors (i_1,...,i_n) with sum r*i_r = n.
void cycle_types(int n, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(static_cast<size_t>(n) + 1, 0);
  // place parts in nonincreasing order
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      ++cur[static_cast<size_t>(p)];
      self(self, rest - p, p);
      --cur[static_cast<size_t>(p)];
    }
  };
  rec(rec, n, n);
}

// Number of n-permutations with i_r cycles of length r.
mpz_class cycle_type_count(int n, const std::vector<int>& type) {
  mpz_class c;
  mpz_fac_ui(c.get_mpz_t(), static_cast<unsigned long>(n));
  for (int r = 1; r <= n; ++r) {
    int ir = type[static_cast<size_t>(r)];
    if (ir == 0) continue;
    mpz_class rp;
    mpz_ui_pow_ui(rp.get_mpz_t(), static_cast<unsigned long>(r),
                  static_cast<unsigned long>(ir));
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(ir));
    c /= rp * f;
  }
  return c;
}

}  // namespace

BigCount pi_class_count(int n) {
  if (n < 1 || n > 30) {
    throw ConfigError("pi_class_count: n must be in [1, 30]");
  }
  std::vector<std::vector<int>> types;
  cycle_types(n, types);
  std::vector<mpz_class> weights(types.size());
  for (size_t t = 0; t < types.size(); ++t) {
    weights[t] = cycle_type_count(n, types[t]);
  }
  mpz_class total = 0;
  std::vector<long> e(static_cast<size_t>(n) + 1);
  for (size_t a = 0; a < types.size(); ++a) {
    const std::vector<int>& i = types[a];
    // e[s] = sum_r i_r gcd(r, s)
    for (int s = 1; s <= n; ++s) {
      long acc = 0;
      for (int r = 1; r <= n; ++r) {
        if (i[static_cast<size_t>(r)]) {
          acc += static_cast<long>(i[static_cast<size_t>(r)]) *
                 std::gcd(r, s);
        }
      }
      e[static_cast<size_t>(s)] = acc;
    }
    for (size_t b = 0; b < types.size(); ++b) {
      const std::vector<int>& j = types[b];
      long exp = 0;
      for (int s = 1; s <= n; ++s) {
        if (j[static_cast<size_t>(s)]) {
          exp += static_cast<long>(j[static_cast<size_t>(s)]) *
                 e[static_cast<size_t>(s)];
        }
      }
      mpz_class fixed;
      mpz_ui_pow_ui(fixed.get_mpz_t(), 2, static_cast<unsigned long>(exp));
      total += weights[a] * weights[b] * fixed;
    }
  }
  mpz_class n_fact;
  mpz_fac_ui(n_fact.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_class denom = n_fact * n_fact;
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), total.get_mpz_t(),
              denom.get_mpz_t());
  if (r != 0) throw Error("pi_class_count: Burnside sum not divisible");
  return q;
}

BigCount rank1_count(int n) {
  if (n < 1) throw ConfigError("rank1_count: n must be >= 1");
  mpz_class p2;
  mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(n));
  mpz_class t = p2 - 1;
  return t * t;
}

BigCount rank2_count(int n) {
  if (n < 1) throw ConfigError("rank2_count: n must be >= 1");
  mpz_class p2, p3, p4;
  mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(n));
  mpz_ui_pow_ui(p3.get_mpz_t(), 3, static_cast<unsigned long>(n));
  mpz_ui_pow_ui(p4.get_mpz_t(), 4, static_cast<unsigned long>(n));
  mpz_class lhs = p3 - 2 * p2 + 1;
  mpz_class rhs = 2 * p4 - 3 * p3 + 1;
  mpz_class prod = lhs * rhs;
  return prod / 2;
}

BigCount partitions_at_most(int n, int r) {
  if (n < 0 || r < 0) {
    throw ConfigError("partitions_at_most: arguments must be >= 0");
  }
  // p_n(r) = p_{n-1}(r) + p_n(r-n), p_n(0) = 1, p_0(r) = 0 for r >= 1
  std::vector<mpz_class> row(static_cast<size_t>(r) + 1, 0);
  row[0] = 1;
  for (int k = 1; k <= n; ++k) {
    for (int v = k; v <= r; ++v) {
      row[static_cast<size_t>(v)] += row[static_cast<size_t>(v - k)];
    }
  }
  return row[static_cast<size_t>(r)];
}

BigCount snf_count_upper_bound(int n, std::int64_t d) {
  if (d < 1) throw ConfigError("snf_count_upper_bound: d must be >= 1");
  BigCount out = 1;
  std::int64_t rest = d;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    int a = 0;
    while (rest % p == 0) {
      rest /= p;
      ++a;
    }
    out *= partitions_at_most(n, a);
  }
  if (rest > 1) out *= partitions_at_most(n, 1);
  return out;
}

}  // namespace zeroone
