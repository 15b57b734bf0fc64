#ifndef ZEROONE_COUNT_HPP
#define ZEROONE_COUNT_HPP

#include <gmpxx.h>

#include <cstdint>

namespace zeroone {

using BigCount = mpz_class;

// Number of row/column permutation classes of order-n (0,1) matrices via the
// cycle-index double sum: (1/n!^2) sum over cycle types i, j of
// C(i) C(j) 2^(sum_{r,s} i_r j_s gcd(r,s)).
BigCount pi_class_count(int n);

// (2^n - 1)^2
BigCount rank1_count(int n);

// (3^n - 2*2^n + 1)(2*4^n - 3*3^n + 1)/2
BigCount rank2_count(int n);

// Partitions of r into at most n positive parts.
BigCount partitions_at_most(int n, int r);

// For d = prod p_i^(a_i), the bound prod partitions_at_most(n, a_i) on the
// number of distinct SNFs with |det| = d at order n.
BigCount snf_count_upper_bound(int n, std::int64_t d);

}  // namespace zeroone

#endif
