#ifndef ZEROONE_CANON_HPP
#define ZEROONE_CANON_HPP

#include <gmpxx.h>

#include <vector>

#include "zeroone/bitmat.hpp"
#include "zeroone/pi_search.hpp"

namespace zeroone {

struct CanonicalCert {
  BitMatrix rep;    // lex-smallest matrix of the row/column permutation orbit
  Perm p;
  Perm q;           // apply_perms(source, p, q) == rep
  mpz_class count;  // number of pairs (P,Q) with P*source*Q == rep
};

CanonicalCert pi_representative(const BitMatrix& a,
                                const CanonOptions& opts = CanonOptions{});

// Number of row permutations of A admitting a column permutation back to the
// representative; count divided by the column stabilizer of the rep.  This
// is the quantity p with b = n!/p in the orbit-size computation.
unsigned long long pi_minimizing_row_perms(const BitMatrix& a,
                                           const CanonOptions& opts =
                                               CanonOptions{});

// Exact size of the orbit of A under independent row/column permutations.
mpz_class pi_class_size(const BitMatrix& a,
                        const CanonOptions& opts = CanonOptions{});

// Lex-min over the pi-representatives of the (n+1)^2 matrices X_i A X_j.
BitMatrix phi_representative(const BitMatrix& a,
                             const CanonOptions& opts = CanonOptions{});

// All distinct pi-representatives inside the phi-class of A, sorted.
std::vector<BitMatrix> phi_orbit_pi_reps(const BitMatrix& a,
                                         const CanonOptions& opts =
                                             CanonOptions{});

}  // namespace zeroone

#endif
