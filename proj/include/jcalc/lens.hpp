#pragma once

#include <utility>
#include <vector>

#include "jcalc/kirby.hpp"
#include "jcalc/matrix.hpp"

namespace jcalc::lens {

/* Continued-fraction data for -p/q in the all-even expansion
 *   -p/q = a1 - 1/(a2 - 1/(... - 1/an)),
 * produced by rounding to the nearest even integer (ties toward -infinity,
 * unreachable for even p) and recursing on the negative reciprocal of the
 * remainder.  For even p the length is odd and every |ai| >= 2 is even. */
struct EvenCF {
    std::vector<Int> coeffs;

    bool operator==(const EvenCF& rhs) const { return coeffs == rhs.coeffs; }
};

/* Expansion of -p/q for even p > 0, gcd(p, q) = 1; q is first reduced into
 * (0, p).  Throws OddP / NotCoprime / InvalidLensParameter.  The exact
 * rational reconstruction and the parity/length guarantees are asserted on
 * every output. */
EvenCF even_cf(const Int& p, const Int& q);

/* Sum of the odd-indexed coefficients a1 + a3 + a5 + ... (1-based). */
Int odd_index_sum(const EvenCF& cf);

/* Linear chain plumbing: tridiagonal linking matrix with the coefficients on
 * the diagonal and 1 off it.  |det| = p and H1 = Z/p for the expansion of
 * -p/q. */
kirby::LinkingPresentation chain_matrix(const EvenCF& cf);

/* Rohlin invariants of the two spin structures of L(p, q) for even p,
 * evaluated on the chain presentation and returned as a sorted pair of
 * residues mod 16.  One entry is the chain signature mod 16; the two entries
 * differ by the odd-indexed coefficient sum (up to sign, asserted). */
std::pair<Int, Int> rohlin_pair(const Int& p, const Int& q);

/* True exactly when p is even and the odd-indexed coefficient sum is
 * congruent to 8 mod 16 (the case where smoothing rigidity on the lens space
 * is not guaranteed); false for all odd p and for p = 0. */
bool lens_exception(const Int& p, const Int& q);

} // namespace jcalc::lens
