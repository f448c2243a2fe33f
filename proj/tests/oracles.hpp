#pragma once

/* Independent reference implementations used to cross-check the library.
 * These are deliberately naive (cofactor expansion, exhaustive search) so a
 * bug in the production algorithms cannot hide in a shared code path. */

#include <optional>
#include <random>
#include <vector>

#include "jcalc/abelian.hpp"
#include "jcalc/matrix.hpp"

namespace oracles {

using jcalc::Int;
using jcalc::IntMatrix;
using jcalc::IntSymMatrix;
using jcalc::Rat;

/* Determinant by cofactor expansion along the first row.  O(n!) — keep
 * n small. */
inline Int cofactor_det(const IntMatrix& a) {
    long n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a.at(0, 0);
    Int det = 0;
    for (long j = 0; j < n; ++j) {
        if (a.at(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (long r = 1; r < n; ++r) {
            long cc = 0;
            for (long c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = a.at(r, c);
            }
        }
        Int term = a.at(0, j) * cofactor_det(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

/* Evaluate a_1 - 1/(a_2 - 1/(... - 1/a_k)) exactly.  Empty input is
 * rejected by the caller; a zero tail would be a division by zero and is
 * reported as nullopt. */
inline std::optional<Rat> cf_eval(const std::vector<Int>& coeffs) {
    if (coeffs.empty()) return std::nullopt;
    Rat v(coeffs.back());
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        if (v == 0) return std::nullopt;
        v = Rat(coeffs[i]) - 1 / v;
    }
    return v;
}

/* Exhaustive factor search: is c = k * beta solvable?  Free coordinates
 * admit at most one solution (exact division); torsion coordinates are
 * enumerated.  Returns nullopt when the torsion search space exceeds the
 * cap (the caller should skip, not assume). */
inline std::optional<bool> factor_by_enumeration(const Int& k, const jcalc::GroupElement& c,
                                                 long cap = 200000) {
    const jcalc::FinAbGroup& g = c.group;
    long free_n = g.free_rank;
    if (k == 0) return c.is_zero();
    std::vector<Int> beta(c.coords.size(), 0);
    for (long i = 0; i < free_n; ++i) {
        const Int& ci = c.coords[static_cast<std::size_t>(i)];
        if (ci % k != 0) return false;
        beta[static_cast<std::size_t>(i)] = ci / k;
    }
    // Torsion part: solve k * b == c_i mod d_i coordinatewise by scanning.
    Int space = 1;
    for (const auto& d : g.torsion) space *= d;
    if (space > cap) return std::nullopt;
    for (std::size_t t = 0; t < g.torsion.size(); ++t) {
        const Int& d = g.torsion[t];
        const Int& ci = c.coords[static_cast<std::size_t>(free_n) + t];
        bool found = false;
        for (Int b = 0; b < d && !found; b = b + 1)
            found = jcalc::mod_floor(k * b - ci, d) == 0;
        if (!found) return false;
    }
    return true;
}

/* Signature of a nondegenerate symmetric matrix by Jacobi's rule: when all
 * leading principal minors are nonzero, b_minus equals the number of sign
 * changes in 1, D_1, ..., D_n.  Returns nullopt when a minor vanishes. */
inline std::optional<std::pair<long, long>> jacobi_signature(const IntSymMatrix& a) {
    long n = a.n();
    std::vector<Int> minors;
    minors.push_back(1);
    for (long k = 1; k <= n; ++k) {
        IntMatrix lead(k, k);
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) lead.at(i, j) = a.at(i, j);
        Int d = cofactor_det(lead);
        if (d == 0) return std::nullopt;
        minors.push_back(d);
    }
    long changes = 0;
    for (long k = 1; k <= n; ++k)
        if ((minors[static_cast<std::size_t>(k - 1)] > 0) !=
            (minors[static_cast<std::size_t>(k)] > 0))
            ++changes;
    return std::make_pair(n - changes, changes);
}

/* Deterministic PRNG for reproducible randomized suites. */
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline long rand_in(std::mt19937_64& g, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(g);
}

/* Random symmetric matrix with entries in [-bound, bound]; even_diag
 * forces even diagonal entries. */
inline IntSymMatrix random_sym(std::mt19937_64& g, long n, long bound, bool even_diag) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) {
        for (long j = i; j < n; ++j) {
            long v = rand_in(g, -bound, bound);
            if (i == j && even_diag && v % 2 != 0) v += (v > 0) ? -1 : 1;
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return IntSymMatrix(std::move(m));
}

} // namespace oracles
