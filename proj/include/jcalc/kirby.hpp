#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jcalc/abelian.hpp"
#include "jcalc/forms.hpp"
#include "jcalc/matrix.hpp"

namespace jcalc::kirby {

/* Spin structure on the presented 3-manifold, encoded as its characteristic
 * sublink: a 0/1 marker per link component with  L c = diag(L) (mod 2). */
struct SpinStructureRep {
    std::vector<std::uint8_t> c;

    bool operator==(const SpinStructureRep& rhs) const { return c == rhs.c; }
    bool operator<(const SpinStructureRep& rhs) const { return c < rhs.c; }
    bool all_zero() const;
};

/* Framed-link surgery presentation: the linking matrix L carries framings on
 * the diagonal and pairwise linking numbers off it.  Y is the associated
 * 2-handlebody (one 0-handle, one 2-handle per component), M = dY.
 *
 * arf_overrides supplies the Arf invariant of a characteristic sublink as a
 * proper link; the linking matrix alone does not determine it, and every
 * omitted sublink defaults to Arf = 0.  Callers working away from even
 * matrices with the zero sublink must supply the true values themselves.
 *
 * hyperbolic_block marks a distinguished split hyperbolic pair (components
 * i, i+1 with the block [[0,1],[1,0]] and no other linking): a reserved
 * connected summand that embedding plans may consume. */
struct LinkingPresentation {
    IntSymMatrix L;
    std::vector<std::string> component_names;          // empty or one per component
    std::map<std::vector<std::uint8_t>, int> arf_overrides;
    std::optional<long> hyperbolic_block;

    long n() const { return L.n(); }
    bool even() const { return L.even_diagonal(); }
    void validate() const;
};

struct ManifoldInvariants {
    Int chi_Y;          // 1 + n
    long sigma_Y = 0;
    long b_plus = 0, b_minus = 0, nullity = 0;
    FinAbGroup H1;      // coker(L)
    long b1 = 0;        // nullity of L
    Int spin_count;     // 2^(n - rank_2(L))
};

ManifoldInvariants invariants(const LinkingPresentation& P);

/* All characteristic sublinks, enumerated deterministically: particular
 * solution XOR binary-counted combinations of a reduced GF(2) kernel basis. */
std::vector<SpinStructureRep> spin_structures(const LinkingPresentation& P);

bool is_valid_spin(const LinkingPresentation& P, const SpinStructureRep& s);

/* Rohlin invariant of (M, s) as a residue mod 16 in [0, 16):
 *   mu = sigma(L) - c^T L c + 8 Arf(c),
 * with c the 0/1 lift of the characteristic sublink and Arf looked up in
 * arf_overrides (default 0).  Throws InvalidSpin. */
Int rohlin(const LinkingPresentation& P, const SpinStructureRep& s);

/* Kirby-Siebenmann difference bit: (mu_a - mu_b)/8 mod 2 for residues mod 16
 * that differ by a multiple of 8.  Throws NotMod8 otherwise. */
int ks_delta(const Int& mu_a, const Int& mu_b);

/* Negative-definite E8 plumbing presentation (Poincare sphere). */
LinkingPresentation e8_presentation();

/* P with one split hyperbolic pair appended and flagged as reserved. */
LinkingPresentation with_hyperbolic_appended(const LinkingPresentation& P);

/* Solutions of  M x = rhs  over GF(2): particular solution + kernel basis. */
struct Gf2Solution {
    bool solvable = false;
    std::vector<std::uint8_t> particular;
    std::vector<std::vector<std::uint8_t>> kernel;
};
Gf2Solution gf2_solve(std::vector<std::vector<std::uint8_t>> m,
                      std::vector<std::uint8_t> rhs);

} // namespace jcalc::kirby
