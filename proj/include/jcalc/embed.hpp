#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jcalc/forms.hpp"
#include "jcalc/jspace.hpp"
#include "jcalc/kirby.hpp"

namespace jcalc::embed {

/* Closed simply connected (or pairing-annotated) complex surface X as the
 * embedding target: Betti data, divisibility m = div c1(X), spin flag, and
 * optionally the attainable pairing values <c1(X), alpha> over pi_2(X) and
 * the value of c1^2(X).  When c1_squared is absent the planner derives it
 * from the closed-surface relation c1^2 = 2 chi + 3 sigma. */
struct TargetSurface {
    Int b_plus;
    Int b_minus;
    Int div_c1;
    bool spin = false;
    bool simply_connected = false;
    std::optional<std::vector<Int>> pairing_values;
    std::optional<Int> c1_squared;

    void validate() const; // b+- >= 1, div_c1 >= 0, spin => div_c1 even
    Int sigma() const { return b_plus - b_minus; }
    Int chi() const { return 2 + b_plus + b_minus; }
    Int c1_squared_effective() const {
        return c1_squared ? *c1_squared : 2 * chi() + 3 * sigma();
    }
};

/* One named check: what was required, what was found. */
struct ConditionRecord {
    std::string name;
    std::string required;
    std::string actual;
    bool pass = false;
};

enum class Verdict { Feasible, Infeasible, NotCovered };
enum class SpinRealizable { All, Some, BlockedByCaveat };

const char* verdict_name(Verdict v);
const char* spin_realizable_name(SpinRealizable s);

struct FeasibilityReport {
    Verdict verdict = Verdict::NotCovered;
    std::vector<ConditionRecord> reasons;
    SpinRealizable spin_realizable = SpinRealizable::All;
    std::optional<Int> witness_m;          // attainable pairing value that worked
    std::optional<GroupElement> witness_beta;

    bool feasible() const { return verdict == Verdict::Feasible; }
};

/* Rank bookkeeping of the construction: b2 of the base handlebody after the
 * mandatory split S^2xS^2 summand is present (appended unless already
 * flagged), plus 7.  Throws NotSpin on odd framings. */
Int n_M(const kirby::LinkingPresentation& P);

enum class CaveatVerdict { All, Blocked };

/* Blocked exactly when H1 has 2-torsion and 4 | m: then not every spin
 * structure on M can be carried by the construction. */
CaveatVerdict spin_caveat(const FinAbGroup& H1, const Int& m);

/* Immersion decision: some attainable pairing value <c1(X), alpha> must be a
 * factor of c1(J).  pairing_values is used verbatim when present; a simply
 * connected target attains exactly the multiples of div_c1.  Verdicts:
 * feasible with witness, infeasible (simply connected targets only, where
 * the condition is exact), or not-covered. */
FeasibilityReport immersion_feasible(const jspace::JClassDescriptor& d,
                                     const TargetSurface& X);

/* Embedding decision for simply connected X: div_c1 must be a factor of
 * c1(J) and b+-(X) >= n_M + 2 m^2 (or n_M + ceil(m^2 / 2) for spin X).
 * The spin caveat is reported alongside, downgraded to `some` when at least
 * one presented spin structure still carries the required factor. */
FeasibilityReport embedding_feasible(const jspace::JClassDescriptor& d,
                                     const TargetSurface& X, const Int& nM);

/* Per-spin-structure factor test: m (odd) or m/2 (even) against Gamma(J,s)
 * for every presented spin structure.  At least one entry passes whenever
 * m is a factor of c1 and the caveat is clear (asserted). */
struct SpinFactorRecord {
    kirby::SpinStructureRep spin;
    GroupElement gamma;
    Int tested;
    bool ok = false;
    std::optional<GroupElement> witness;
};
std::vector<SpinFactorRecord> factor_spin_selection(
    const jspace::JClassDescriptor& d, const Int& m,
    const std::vector<std::pair<kirby::SpinStructureRep, GroupElement>>& all_gammas);

/* Machine-checkable plan: the double of the base (with its reserved split
 * S^2xS^2 summand), j extra S^2xS^2 summands inside the base for theta
 * tuning, a surface component of class m_c (1, k) in the reserved summand
 * and one of class m_c (1, k') in its mirror copy outside the base, and (in
 * the odd-m branch) p projective-plane summands carrying coefficient mu.
 *
 * Assembled lattice coordinate order:
 *   C_1..C_n | K_1..K_n | (S_t, T_t) for t = 1..j | p_+ <+1> | p_- <-1>
 * with Gram [[L, I], [I, 0]] on the first 2n coordinates.
 *
 * c is the characteristic element 2 [F-hat] (+ mu on each projective
 * generator); every claim is recomputable from the fields above. */
struct ConstructionCertificate {
    kirby::LinkingPresentation base; // reserved block flagged
    bool spin_branch = false;
    Int m;            // divisibility target
    Int m_c;          // m, or m/2 in the spin branch
    Int j;            // theta-tuning summand count (inside the base)
    Int k;            // reserved-summand class parameter
    Int k_prime;      // mirror-summand class parameter
    Int p_plus, p_minus;
    Int mu;           // 0 in the spin branch
    std::vector<Int> witness_b; // factor witness lift, reserved coords zero
    std::vector<Int> c;         // in assembled coordinates

    Int x_b_plus, x_b_minus;    // target data the perp claim refers to
    bool x_spin = false;

    Int claimed_c_square;
    Int claimed_div;
    Int claimed_sigma_z;
    Int claimed_sigma_x;
    jspace::Residue claimed_theta;
    std::vector<Int> claimed_gamma; // coords in coker(base.L) normal form
    FormDescriptor perp;
};

/* Emit a certificate achieving theta = d.theta, div(c) = div_c1(X),
 * c^2 = c1^2(X), c characteristic, sigma(Z) = sigma(X) mod 16, and a valid
 * even complement inside Q(X).  Requires d to be presented by (P, s, F)
 * with the extendable spin structure; rebase the presentation first when
 * the required factor only exists over another spin structure.
 * Throws InfeasibleInput / NotSpin / BudgetExceeded (the last is asserted
 * unreachable). */
ConstructionCertificate construct_plan(const kirby::LinkingPresentation& P,
                                       const kirby::SpinStructureRep& s,
                                       const jspace::SurfaceData& F,
                                       const jspace::JClassDescriptor& d,
                                       const TargetSurface& X);

struct CertCheckReport {
    bool ok = false;
    std::vector<ConditionRecord> records;
};

/* Independent verifier: reassembles the lattice and the characteristic
 * element from the certificate fields and recomputes every claim.
 * Mismatches become failing records, never exceptions. */
CertCheckReport check_certificate(const ConstructionCertificate& cert);

} // namespace jcalc::embed
