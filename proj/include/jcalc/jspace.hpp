#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "jcalc/abelian.hpp"
#include "jcalc/kirby.hpp"
#include "jcalc/linking.hpp"

namespace jcalc::jspace {

/* Compact surface F in the handlebody rel boundary, together with a normal
 * framing phi of its boundary: `a` gives the class of F over the cocore
 * generators, `twists` the framing offset of phi against the surgery framing
 * on each component (one positive twist on component i subtracts a_i^2 from
 * the relative Euler number). */
struct SurfaceData {
    std::vector<Int> a;
    std::vector<Int> twists;

    void validate(long n) const; // both lengths == n
    bool operator==(const SurfaceData& rhs) const {
        return a == rhs.a && twists == rhs.twists;
    }
};

/* Residue class mod `modulus`, canonically reduced into [0, modulus);
 * modulus 0 means a plain integer (Z/0 = Z, the infinite-order case). */
struct Residue {
    Int value;
    Int modulus;

    Residue() : value(0), modulus(0) {}
    Residue(Int v, Int m);

    bool operator==(const Residue& rhs) const {
        return value == rhs.value && modulus == rhs.modulus;
    }
    std::string to_string() const; // "5 (mod 8)" / "-2"
};

/* Shared immutable context a descriptor points back to, so descriptor
 * operations need no separate presentation argument. */
struct Context {
    kirby::LinkingPresentation P;
    kirby::ManifoldInvariants inv;
    CokernelMap coker;
};
using ContextPtr = std::shared_ptr<const Context>;

ContextPtr make_context(kirby::LinkingPresentation P);

/* Homotopy class of an almost-complex structure on R x M (equivalently a
 * tangential 2-plane field on M), pinned down by the pair (gamma, theta):
 *   gamma     in H^2(M) with 2 gamma = c1,
 *   theta     in Z / 4 div(c1)  (exact integer when div(c1) = 0),
 * relative to the spin structure `spin` used to define gamma. */
struct JClassDescriptor {
    ContextPtr ctx;
    GroupElement gamma;
    GroupElement c1; // = 2 * gamma
    kirby::SpinStructureRep spin;
    Residue theta;     // mod 4 * div(c1)
    Int orbit_order;   // div(c1); 0 encodes an infinite (free) orbit

    bool operator==(const JClassDescriptor& rhs) const {
        return gamma == rhs.gamma && c1 == rhs.c1 && spin == rhs.spin &&
               theta == rhs.theta && orbit_order == rhs.orbit_order;
    }
};

/* Image of [F] in coker(L) = H^2(M): the class gamma determined by the
 * surface. */
GroupElement gamma_from_surface(const kirby::LinkingPresentation& P,
                                const SurfaceData& F);

/* Relative normal Euler number e(nu F, phi) = a^T L a - sum_i twists_i a_i^2,
 * with the surgery framing as the zero reference. */
Int euler_rel(const kirby::LinkingPresentation& P, const SurfaceData& F);

/* Full descriptor: gamma from the surface, c1 = 2 gamma,
 * theta = 4 e(nu F, phi) - 2 chi(Y) - 3 sigma(Y)  mod 4 div(c1).
 * Requires the spin structure that extends over the handlebody (even
 * diagonal, empty characteristic sublink) -- SpinMismatch otherwise; a
 * marker vector that is no spin structure at all is InvalidSpin.  The
 * congruence  theta = 2(1 + b1) - mu(M, s)  mod 4  is asserted on every
 * descriptor (CongruenceViolation = convention bug, not user error). */
JClassDescriptor theta_tilde(const ContextPtr& ctx,
                             const kirby::SpinStructureRep& s,
                             const SurfaceData& F);
JClassDescriptor theta_tilde(const kirby::LinkingPresentation& P,
                             const kirby::SpinStructureRep& s,
                             const SurfaceData& F);

/* The Z-action on classes over a fixed spin structure: the positive
 * generator lowers theta by 4; reinterpreting the reference framing raises
 * it by 4.  Acting by k on both sides simultaneously is the identity. */
JClassDescriptor act_J(const JClassDescriptor& d, const Int& k);
JClassDescriptor act_omega(const JClassDescriptor& d, const Int& k);

/* Orbit order of the framing Z-space on the class of F: 2 * div(gamma),
 * with 0 encoding Z. */
Int omega_orbit_order(const kirby::LinkingPresentation& P,
                      const SurfaceData& F);

/* All solutions x of 2x = c1 in the group: a particular solution translated
 * by the full order-<=2 subgroup, sorted by coordinates.  Throws NoSolution
 * when c1 is not twice any class. */
std::vector<GroupElement> gamma_candidates(const FinAbGroup& g,
                                           const GroupElement& c1);
std::vector<GroupElement> gamma_candidates(const kirby::LinkingPresentation& P,
                                           const GroupElement& c1);

/* Integral Bockstein of the mod-2 class of the sublink delta, computed as
 * the cokernel class of L*delta/2 (integral because delta is a difference
 * of characteristic sublinks); always an element of order <= 2. */
GroupElement bockstein(const Context& ctx, const std::vector<std::uint8_t>& delta);

/* Rebase the descriptor to another spin structure.  The caller supplies the
 * correction surface F-hat whose mod-2 class must equal the sublink
 * difference (ClassMismatch otherwise): gamma shifts by the Bockstein of the
 * difference, theta by e(nu F-hat, phi).  The mod-4 congruence against
 * mu(M, s_new) is re-asserted. */
JClassDescriptor vary_spin(const JClassDescriptor& d,
                           const kirby::SpinStructureRep& s_new,
                           const SurfaceData& correction_surface);

/* Exact rational refinement  4 a^T L^{-1} a - 2 chi(Y) - 3 sigma(Y),
 * defined when c1 has finite order and det L != 0; independent of the
 * twists and of the spin structure.  Throws InfiniteOrder / DegenerateMatrix. */
Rat theta_rational(const kirby::LinkingPresentation& P,
                   const kirby::SpinStructureRep& s,
                   const SurfaceData& F);

/* Spin-independent quotient: theta reduced mod 2 div(c1). */
Residue theta_phi(const JClassDescriptor& d);

/* gamma rebased to every spin structure of the presentation:
 * gamma_s' = gamma + bockstein(s' - s), listed in spin_structures order. */
std::vector<std::pair<kirby::SpinStructureRep, GroupElement>>
gamma_for_spins(const JClassDescriptor& d);

} // namespace jcalc::jspace
