#include "jcalc/jspace.hpp"

#include <algorithm>

namespace jcalc::jspace {

void SurfaceData::validate(long n) const {
    if ((long)a.size() != n || (long)twists.size() != n)
        fail("DimensionMismatch", "surface data length does not match component count");
}

Residue::Residue(Int v, Int m) : value(std::move(v)), modulus(std::move(m)) {
    if (modulus < 0) fail("DimensionMismatch", "negative modulus");
    if (modulus > 0) value = mod_floor(value, modulus);
}

std::string Residue::to_string() const {
    if (modulus == 0) return value.get_str();
    return value.get_str() + " (mod " + modulus.get_str() + ")";
}

ContextPtr make_context(kirby::LinkingPresentation P) {
    P.validate();
    auto ctx = std::make_shared<Context>();
    ctx->inv = kirby::invariants(P);
    ctx->coker = CokernelMap(P.L);
    ctx->P = std::move(P);
    return ctx;
}

GroupElement gamma_from_surface(const kirby::LinkingPresentation& P,
                                const SurfaceData& F) {
    F.validate(P.n());
    return CokernelMap(P.L).project(F.a);
}

Int euler_rel(const kirby::LinkingPresentation& P, const SurfaceData& F) {
    F.validate(P.n());
    Int e = P.L.pair(F.a, F.a);
    for (size_t i = 0; i < F.a.size(); ++i) e -= F.twists[i] * F.a[i] * F.a[i];
    return e;
}

namespace {

/* theta = 2(1 + b1) - mu  mod 4 must hold for every descriptor. */
void assert_mod4(const Int& theta, const kirby::ManifoldInvariants& inv,
                 const Int& mu) {
    Int want = 2 * (1 + Int(inv.b1)) - mu;
    if (mod_floor(theta - want, 4) != 0)
        fail("CongruenceViolation",
             "theta = " + theta.get_str() + " violates the mod-4 coset law (expected " +
                 want.get_str() + " mod 4)");
}

} // namespace

JClassDescriptor theta_tilde(const ContextPtr& ctx,
                             const kirby::SpinStructureRep& s,
                             const SurfaceData& F) {
    const auto& P = ctx->P;
    F.validate(P.n());
    if ((long)s.c.size() != P.n())
        fail("DimensionMismatch", "marker vector length does not match component count");
    if (!kirby::is_valid_spin(P, s))
        fail("InvalidSpin", "marker vector is not a characteristic sublink");
    if (!P.even() || !s.all_zero())
        fail("SpinMismatch",
             "the requested spin structure is not the restriction of the handlebody "
             "spin structure (need even framings and the empty characteristic sublink)");

    JClassDescriptor d;
    d.ctx = ctx;
    d.gamma = ctx->coker.project(F.a);
    d.c1 = d.gamma * 2;
    d.orbit_order = divisibility(d.c1);
    Int theta_int = 4 * euler_rel(P, F) - 2 * ctx->inv.chi_Y - 3 * Int(ctx->inv.sigma_Y);
    d.theta = Residue(theta_int, 4 * d.orbit_order);
    d.spin = s;
    assert_mod4(theta_int, ctx->inv, kirby::rohlin(P, s));
    return d;
}

JClassDescriptor theta_tilde(const kirby::LinkingPresentation& P,
                             const kirby::SpinStructureRep& s,
                             const SurfaceData& F) {
    return theta_tilde(make_context(P), s, F);
}

JClassDescriptor act_J(const JClassDescriptor& d, const Int& k) {
    JClassDescriptor out = d;
    out.theta = Residue(d.theta.value - 4 * k, d.theta.modulus);
    return out;
}

JClassDescriptor act_omega(const JClassDescriptor& d, const Int& k) {
    JClassDescriptor out = d;
    out.theta = Residue(d.theta.value + 4 * k, d.theta.modulus);
    return out;
}

Int omega_orbit_order(const kirby::LinkingPresentation& P, const SurfaceData& F) {
    return 2 * divisibility(gamma_from_surface(P, F));
}

std::vector<GroupElement> gamma_candidates(const FinAbGroup& g,
                                           const GroupElement& c1) {
    if (!(c1.group == g))
        fail("DimensionMismatch", "class does not live in the given group");
    std::vector<Int> x(c1.coords.size());
    for (long i = 0; i < g.free_rank; ++i) {
        if (mod_floor(c1.coords[i], 2) != 0)
            fail("NoSolution", "free coordinate " + c1.coords[i].get_str() +
                                   " is odd; 2x = c1 has no solution");
        x[i] = c1.coords[i] / 2;
    }
    for (size_t t = 0; t < g.torsion.size(); ++t) {
        size_t i = g.free_rank + t;
        const Int& n = g.torsion[t];
        const Int& c = c1.coords[i];
        if (mod_floor(n, 2) == 0) {
            if (mod_floor(c, 2) != 0)
                fail("NoSolution", "torsion coordinate " + c.get_str() +
                                       " is odd mod " + n.get_str());
            x[i] = c / 2;
        } else {
            Int inv2;
            mpz_invert(inv2.get_mpz_t(), Int(2).get_mpz_t(), n.get_mpz_t());
            x[i] = mod_floor(inv2 * c, n);
        }
    }
    GroupElement particular(g, std::move(x));
    std::vector<GroupElement> out;
    for (const auto& h : order_le2_subgroup(g)) out.push_back(particular + h);
    std::sort(out.begin(), out.end(),
              [](const GroupElement& a, const GroupElement& b) {
                  return a.coords < b.coords;
              });
    return out;
}

std::vector<GroupElement> gamma_candidates(const kirby::LinkingPresentation& P,
                                           const GroupElement& c1) {
    return gamma_candidates(CokernelMap(P.L).group(), c1);
}

GroupElement bockstein(const Context& ctx, const std::vector<std::uint8_t>& delta) {
    long n = ctx.P.n();
    if ((long)delta.size() != n)
        fail("DimensionMismatch", "sublink difference length mismatch");
    std::vector<Int> lift(n);
    for (long i = 0; i < n; ++i) lift[i] = delta[i];
    std::vector<Int> v = ctx.P.L.apply(lift);
    for (auto& e : v) {
        if (mod_floor(e, 2) != 0)
            fail("ClassMismatch",
                 "sublink is not a difference of characteristic sublinks");
        e /= 2;
    }
    return ctx.coker.project(v);
}

JClassDescriptor vary_spin(const JClassDescriptor& d,
                           const kirby::SpinStructureRep& s_new,
                           const SurfaceData& correction_surface) {
    const auto& ctx = *d.ctx;
    const auto& P = ctx.P;
    if ((long)s_new.c.size() != P.n())
        fail("DimensionMismatch", "marker vector length does not match component count");
    if (!kirby::is_valid_spin(P, s_new))
        fail("InvalidSpin", "marker vector is not a characteristic sublink");
    correction_surface.validate(P.n());

    std::vector<std::uint8_t> delta(P.n());
    for (long i = 0; i < P.n(); ++i) delta[i] = d.spin.c[i] ^ s_new.c[i];
    for (long i = 0; i < P.n(); ++i)
        if (mod_floor(correction_surface.a[i], 2).get_ui() != delta[i])
            fail("ClassMismatch",
                 "correction surface is not mod-2 dual to the spin difference");

    JClassDescriptor out = d;
    out.spin = s_new;
    out.gamma = d.gamma + bockstein(ctx, delta);
    out.c1 = out.gamma * 2;
    if (!(out.c1 == d.c1))
        fail("CongruenceViolation", "c1 moved under an order-2 shift of gamma");
    Int shifted = d.theta.value + euler_rel(P, correction_surface);
    out.theta = Residue(shifted, d.theta.modulus);
    assert_mod4(shifted, ctx.inv, kirby::rohlin(P, s_new));
    return out;
}

Rat theta_rational(const kirby::LinkingPresentation& P,
                   const kirby::SpinStructureRep& s,
                   const SurfaceData& F) {
    JClassDescriptor d = theta_tilde(P, s, F);
    if (d.orbit_order != 0)
        fail("InfiniteOrder",
             "c1 has infinite order (divisibility " + d.orbit_order.get_str() + ")");

    std::vector<Rat> x = solve_rational(P.L, F.a); // DegenerateMatrix when det L = 0
    Rat self(0);
    for (size_t i = 0; i < F.a.size(); ++i) self += Rat(F.a[i]) * x[i];

    SignatureInfo sig = signature(P.L);
    Rat theta = 4 * self - Rat(2 * Int(1 + P.n())) - Rat(3 * Int(sig.signature()));

    /* Lift consistency: the fractional square of the surface class must agree
     * with the torsion linking square of its cokernel class. */
    LinkingForm lambda(P.L);
    if (frac_mod1(-self) != lambda.value(d.gamma, d.gamma))
        fail("CongruenceViolation",
             "linking square disagrees between the surface class and its lift");
    return theta;
}

Residue theta_phi(const JClassDescriptor& d) {
    return Residue(d.theta.value, 2 * d.orbit_order);
}

std::vector<std::pair<kirby::SpinStructureRep, GroupElement>>
gamma_for_spins(const JClassDescriptor& d) {
    const auto& ctx = *d.ctx;
    std::vector<std::pair<kirby::SpinStructureRep, GroupElement>> out;
    for (const auto& s : kirby::spin_structures(ctx.P)) {
        std::vector<std::uint8_t> delta(ctx.P.n());
        for (long i = 0; i < ctx.P.n(); ++i) delta[i] = d.spin.c[i] ^ s.c[i];
        out.emplace_back(s, d.gamma + bockstein(ctx, delta));
    }
    return out;
}

} // namespace jcalc::jspace
