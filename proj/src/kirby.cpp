#include "jcalc/kirby.hpp"

namespace jcalc::kirby {

bool SpinStructureRep::all_zero() const {
    for (auto b : c)
        if (b) return false;
    return true;
}

void LinkingPresentation::validate() const {
    long nn = n();
    if (!component_names.empty() && (long)component_names.size() != nn)
        fail("DimensionMismatch", "component name list length mismatch");
    for (const auto& [sub, arf] : arf_overrides) {
        if ((long)sub.size() != nn)
            fail("DimensionMismatch", "arf override sublink length mismatch");
        if (arf != 0 && arf != 1)
            fail("DimensionMismatch", "arf override must be 0 or 1");
    }
    if (hyperbolic_block) {
        long i = *hyperbolic_block;
        if (i < 0 || i + 1 >= nn)
            fail("DimensionMismatch", "hyperbolic block index out of range");
        bool ok = L.at(i, i) == 0 && L.at(i + 1, i + 1) == 0 && L.at(i, i + 1) == 1;
        for (long j = 0; j < nn && ok; ++j) {
            if (j == i || j == i + 1) continue;
            ok = L.at(i, j) == 0 && L.at(i + 1, j) == 0;
        }
        if (!ok)
            fail("DimensionMismatch",
                 "flagged hyperbolic block is not a split [[0,1],[1,0]] pair");
    }
}

Gf2Solution gf2_solve(std::vector<std::vector<std::uint8_t>> m,
                      std::vector<std::uint8_t> rhs) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : rhs.size() * 0;
    if (rows) cols = m[0].size();
    std::vector<long> pivot_col_of_row(rows, -1);
    std::vector<long> pivot_row_of_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && !m[p][c]) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        std::swap(rhs[p], rhs[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i != r && m[i][c]) {
                for (size_t j = c; j < cols; ++j) m[i][j] ^= m[r][j];
                rhs[i] ^= rhs[r];
            }
        }
        pivot_col_of_row[r] = (long)c;
        pivot_row_of_col[c] = (long)r;
        ++r;
    }
    Gf2Solution sol;
    for (size_t i = r; i < rows; ++i)
        if (rhs[i]) return sol; // inconsistent
    sol.solvable = true;
    sol.particular.assign(cols, 0);
    for (size_t i = 0; i < r; ++i) sol.particular[pivot_col_of_row[i]] = rhs[i];
    for (size_t c = 0; c < cols; ++c) {
        if (pivot_row_of_col[c] >= 0) continue;
        std::vector<std::uint8_t> v(cols, 0);
        v[c] = 1;
        for (size_t i = 0; i < r; ++i)
            if (m[i][c]) v[pivot_col_of_row[i]] = 1;
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

namespace {

std::vector<std::vector<std::uint8_t>> mod2_matrix(const IntSymMatrix& L) {
    long n = L.n();
    std::vector<std::vector<std::uint8_t>> m(n, std::vector<std::uint8_t>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m[i][j] = (std::uint8_t)mod_floor(L.at(i, j), 2).get_ui();
    return m;
}

std::vector<std::uint8_t> mod2_diag(const IntSymMatrix& L) {
    long n = L.n();
    std::vector<std::uint8_t> d(n);
    for (long i = 0; i < n; ++i) d[i] = (std::uint8_t)mod_floor(L.at(i, i), 2).get_ui();
    return d;
}

} // namespace

ManifoldInvariants invariants(const LinkingPresentation& P) {
    P.validate();
    ManifoldInvariants out;
    long n = P.n();
    out.chi_Y = 1 + n;
    SignatureInfo sig = signature(P.L);
    out.sigma_Y = sig.signature();
    out.b_plus = sig.b_plus;
    out.b_minus = sig.b_minus;
    out.nullity = sig.nullity;
    out.b1 = sig.nullity;
    out.H1 = CokernelMap(P.L).group();

    auto m = mod2_matrix(P.L);
    Gf2Solution sol = gf2_solve(m, mod2_diag(P.L));
    if (!sol.solvable)
        fail("CongruenceViolation",
             "characteristic sublink system unsolvable (diagonal outside GF(2) column space)");
    Int c = 1;
    mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), sol.kernel.size());
    out.spin_count = c;
    return out;
}

std::vector<SpinStructureRep> spin_structures(const LinkingPresentation& P) {
    P.validate();
    auto sol = gf2_solve(mod2_matrix(P.L), mod2_diag(P.L));
    if (!sol.solvable)
        fail("CongruenceViolation", "characteristic sublink system unsolvable");
    if (sol.kernel.size() > 20)
        fail("DimensionMismatch", "too many spin structures to enumerate");
    std::vector<SpinStructureRep> out;
    unsigned long count = 1ul << sol.kernel.size();
    for (unsigned long mask = 0; mask < count; ++mask) {
        SpinStructureRep s;
        s.c = sol.particular;
        for (size_t b = 0; b < sol.kernel.size(); ++b)
            if (mask & (1ul << b))
                for (size_t j = 0; j < s.c.size(); ++j) s.c[j] ^= sol.kernel[b][j];
        out.push_back(std::move(s));
    }
    return out;
}

bool is_valid_spin(const LinkingPresentation& P, const SpinStructureRep& s) {
    if ((long)s.c.size() != P.n()) return false;
    std::vector<Int> c(P.n());
    for (long i = 0; i < P.n(); ++i) {
        if (s.c[i] != 0 && s.c[i] != 1) return false;
        c[i] = s.c[i];
    }
    std::vector<Int> lc = P.L.apply(c);
    for (long i = 0; i < P.n(); ++i)
        if (mod_floor(lc[i] - P.L.at(i, i), 2) != 0) return false;
    return true;
}

Int rohlin(const LinkingPresentation& P, const SpinStructureRep& s) {
    P.validate();
    if ((long)s.c.size() != P.n())
        fail("DimensionMismatch", "marker vector length does not match component count");
    if (!is_valid_spin(P, s))
        fail("InvalidSpin", "marker vector is not a characteristic sublink");
    std::vector<Int> c(P.n());
    for (long i = 0; i < P.n(); ++i) c[i] = s.c[i];
    Int self = P.L.pair(c, c);
    int arf = 0;
    auto it = P.arf_overrides.find(s.c);
    if (it != P.arf_overrides.end()) arf = it->second;
    Int mu = Int(signature(P.L).signature()) - self + 8 * arf;
    return mod_floor(mu, 16);
}

int ks_delta(const Int& mu_a, const Int& mu_b) {
    Int d = mod_floor(mu_a - mu_b, 16);
    if (d == 0) return 0;
    if (d == 8) return 1;
    fail("NotMod8", "Rohlin difference " + d.get_str() + " is not a multiple of 8 mod 16");
}

LinkingPresentation e8_presentation() {
    LinkingPresentation p;
    p.L = e8_form(false);
    return p;
}

LinkingPresentation with_hyperbolic_appended(const LinkingPresentation& P) {
    LinkingPresentation out;
    out.L = IntSymMatrix::block_diag({P.L, hyperbolic_form()});
    out.component_names = P.component_names;
    if (!out.component_names.empty()) {
        out.component_names.push_back("H+");
        out.component_names.push_back("H-");
    }
    /* carried-over Arf data keyed on the old component set is extended by
     * zeros on the new pair */
    for (const auto& [sub, arf] : P.arf_overrides) {
        auto key = sub;
        key.push_back(0);
        key.push_back(0);
        out.arf_overrides.emplace(std::move(key), arf);
    }
    out.hyperbolic_block = P.n();
    out.validate();
    return out;
}

} // namespace jcalc::kirby
