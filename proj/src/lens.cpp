#include "jcalc/lens.hpp"

#include <algorithm>

namespace jcalc::lens {

namespace {

/* Nearest even integer, ties toward -infinity: 2 * ceil(x/2 - 1/2). */
Int nearest_even(const Rat& x) {
    Rat y = x / 2 - Rat(1, 2);
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return 2 * q;
}

Rat cf_eval(const std::vector<Int>& coeffs) {
    Rat x(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (it == coeffs.rbegin()) {
            x = Rat(*it);
        } else {
            if (x == 0) fail("CongruenceViolation", "zero tail in reconstruction");
            x = Rat(*it) - 1 / x;
        }
    }
    return x;
}

} // namespace

EvenCF even_cf(const Int& p, const Int& q_in) {
    if (p <= 0) fail("InvalidLensParameter", "need p > 0, got " + p.get_str());
    if (mod_floor(p, 2) != 0) fail("OddP", "p = " + p.get_str() + " is odd");
    Int q = mod_floor(q_in, p);
    if (gcd(p, q) != 1)
        fail("NotCoprime", "gcd(" + p.get_str() + ", " + q.get_str() + ") != 1");

    EvenCF cf;
    Rat x = Rat(-p) / Rat(q);
    for (;;) {
        Int a = nearest_even(x);
        cf.coeffs.push_back(a);
        Rat r = x - Rat(a);
        if (r == 0) break;
        x = Rat(-1) / r;
    }

    if (cf.coeffs.size() % 2 != 1)
        fail("CongruenceViolation", "expansion length is even");
    for (const Int& a : cf.coeffs)
        if (mod_floor(a, 2) != 0 || abs(a) < 2)
            fail("CongruenceViolation", "coefficient " + a.get_str() +
                                            " is not an even integer of size >= 2");
    Rat back = cf_eval(cf.coeffs);
    if (back != Rat(-p) / Rat(q))
        fail("CongruenceViolation", "exact reconstruction mismatch");
    return cf;
}

Int odd_index_sum(const EvenCF& cf) {
    Int s = 0;
    for (size_t i = 0; i < cf.coeffs.size(); i += 2) s += cf.coeffs[i];
    return s;
}

kirby::LinkingPresentation chain_matrix(const EvenCF& cf) {
    long n = (long)cf.coeffs.size();
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) {
        m.at(i, i) = cf.coeffs[i];
        if (i + 1 < n) m.at(i, i + 1) = m.at(i + 1, i) = 1;
    }
    kirby::LinkingPresentation P;
    P.L = IntSymMatrix(std::move(m));
    return P;
}

std::pair<Int, Int> rohlin_pair(const Int& p, const Int& q) {
    EvenCF cf = even_cf(p, q);
    kirby::LinkingPresentation chain = chain_matrix(cf);
    auto spins = kirby::spin_structures(chain);
    if (spins.size() != 2)
        fail("CongruenceViolation", "even chain must carry exactly two spin structures");
    Int mu1 = kirby::rohlin(chain, spins[0]);
    Int mu2 = kirby::rohlin(chain, spins[1]);
    if (mu2 < mu1) std::swap(mu1, mu2);
    // the two values differ by the odd-index coefficient sum (up to sign)
    Int s = odd_index_sum(cf);
    Int diff = mu2 - mu1;
    if (mod_floor(diff - s, 16) != 0 && mod_floor(diff + s, 16) != 0)
        fail("CongruenceViolation", "spin difference does not match the odd-index sum");
    return {mu1, mu2};
}

bool lens_exception(const Int& p, const Int& q) {
    if (p < 0) fail("InvalidLensParameter", "need p >= 0, got " + p.get_str());
    if (p == 0 || mod_floor(p, 2) != 0) return false;
    return mod_floor(odd_index_sum(even_cf(p, q)), 16) == 8;
}

} // namespace jcalc::lens
