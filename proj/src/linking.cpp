#include "jcalc/linking.hpp"

namespace jcalc {

Rat frac_mod1(const Rat& q) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    Rat r = q - Rat(fl);
    r.canonicalize();
    return r;
}

LinkingForm::LinkingForm(const IntSymMatrix& A) : a_(A), coker_(A) {
    if (A.determinant() == 0)
        fail("DegenerateMatrix", "torsion linking form needs det != 0");
}

Rat LinkingForm::value_raw(const std::vector<Int>& x, const std::vector<Int>& y) const {
    return frac_mod1(-bilinear_inverse(a_, x, y));
}

Rat LinkingForm::value(const GroupElement& x, const GroupElement& y) const {
    return value_raw(coker_.lift(x), coker_.lift(y));
}

} // namespace jcalc
