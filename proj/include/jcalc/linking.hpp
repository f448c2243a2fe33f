#pragma once

#include "jcalc/abelian.hpp"
#include "jcalc/matrix.hpp"

namespace jcalc {

/* Torsion linking form of coker(A) for nondegenerate symmetric A:
 *   lambda(x, y) = -lift(x)^T A^{-1} lift(y)  in Q/Z,
 * reduced to the representative in [0, 1).  The sign convention (leading
 * minus) is fixed here once and reused by the rational theta refinement.
 * Throws DegenerateMatrix when det A = 0. */
class LinkingForm {
public:
    explicit LinkingForm(const IntSymMatrix& A);

    const CokernelMap& cokernel() const { return coker_; }
    const FinAbGroup& group() const { return coker_.group(); }

    Rat value(const GroupElement& x, const GroupElement& y) const;
    Rat value_raw(const std::vector<Int>& x, const std::vector<Int>& y) const;

private:
    IntSymMatrix a_;
    CokernelMap coker_;
};

/* Fractional part in [0, 1). */
Rat frac_mod1(const Rat& q);

} // namespace jcalc
