#pragma once

#include "jcalc/matrix.hpp"

namespace jcalc {

/* Smith normal form U * A * V = D with U, V unimodular (det ±1) and
 * D diagonal, non-negative, with the divisibility chain d1 | d2 | ... .
 * The exact inverses of U and V are tracked alongside, so cokernel lifts
 * need no extra inversion. */
struct SmithDecomposition {
    IntMatrix U, V, D;
    IntMatrix U_inv, V_inv;
    int det_u = 1;
    int det_v = 1;

    std::vector<Int> diag() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& A);

} // namespace jcalc
