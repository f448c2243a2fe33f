#include "jcalc/forms.hpp"

namespace jcalc {

SignatureInfo signature(const IntSymMatrix& A) {
    long n = A.n();
    std::vector<std::vector<Rat>> b(n, std::vector<Rat>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) b[i][j] = Rat(A.at(i, j));

    SignatureInfo s;
    for (long k = 0; k < n; ++k) {
        if (b[k][k] == 0) {
            /* Prefer a diagonal pivot from below. */
            long p = -1;
            for (long i = k + 1; i < n; ++i)
                if (b[i][i] != 0) { p = i; break; }
            if (p >= 0) {
                std::swap(b[k], b[p]);
                for (long i = 0; i < n; ++i) std::swap(b[i][k], b[i][p]);
            } else {
                /* All diagonal entries vanish; a nonzero off-diagonal entry in
                 * row k yields a pivot via the congruence row_k += row_j. */
                long j = -1;
                for (long t = k + 1; t < n; ++t)
                    if (b[k][t] != 0) { j = t; break; }
                if (j < 0) { s.nullity += 1; continue; } // zero row
                for (long t = 0; t < n; ++t) b[k][t] += b[j][t];
                for (long t = 0; t < n; ++t) b[t][k] += b[t][j];
            }
        }
        Rat piv = b[k][k];
        if (piv > 0) s.b_plus += 1; else s.b_minus += 1;
        for (long i = k + 1; i < n; ++i) {
            if (b[i][k] == 0) continue;
            Rat f = b[i][k] / piv;
            for (long t = k; t < n; ++t) b[i][t] -= f * b[k][t];
            for (long t = k; t < n; ++t) b[t][i] -= f * b[t][k];
        }
    }
    return s;
}

bool is_characteristic(const std::vector<Int>& c, const IntSymMatrix& A) {
    std::vector<Int> ac = A.apply(c);
    for (long i = 0; i < A.n(); ++i)
        if (mod_floor(ac[i] - A.at(i, i), 2) != 0) return false;
    return true;
}

Int char_square_defect(const std::vector<Int>& c, const IntSymMatrix& A) {
    if (!is_characteristic(c, A))
        fail("NotCharacteristic", "vector is not characteristic for the form");
    Int defect = A.pair(c, c) - signature(A).signature();
    Int det = A.determinant();
    if ((det == 1 || det == -1) && mod_floor(defect, 8) != 0)
        fail("CongruenceViolation",
             "characteristic square defect not divisible by 8 on a unimodular form");
    return defect;
}

void FormDescriptor::validate() const {
    if (b_plus < 0 || b_minus < 0)
        fail("DimensionMismatch", "form descriptor with negative rank");
    if (parity == Parity::Even && mod_floor(signature(), 8) != 0)
        fail("ParityViolation", "even form descriptor needs signature ≡ 0 mod 8");
}

std::vector<Summand> classify_indefinite(const FormDescriptor& f) {
    f.validate();
    if (f.b_plus == 0 || f.b_minus == 0)
        fail("DefiniteForm", "classification requires an indefinite form");
    std::vector<Summand> out;
    if (f.parity == FormDescriptor::Parity::Odd) {
        out.push_back({SummandKind::PlusOne, f.b_plus});
        out.push_back({SummandKind::MinusOne, f.b_minus});
        return out;
    }
    Int sig = f.signature();
    Int e8 = abs(sig) / 8;
    if (e8 > 0)
        out.push_back({sig > 0 ? SummandKind::E8Plus : SummandKind::E8Minus, e8});
    Int h = f.b_plus < f.b_minus ? f.b_plus : f.b_minus;
    if (h > 0) out.push_back({SummandKind::Hyperbolic, h});
    return out;
}

FormDescriptor perp_complement(const FormDescriptor& target, const FormDescriptor& sub) {
    target.validate();
    sub.validate();
    if (target.parity != sub.parity)
        fail("ParityViolation", "perp bookkeeping needs matching parities");
    if (sub.b_plus > target.b_plus || sub.b_minus > target.b_minus)
        fail("RankObstruction", "subform exceeds the target's rank in some sign");
    Int sig_perp = target.signature() - sub.signature();
    if (mod_floor(sig_perp, 16) != 0)
        fail("SignatureObstruction",
             "complement signature " + sig_perp.get_str() + " is not divisible by 16");
    FormDescriptor out;
    out.b_plus = target.b_plus - sub.b_plus;
    out.b_minus = target.b_minus - sub.b_minus;
    out.parity = FormDescriptor::Parity::Even;
    out.validate();
    return out;
}

IntSymMatrix e8_form(bool positive) {
    /* Cartan matrix of E8: chain 1-3-4-5-6-7-8 with node 2 attached to 4
     * (1-based labels), diagonal 2, adjacent pairs -1. */
    IntMatrix m(8, 8);
    for (long i = 0; i < 8; ++i) m.at(i, i) = 2;
    auto link = [&m](long i, long j) { m.at(i, j) = -1; m.at(j, i) = -1; };
    link(0, 2);
    link(2, 3);
    link(3, 4);
    link(4, 5);
    link(5, 6);
    link(6, 7);
    link(1, 3);
    if (!positive)
        for (long i = 0; i < 8; ++i)
            for (long j = 0; j < 8; ++j) m.at(i, j) = -m.at(i, j);
    return IntSymMatrix(std::move(m));
}

IntSymMatrix hyperbolic_form() {
    IntMatrix m(2, 2);
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    return IntSymMatrix(std::move(m));
}

} // namespace jcalc
