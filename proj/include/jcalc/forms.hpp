#pragma once

#include <vector>

#include "jcalc/matrix.hpp"

namespace jcalc {

/* Exact inertia of a symmetric integer form (no floating point: congruence
 * diagonalization over Q). */
struct SignatureInfo {
    long b_plus = 0;
    long b_minus = 0;
    long nullity = 0;
    long signature() const { return b_plus - b_minus; }
};

SignatureInfo signature(const IntSymMatrix& A);

/* c is characteristic when c . x = x . x (mod 2) for all x; checked on the
 * standard basis. */
bool is_characteristic(const std::vector<Int>& c, const IntSymMatrix& A);

/* c^T A c - sigma(A) for characteristic c.  On unimodular forms this is
 * guaranteed to be 0 mod 8 and that is asserted; the value is returned
 * either way.  Throws NotCharacteristic. */
Int char_square_defect(const std::vector<Int>& c, const IntSymMatrix& A);

/* Stable-range descriptor of a symmetric unimodular form. */
struct FormDescriptor {
    Int b_plus = 0;
    Int b_minus = 0;
    enum class Parity { Even, Odd } parity = Parity::Odd;

    void validate() const; // b± >= 0; even parity needs signature ≡ 0 mod 8
    Int signature() const { return b_plus - b_minus; }
    Int rank() const { return b_plus + b_minus; }
    bool operator==(const FormDescriptor& rhs) const {
        return b_plus == rhs.b_plus && b_minus == rhs.b_minus && parity == rhs.parity;
    }
};

enum class SummandKind { PlusOne, MinusOne, Hyperbolic, E8Plus, E8Minus };

struct Summand {
    SummandKind kind;
    Int count;
    bool operator==(const Summand& rhs) const {
        return kind == rhs.kind && count == rhs.count;
    }
};

/* Standard-form summand list of an indefinite unimodular form:
 * odd   -> b+ <+1> + b- <-1>
 * even  -> |sigma|/8 copies of E8 (sign of sigma) + min(b+, b-) hyperbolics.
 * Throws DefiniteForm / ParityViolation. */
std::vector<Summand> classify_indefinite(const FormDescriptor& f);

/* Descriptor of the orthogonal complement of an even-compatible embedding of
 * `sub` into `target`: requires componentwise rank room and
 * sigma(target) - sigma(sub) ≡ 0 (mod 16); result parity is even.
 * Throws RankObstruction / SignatureObstruction / ParityViolation. */
FormDescriptor perp_complement(const FormDescriptor& target, const FormDescriptor& sub);

/* E8 form (Cartan matrix convention, diagonal 2); negated when positive is
 * false.  det = 1, signature = ±8, even. */
IntSymMatrix e8_form(bool positive);

/* Rank-2 hyperbolic form [[0,1],[1,0]]. */
IntSymMatrix hyperbolic_form();

} // namespace jcalc
