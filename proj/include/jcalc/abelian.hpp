#pragma once

#include <optional>
#include <vector>

#include "jcalc/matrix.hpp"
#include "jcalc/smith.hpp"

namespace jcalc {

/* Finitely generated abelian group in normal form:
 * Z^free_rank + Z/t1 + ... + Z/tk with t1 | t2 | ... and each ti >= 2. */
struct FinAbGroup {
    long free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const FinAbGroup& rhs) const {
        return free_rank == rhs.free_rank && torsion == rhs.torsion;
    }
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    long coord_count() const { return free_rank + (long)torsion.size(); }
    bool has_even_torsion() const;
    /* Exponent of the torsion part (1 when torsion-free). */
    Int torsion_exponent() const;
    std::string to_string() const; // e.g. "Z^2 + Z/2 + Z/4", "0"
};

/* Element in normal-form coordinates: free coordinates first, then one
 * coordinate per torsion factor, reduced into [0, ti). */
struct GroupElement {
    FinAbGroup group;
    std::vector<Int> coords;

    GroupElement() = default;
    GroupElement(FinAbGroup g, std::vector<Int> c);

    void normalize();
    bool is_zero() const;
    bool finite_order() const; // all free coordinates vanish

    GroupElement operator+(const GroupElement& rhs) const;
    GroupElement operator-() const;
    GroupElement operator*(const Int& k) const; // k-th multiple
    bool operator==(const GroupElement& rhs) const;

    static GroupElement zero(const FinAbGroup& g);
};

/* coker(A) = Z^n / col(A) for symmetric integer A, with the projection
 * Z^n -> coker(A) and an exact section (lift). */
class CokernelMap {
public:
    CokernelMap() = default;
    explicit CokernelMap(const IntSymMatrix& A);

    const FinAbGroup& group() const { return group_; }
    long ambient_rank() const { return n_; }

    GroupElement project(const std::vector<Int>& x) const;
    /* Any integer preimage: project(lift(g)) == g. */
    std::vector<Int> lift(const GroupElement& g) const;

private:
    long n_ = 0;
    FinAbGroup group_;
    SmithDecomposition snf_;
    std::vector<long> free_pos_, tors_pos_; // positions in the Smith diagonal
};

/* Largest d >= 0 with g = d*h for some h, read off the free coordinates:
 * gcd of the free part, and 0 for torsion (or zero) elements. */
Int divisibility(const GroupElement& g);

/* Decide k*beta = c and produce a witness beta when solvable. */
struct FactorWitness {
    bool ok = false;
    GroupElement beta;
};
FactorWitness is_factor(const Int& k, const GroupElement& c);

/* All elements x with 2x = 0, enumerated deterministically (binary counting
 * over the even torsion factors). */
std::vector<GroupElement> order_le2_subgroup(const FinAbGroup& g);

} // namespace jcalc
