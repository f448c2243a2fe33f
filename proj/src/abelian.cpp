#include "jcalc/abelian.hpp"

#include <sstream>

namespace jcalc {

bool FinAbGroup::has_even_torsion() const {
    for (const Int& t : torsion)
        if (mod_floor(t, 2) == 0) return true;
    return false;
}

Int FinAbGroup::torsion_exponent() const {
    return torsion.empty() ? Int(1) : torsion.back();
}

std::string FinAbGroup::to_string() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const Int& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t.get_str();
        first = false;
    }
    return os.str();
}

GroupElement::GroupElement(FinAbGroup g, std::vector<Int> c)
    : group(std::move(g)), coords(std::move(c)) {
    if ((long)coords.size() != group.coord_count())
        fail("DimensionMismatch", "group element coordinate count mismatch");
    normalize();
}

void GroupElement::normalize() {
    for (size_t i = 0; i < group.torsion.size(); ++i) {
        Int& c = coords[group.free_rank + i];
        c = mod_floor(c, group.torsion[i]);
    }
}

bool GroupElement::is_zero() const {
    for (const Int& c : coords)
        if (c != 0) return false;
    return true;
}

bool GroupElement::finite_order() const {
    for (long i = 0; i < group.free_rank; ++i)
        if (coords[i] != 0) return false;
    return true;
}

GroupElement GroupElement::operator+(const GroupElement& rhs) const {
    if (!(group == rhs.group)) fail("DimensionMismatch", "adding elements of different groups");
    std::vector<Int> c(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) c[i] = coords[i] + rhs.coords[i];
    return GroupElement(group, std::move(c));
}

GroupElement GroupElement::operator-() const {
    std::vector<Int> c(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) c[i] = -coords[i];
    return GroupElement(group, std::move(c));
}

GroupElement GroupElement::operator*(const Int& k) const {
    std::vector<Int> c(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) c[i] = k * coords[i];
    return GroupElement(group, std::move(c));
}

bool GroupElement::operator==(const GroupElement& rhs) const {
    return group == rhs.group && coords == rhs.coords;
}

GroupElement GroupElement::zero(const FinAbGroup& g) {
    return GroupElement(g, std::vector<Int>(g.coord_count()));
}

CokernelMap::CokernelMap(const IntSymMatrix& A) : n_(A.n()) {
    snf_ = smith_normal_form(A.mat());
    std::vector<Int> d = snf_.diag();
    /* Smith chain puts units first, then torsion ascending, then zeros. */
    for (long i = 0; i < n_; ++i) {
        if (d[i] == 0) free_pos_.push_back(i);
        else if (d[i] >= 2) tors_pos_.push_back(i);
    }
    group_.free_rank = (long)free_pos_.size();
    for (long p : tors_pos_) group_.torsion.push_back(d[p]);
}

GroupElement CokernelMap::project(const std::vector<Int>& x) const {
    if ((long)x.size() != n_) fail("DimensionMismatch", "projection input length mismatch");
    /* col(A) corresponds to D Z^n under y = U x. */
    std::vector<Int> y(n_);
    for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j) y[i] += snf_.U.at(i, j) * x[j];
    std::vector<Int> c;
    c.reserve(group_.coord_count());
    for (long p : free_pos_) c.push_back(y[p]);
    for (size_t k = 0; k < tors_pos_.size(); ++k)
        c.push_back(mod_floor(y[tors_pos_[k]], group_.torsion[k]));
    return GroupElement(group_, std::move(c));
}

std::vector<Int> CokernelMap::lift(const GroupElement& g) const {
    if (!(g.group == group_)) fail("DimensionMismatch", "lift of an element of a different group");
    std::vector<Int> y(n_);
    for (size_t k = 0; k < free_pos_.size(); ++k) y[free_pos_[k]] = g.coords[k];
    for (size_t k = 0; k < tors_pos_.size(); ++k)
        y[tors_pos_[k]] = g.coords[group_.free_rank + k];
    std::vector<Int> x(n_);
    for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j) x[i] += snf_.U_inv.at(i, j) * y[j];
    return x;
}

Int divisibility(const GroupElement& g) {
    Int d = 0;
    for (long i = 0; i < g.group.free_rank; ++i) d = gcd(d, g.coords[i]);
    return d;
}

FactorWitness is_factor(const Int& k, const GroupElement& c) {
    FactorWitness w;
    std::vector<Int> beta(c.coords.size());
    for (long i = 0; i < c.group.free_rank; ++i) {
        const Int& ci = c.coords[i];
        if (k == 0) {
            if (ci != 0) return w;
            beta[i] = 0;
        } else {
            Int r;
            mpz_fdiv_r(r.get_mpz_t(), ci.get_mpz_t(), k.get_mpz_t());
            if (r != 0) return w;
            beta[i] = ci / k;
        }
    }
    for (size_t t = 0; t < c.group.torsion.size(); ++t) {
        const Int& mod = c.group.torsion[t];
        const Int& ci = c.coords[c.group.free_rank + t];
        /* Solve k b = ci (mod m): solvable iff gcd(k, m) | ci. */
        Int kr = mod_floor(k, mod);
        Int g = gcd(kr, mod);
        if (g == 0) g = mod; // kr == 0
        if (mod_floor(ci, g) != 0) return w;
        Int m2 = mod / g;
        Int b;
        if (m2 == 1) {
            b = 0;
        } else {
            Int k2 = mod_floor(kr / g, m2);
            Int inv;
            if (mpz_invert(inv.get_mpz_t(), k2.get_mpz_t(), m2.get_mpz_t()) == 0)
                fail("DegenerateMatrix", "modular inverse failed unexpectedly");
            b = mod_floor((ci / g) * inv, m2);
        }
        beta[c.group.free_rank + t] = b;
    }
    w.beta = GroupElement(c.group, std::move(beta));
    w.ok = true;
    if (!(w.beta * k == c)) fail("CongruenceViolation", "factor witness failed verification");
    return w;
}

std::vector<GroupElement> order_le2_subgroup(const FinAbGroup& g) {
    std::vector<size_t> even_idx;
    for (size_t t = 0; t < g.torsion.size(); ++t)
        if (mod_floor(g.torsion[t], 2) == 0) even_idx.push_back(t);
    if (even_idx.size() > 20)
        fail("DimensionMismatch", "2-torsion subgroup too large to enumerate");
    std::vector<GroupElement> out;
    unsigned long count = 1ul << even_idx.size();
    for (unsigned long mask = 0; mask < count; ++mask) {
        std::vector<Int> c(g.coord_count());
        for (size_t b = 0; b < even_idx.size(); ++b)
            if (mask & (1ul << b))
                c[g.free_rank + even_idx[b]] = g.torsion[even_idx[b]] / 2;
        out.emplace_back(g, std::move(c));
    }
    return out;
}

} // namespace jcalc
