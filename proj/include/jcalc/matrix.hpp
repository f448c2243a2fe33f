#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "jcalc/error.hpp"

namespace jcalc {

using Int = mpz_class;
using Rat = mpq_class;

/* Remainder with floor convention: result in [0, m) for m > 0. */
Int mod_floor(const Int& a, const Int& m);

/* gcd(|a|, |b|), gcd(0, 0) = 0. */
Int gcd(const Int& a, const Int& b);

/* Dense arbitrary-precision integer matrix, row major.  Row/column operations
 * are the elementary unimodular moves used by the Smith reduction. */
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(long rows, long cols);

    static IntMatrix identity(long n);

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Int& at(long i, long j);
    const Int& at(long i, long j) const;

    void swap_rows(long i, long k);
    void swap_cols(long j, long k);
    void add_row(long i, long k, const Int& lambda); // row_i += lambda * row_k
    void add_col(long j, long k, const Int& lambda); // col_j += lambda * col_k
    void negate_row(long i);
    void negate_col(long j);

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const;

    bool is_symmetric() const;
    bool is_identity() const;

    /* Exact determinant (Bareiss fraction-free elimination); det of the
     * empty matrix is 1. */
    Int determinant() const;

    std::string to_string() const;

private:
    long rows_ = 0;
    long cols_ = 0;
    std::vector<Int> data_;
};

/* Immutable symmetric integer matrix (a bilinear form on Z^n). */
class IntSymMatrix {
public:
    IntSymMatrix() = default; // 0 x 0
    explicit IntSymMatrix(IntMatrix m);

    long n() const { return mat_.rows(); }
    const Int& at(long i, long j) const { return mat_.at(i, j); }
    const IntMatrix& mat() const { return mat_; }

    std::vector<Int> diagonal() const;
    bool even_diagonal() const;
    Int determinant() const { return mat_.determinant(); }

    std::vector<Int> apply(const std::vector<Int>& x) const;            // A x
    Int pair(const std::vector<Int>& x, const std::vector<Int>& y) const; // x^T A y

    static IntSymMatrix block_diag(const std::vector<IntSymMatrix>& blocks);

    bool operator==(const IntSymMatrix& rhs) const { return mat_ == rhs.mat_; }

private:
    IntMatrix mat_;
};

/* Exact rational solve A x = b (Gauss-Jordan over Q).
 * Throws DegenerateMatrix when A is singular. */
std::vector<Rat> solve_rational(const IntSymMatrix& A, const std::vector<Int>& b);

/* x^T A^{-1} y as an exact rational.  Throws DegenerateMatrix when det A = 0. */
Rat bilinear_inverse(const IntSymMatrix& A, const std::vector<Int>& x,
                     const std::vector<Int>& y);

} // namespace jcalc
