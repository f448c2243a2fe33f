#include "jcalc/smith.hpp"

namespace jcalc {

std::vector<Int> SmithDecomposition::diag() const {
    long k = std::min(D.rows(), D.cols());
    std::vector<Int> d(k);
    for (long i = 0; i < k; ++i) d[i] = D.at(i, i);
    return d;
}

namespace {

/* Bookkeeping wrapper: every elementary operation on A is mirrored on U or V
 * and inverted on U_inv / V_inv, keeping  U * A0 * V = A  at all times. */
struct Reducer {
    IntMatrix a;
    SmithDecomposition s;

    explicit Reducer(const IntMatrix& in) : a(in) {
        s.U = IntMatrix::identity(in.rows());
        s.U_inv = IntMatrix::identity(in.rows());
        s.V = IntMatrix::identity(in.cols());
        s.V_inv = IntMatrix::identity(in.cols());
    }

    void row_swap(long i, long k) {
        if (i == k) return;
        a.swap_rows(i, k);
        s.U.swap_rows(i, k);
        s.U_inv.swap_cols(i, k);
        s.det_u = -s.det_u;
    }
    void col_swap(long j, long k) {
        if (j == k) return;
        a.swap_cols(j, k);
        s.V.swap_cols(j, k);
        s.V_inv.swap_rows(j, k);
        s.det_v = -s.det_v;
    }
    void row_add(long i, long k, const Int& lambda) { // row_i += lambda row_k
        if (lambda == 0) return;
        a.add_row(i, k, lambda);
        s.U.add_row(i, k, lambda);
        s.U_inv.add_col(k, i, -lambda);
    }
    void col_add(long j, long k, const Int& lambda) { // col_j += lambda col_k
        if (lambda == 0) return;
        a.add_col(j, k, lambda);
        s.V.add_col(j, k, lambda);
        s.V_inv.add_row(k, j, -lambda);
    }
    void row_negate(long i) {
        a.negate_row(i);
        s.U.negate_row(i);
        s.U_inv.negate_col(i);
        s.det_u = -s.det_u;
    }
};

/* Quotient with remainder of minimal absolute value (ties keep the
 * non-negative remainder): a = q*b + r, |r| <= |b|/2. */
Int balanced_quot(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    /* mpz_fdiv gives r in [0, b) for b > 0 and (b, 0] for b < 0; shift by one
     * step of b whenever that halves the remainder. */
    if (b > 0 && 2 * r > b) q += 1;
    else if (b < 0 && 2 * r < b) q += 1;
    return q;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A) {
    Reducer red(A);
    long m = A.rows(), n = A.cols();
    long t = 0;
    while (t < std::min(m, n)) {
        /* Deterministic pivot: minimal |entry| over the trailing block,
         * ties broken by (row, col). */
        long pi = -1, pj = -1;
        Int best;
        for (long i = t; i < m; ++i)
            for (long j = t; j < n; ++j) {
                const Int& v = red.a.at(i, j);
                if (v == 0) continue;
                Int av = abs(v);
                if (pi < 0 || av < best) { best = av; pi = i; pj = j; }
            }
        if (pi < 0) break; // trailing block is zero
        red.row_swap(t, pi);
        red.col_swap(t, pj);

        for (;;) {
            /* Clear column t below the pivot. */
            bool swapped = false;
            for (long i = t + 1; i < m; ++i) {
                if (red.a.at(i, t) == 0) continue;
                Int q = balanced_quot(red.a.at(i, t), red.a.at(t, t));
                red.row_add(i, t, -q);
                if (red.a.at(i, t) != 0) { // nonzero remainder: smaller pivot found
                    red.row_swap(t, i);
                    swapped = true;
                }
            }
            if (swapped) continue;
            /* Clear row t right of the pivot. */
            for (long j = t + 1; j < n; ++j) {
                if (red.a.at(t, j) == 0) continue;
                Int q = balanced_quot(red.a.at(t, j), red.a.at(t, t));
                red.col_add(j, t, -q);
                if (red.a.at(t, j) != 0) {
                    red.col_swap(t, j);
                    swapped = true;
                }
            }
            if (swapped) continue;
            /* Row and column are clear; enforce the divisibility chain. */
            bool fixed = false;
            for (long i = t + 1; i < m && !fixed; ++i)
                for (long j = t + 1; j < n && !fixed; ++j) {
                    Int r;
                    mpz_fdiv_r(r.get_mpz_t(), red.a.at(i, j).get_mpz_t(),
                               red.a.at(t, t).get_mpz_t());
                    if (r != 0) {
                        red.row_add(t, i, 1);
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        if (red.a.at(t, t) < 0) red.row_negate(t);
        ++t;
    }
    red.s.D = red.a;
    return red.s;
}

} // namespace jcalc
