#include "jcalc/matrix.hpp"

#include <sstream>

namespace jcalc {

Int mod_floor(const Int& a, const Int& m) {
    if (m <= 0) fail("DegenerateMatrix", "mod_floor needs a positive modulus");
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

IntMatrix::IntMatrix(long rows, long cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows < 0 || cols < 0) fail("DimensionMismatch", "negative matrix dimension");
}

IntMatrix IntMatrix::identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Int& IntMatrix::at(long i, long j) { return data_[i * cols_ + j]; }
const Int& IntMatrix::at(long i, long j) const { return data_[i * cols_ + j]; }

void IntMatrix::swap_rows(long i, long k) {
    if (i == k) return;
    for (long j = 0; j < cols_; ++j) std::swap(at(i, j), at(k, j));
}

void IntMatrix::swap_cols(long j, long k) {
    if (j == k) return;
    for (long i = 0; i < rows_; ++i) std::swap(at(i, j), at(i, k));
}

void IntMatrix::add_row(long i, long k, const Int& lambda) {
    for (long j = 0; j < cols_; ++j) at(i, j) += lambda * at(k, j);
}

void IntMatrix::add_col(long j, long k, const Int& lambda) {
    for (long i = 0; i < rows_; ++i) at(i, j) += lambda * at(i, k);
}

void IntMatrix::negate_row(long i) {
    for (long j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

void IntMatrix::negate_col(long j) {
    for (long i = 0; i < rows_; ++i) at(i, j) = -at(i, j);
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) fail("DimensionMismatch", "matrix product shape mismatch");
    IntMatrix p(rows_, rhs.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (long j = 0; j < rhs.cols_; ++j) p.at(i, j) += a * rhs.at(k, j);
        }
    return p;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

bool IntMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_) fail("DimensionMismatch", "determinant of a non-square matrix");
    long n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            long p = -1;
            for (long i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (long i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (long j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

IntSymMatrix::IntSymMatrix(IntMatrix m) : mat_(std::move(m)) {
    if (!mat_.is_symmetric()) fail("NotSymmetric", "matrix is not symmetric: " + mat_.to_string());
}

std::vector<Int> IntSymMatrix::diagonal() const {
    std::vector<Int> d(n());
    for (long i = 0; i < n(); ++i) d[i] = at(i, i);
    return d;
}

bool IntSymMatrix::even_diagonal() const {
    for (long i = 0; i < n(); ++i)
        if (mod_floor(at(i, i), 2) != 0) return false;
    return true;
}

std::vector<Int> IntSymMatrix::apply(const std::vector<Int>& x) const {
    if ((long)x.size() != n()) fail("DimensionMismatch", "vector length does not match form rank");
    std::vector<Int> y(n());
    for (long i = 0; i < n(); ++i)
        for (long j = 0; j < n(); ++j) y[i] += at(i, j) * x[j];
    return y;
}

Int IntSymMatrix::pair(const std::vector<Int>& x, const std::vector<Int>& y) const {
    std::vector<Int> ay = apply(y);
    if (x.size() != ay.size()) fail("DimensionMismatch", "vector length does not match form rank");
    Int s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * ay[i];
    return s;
}

IntSymMatrix IntSymMatrix::block_diag(const std::vector<IntSymMatrix>& blocks) {
    long total = 0;
    for (const auto& b : blocks) total += b.n();
    IntMatrix m(total, total);
    long off = 0;
    for (const auto& b : blocks) {
        for (long i = 0; i < b.n(); ++i)
            for (long j = 0; j < b.n(); ++j) m.at(off + i, off + j) = b.at(i, j);
        off += b.n();
    }
    return IntSymMatrix(std::move(m));
}

std::vector<Rat> solve_rational(const IntSymMatrix& A, const std::vector<Int>& b) {
    long n = A.n();
    if ((long)b.size() != n) fail("DimensionMismatch", "rhs length does not match form rank");
    /* Gauss-Jordan on [A | b] over Q. */
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) m[i][j] = Rat(A.at(i, j));
        m[i][n] = Rat(b[i]);
    }
    for (long col = 0; col < n; ++col) {
        long p = -1;
        for (long i = col; i < n; ++i)
            if (m[i][col] != 0) { p = i; break; }
        if (p < 0) fail("DegenerateMatrix", "singular matrix in rational solve");
        std::swap(m[col], m[p]);
        Rat inv = 1 / m[col][col];
        for (long j = col; j <= n; ++j) m[col][j] *= inv;
        for (long i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (long j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    std::vector<Rat> x(n);
    for (long i = 0; i < n; ++i) {
        x[i] = m[i][n];
        x[i].canonicalize();
    }
    return x;
}

Rat bilinear_inverse(const IntSymMatrix& A, const std::vector<Int>& x,
                     const std::vector<Int>& y) {
    std::vector<Rat> s = solve_rational(A, y); // s = A^{-1} y
    if (x.size() != s.size()) fail("DimensionMismatch", "vector length does not match form rank");
    Rat r = 0;
    for (size_t i = 0; i < x.size(); ++i) r += Rat(x[i]) * s[i];
    r.canonicalize();
    return r;
}

} // namespace jcalc
