#include "forge/exactlin.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace forge {

std::string to_string(const Rational& r) {
    Rational c = r;
    BigInt num = numerator(c), den = denominator(c);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Rational> QMatrix::row(std::size_t i) const {
    std::vector<Rational> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
}

void QMatrix::set_row(std::size_t i, const std::vector<Rational>& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: size mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    QMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Rational& b = rhs(k, j);
                if (b != 0) out(i, j) += a * b;
            }
        }
    return out;
}

QMatrix QMatrix::select_cols(const std::vector<std::size_t>& cols) const {
    for (std::size_t c : cols)
        if (c >= cols_) throw std::out_of_range("select_cols: index out of range");
    QMatrix out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
    return out;
}

bool QMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Rational& r) { return r == 0; });
}

QMatrix vstack(const QMatrix& top, const QMatrix& bottom) {
    if (top.rows() == 0 && (top.cols() == bottom.cols() || top.cols() == 0)) return bottom;
    if (bottom.rows() == 0 && (bottom.cols() == top.cols() || bottom.cols() == 0)) return top;
    if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column mismatch");
    QMatrix out(top.rows() + bottom.rows(), top.cols());
    for (std::size_t i = 0; i < top.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
    return out;
}

QMatrix hstack(const QMatrix& left, const QMatrix& right) {
    if (left.rows() != right.rows()) throw std::invalid_argument("hstack: row mismatch");
    QMatrix out(left.rows(), left.cols() + right.cols());
    for (std::size_t i = 0; i < left.rows(); ++i) {
        for (std::size_t j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
        for (std::size_t j = 0; j < right.cols(); ++j) out(i, left.cols() + j) = right(i, j);
    }
    return out;
}

namespace {

using ZRow = std::vector<BigInt>;

BigInt exact_div(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divide_qr(a, b, q, r);
    if (r != 0) throw std::logic_error("fraction-free elimination: inexact division");
    return q;
}

// Clear denominators row by row and strip the content, so Bareiss runs on
// primitive integer rows.
std::vector<ZRow> integerize(const QMatrix& m) {
    std::vector<ZRow> z(m.rows(), ZRow(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational v = m(i, j);
            l = lcm(l, BigInt(denominator(v)));
        }
        BigInt g = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational v = m(i, j) * l;
            z[i][j] = numerator(v);
            g = gcd(g, z[i][j]);
        }
        if (g > 1)
            for (std::size_t j = 0; j < m.cols(); ++j) z[i][j] = exact_div(z[i][j], g);
    }
    return z;
}

struct Echelon {
    std::vector<ZRow> mat;
    std::vector<std::size_t> pivot_cols;  // pivot_cols[r] is the pivot column of row r
};

// Fraction-free forward elimination (Bareiss). Rows below each pivot are
// updated with the two-term determinant formula and divided by the previous
// pivot, which is exact over Z.
Echelon bareiss(std::vector<ZRow> z) {
    Echelon e;
    const std::size_t rows = z.size();
    const std::size_t cols = rows ? z[0].size() : 0;
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && z[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(z[p], z[r]);
        const BigInt piv = z[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const BigInt f = z[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                z[i][j] = exact_div(piv * z[i][j] - f * z[r][j], prev);
        }
        prev = piv;
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.mat = std::move(z);
    return e;
}

}  // namespace

std::size_t rank(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return bareiss(integerize(m)).pivot_cols.size();
}

QMatrix rref(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return m;
    Echelon e = bareiss(integerize(m));
    const std::size_t npiv = e.pivot_cols.size();
    QMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < npiv; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(e.mat[i][j]);
    // Jordan phase over Q: normalize pivots, clear above.
    for (std::size_t t = npiv; t-- > 0;) {
        const std::size_t c = e.pivot_cols[t];
        const Rational piv = r(t, c);
        for (std::size_t j = c; j < m.cols(); ++j) r(t, j) /= piv;
        for (std::size_t s = 0; s < t; ++s) {
            const Rational f = r(s, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < m.cols(); ++j) r(s, j) -= f * r(t, j);
        }
    }
    return r;
}

QMatrixInverse inverse(const QMatrix& m) {
    QMatrixInverse out;
    if (m.rows() != m.cols()) return out;
    const std::size_t n = m.rows();
    QMatrix aug = hstack(m, QMatrix::identity(n));
    QMatrix r = rref(aug);
    for (std::size_t i = 0; i < n; ++i)
        if (r(i, i) != 1) return out;
    out.ok = true;
    out.inv = QMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.inv(i, j) = r(i, n + j);
    return out;
}

Subspace Subspace::zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = QMatrix(0, ambient);
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = QMatrix::identity(ambient);
    return s;
}

Subspace Subspace::from_rows(const QMatrix& rows) {
    QMatrix r = rref(rows);
    std::size_t nz = 0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (r(i, j) != 0) { zero = false; break; }
        if (!zero) ++nz;
    }
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = QMatrix(nz, rows.cols());
    for (std::size_t i = 0; i < nz; ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) s.basis_(i, j) = r(i, j);
    return s;
}

bool Subspace::contains(const std::vector<Rational>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("contains: dimension mismatch");
    std::vector<Rational> w = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        std::size_t c = 0;
        while (c < ambient_ && basis_(i, c) == 0) ++c;
        if (c == ambient_) continue;
        const Rational f = w[c];  // pivot entry of the RREF basis is 1
        if (f == 0) continue;
        for (std::size_t j = c; j < ambient_; ++j) w[j] -= f * basis_(i, j);
    }
    return std::all_of(w.begin(), w.end(), [](const Rational& r) { return r == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("contains: ambient mismatch");
    for (std::size_t i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

QMatrix Subspace::constraints() const {
    return nullspace(basis_).basis();
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("intersect: ambient mismatch");
    return nullspace(vstack(constraints(), other.constraints()));
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("sum: ambient mismatch");
    return from_rows(vstack(basis_, other.basis_));
}

Subspace Subspace::project_coords(const std::vector<std::size_t>& kept) const {
    for (std::size_t c : kept)
        if (c >= ambient_) throw std::out_of_range("project_coords: index out of range");
    if (dim() == 0) return Subspace::zero(kept.size());
    return from_rows(basis_.select_cols(kept));
}

Subspace Subspace::coordinate_slice(const std::vector<std::size_t>& zeroed,
                                    const std::vector<std::size_t>& kept) const {
    QMatrix cons = constraints();
    QMatrix units(zeroed.size(), ambient_);
    for (std::size_t i = 0; i < zeroed.size(); ++i) {
        if (zeroed[i] >= ambient_) throw std::out_of_range("coordinate_slice: index out of range");
        units(i, zeroed[i]) = 1;
    }
    return nullspace(vstack(cons, units)).project_coords(kept);
}

Subspace nullspace(const QMatrix& m) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) return Subspace::full(n);
    QMatrix r = rref(m);
    std::vector<std::size_t> pivots;  // (row, col) pairs implicit by position
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < r.rows(); ++i) {
        std::size_t c = 0;
        while (c < n && r(i, c) == 0) ++c;
        if (c == n) break;
        pivots.push_back(c);
        is_pivot[c] = true;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    QMatrix rows(free_cols.size(), n);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t f = free_cols[k];
        rows(k, f) = 1;
        for (std::size_t t = 0; t < pivots.size(); ++t) rows(k, pivots[t]) = -r(t, f);
    }
    return Subspace::from_rows(rows);
}

Subspace image(const QMatrix& m) { return Subspace::from_rows(m); }

Subspace intersect(const Subspace& a, const Subspace& b) { return a.intersect(b); }

Subspace project_coords(const Subspace& s, const std::vector<std::size_t>& kept) {
    return s.project_coords(kept);
}

}  // namespace forge
