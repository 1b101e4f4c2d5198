#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace forge {

// Scalars: arbitrary-precision rationals, always stored canonically
// (positive denominator, gcd(num, den) = 1; GMP keeps the invariant).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

std::string to_string(const Rational& r);

/// Dense row-major matrix over Q.
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const Rational& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    std::vector<Rational> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<Rational>& v);

    QMatrix transpose() const;
    QMatrix operator*(const QMatrix& rhs) const;
    QMatrix select_cols(const std::vector<std::size_t>& cols) const;
    bool is_zero() const;

    bool operator==(const QMatrix&) const = default;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

QMatrix vstack(const QMatrix& top, const QMatrix& bottom);
QMatrix hstack(const QMatrix& left, const QMatrix& right);

/// Exact rank via fraction-free (Bareiss) forward elimination.
std::size_t rank(const QMatrix& m);

/// Reduced row echelon form over Q (zero rows kept in place, at the bottom).
QMatrix rref(const QMatrix& m);

/// Solve m * x = rhs for square invertible m; empty optional otherwise.
struct QMatrixInverse {
    bool ok = false;
    QMatrix inv;
};
QMatrixInverse inverse(const QMatrix& m);

/// Row-basis subspace of Q^ambient in canonical reduced-echelon form, so
/// subspace equality is entry-wise basis equality.
class Subspace {
public:
    Subspace() : ambient_(0) {}

    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);
    static Subspace from_rows(const QMatrix& rows);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const QMatrix& basis() const { return basis_; }

    bool contains(const std::vector<Rational>& v) const;
    bool contains(const Subspace& other) const;

    /// Rows spanning the annihilator of this subspace (v in S iff constraints() * v = 0).
    QMatrix constraints() const;

    Subspace intersect(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;

    /// Drop all coordinates except `kept` (strictly increasing indices), then canonicalize.
    Subspace project_coords(const std::vector<std::size_t>& kept) const;

    /// {v in S : v[i] = 0 for i in zeroed}, projected onto `kept`.
    Subspace coordinate_slice(const std::vector<std::size_t>& zeroed,
                              const std::vector<std::size_t>& kept) const;

    bool operator==(const Subspace&) const = default;

private:
    std::size_t ambient_;
    QMatrix basis_;  // RREF, no zero rows
};

Subspace nullspace(const QMatrix& m);
Subspace image(const QMatrix& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace project_coords(const Subspace& s, const std::vector<std::size_t>& kept);

}  // namespace forge
