#pragma once

#include "forge/polyalg.hpp"

#include <map>
#include <utility>
#include <vector>

namespace forge {

std::size_t binomial(std::size_t n, std::size_t k);

/// Exponent multi-index, compared in graded-lex order.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(Exps exps) : exps_(std::move(exps)) {}
    MultiIndex(std::size_t n, std::size_t unit_pos) : exps_(n, 0) { exps_[unit_pos] = 1; }

    static MultiIndex zero(std::size_t n) { return MultiIndex(Exps(n, 0)); }

    const Exps& exps() const { return exps_; }
    std::size_t size() const { return exps_.size(); }
    unsigned operator[](std::size_t i) const { return exps_[i]; }
    unsigned order() const { return exps_order(exps_); }

    MultiIndex plus(std::size_t dir) const;
    MultiIndex minus(std::size_t dir) const;   // requires exps_[dir] > 0
    MultiIndex operator+(const MultiIndex& rhs) const;
    Rational factorial() const;                // product of component factorials

    bool operator==(const MultiIndex&) const = default;
    bool operator<(const MultiIndex& rhs) const { return grlex_before(exps_, rhs.exps_); }

    std::string to_string() const;

private:
    Exps exps_;
};

/// All multi-indices of length n and order exactly k, in graded-lex order.
std::vector<MultiIndex> multiindices(unsigned n, unsigned k);

/// All multi-indices of length n and order <= k, degree-ascending.
std::vector<MultiIndex> multiindices_upto(unsigned n, unsigned k);

/// dim S^k of an n-dimensional space: C(n+k-1, k).
std::size_t sym_dim(unsigned n, unsigned k);

/// Coordinate chart of the k-jet space of sections of an (n, m) fibration.
/// Jet coordinates (lambda, alpha), |alpha| <= k, are enumerated with alpha in
/// graded-lex order and lambda varying fastest, so the top-order block sits at
/// the end.
class JetSpec {
public:
    JetSpec(unsigned n, unsigned m, unsigned k,
            std::string base_prefix = "x", std::string fibre_prefix = "y");

    unsigned n() const { return n_; }
    unsigned m() const { return m_; }
    unsigned k() const { return k_; }

    const std::vector<std::pair<unsigned, MultiIndex>>& coords() const { return coords_; }
    std::size_t num_coords() const { return coords_.size(); }  // m * C(n+k, k)
    std::size_t coord_index(unsigned lambda, const MultiIndex& alpha) const;

    /// Number of coordinates of order <= h (a prefix of the enumeration).
    std::size_t coords_upto(unsigned h) const;

    /// Variables of the total space: x then the order-0 fibre coordinates.
    VarListPtr base_vars() const { return base_vars_; }
    /// Full jet variables: x then every (lambda, alpha).
    VarListPtr jet_vars() const { return jet_vars_; }

    std::string coord_name(unsigned lambda, const MultiIndex& alpha) const;

    bool operator==(const JetSpec& rhs) const {
        return n_ == rhs.n_ && m_ == rhs.m_ && k_ == rhs.k_;
    }

private:
    unsigned n_, m_, k_;
    std::string base_prefix_, fibre_prefix_;
    std::vector<std::pair<unsigned, MultiIndex>> coords_;
    std::map<std::pair<unsigned, Exps>, std::size_t> index_;
    std::vector<std::size_t> upto_;  // upto_[h] = #coords of order <= h
    VarListPtr base_vars_, jet_vars_;
};

/// A rational point of a jet space: base point plus every jet coordinate.
struct JetPoint {
    JetSpec spec;
    std::vector<Rational> base;    // size n
    std::vector<Rational> values;  // size spec.num_coords()

    JetPoint(JetSpec s, std::vector<Rational> b, std::vector<Rational> v);

    const Rational& value(unsigned lambda, const MultiIndex& alpha) const;
    /// Point of the full jet variable list (base then values), for Poly::eval.
    std::vector<Rational> full_point() const;
    /// Truncate to a lower order.
    JetPoint project(unsigned h) const;
};

/// Classical prolongation of a point vector field on the total space (x, y)
/// to the k-jet space given by spec.
PolyVectorField prolong_field(const PolyVectorField& xi, const JetSpec& spec);

/// Engel fields (1/beta!)(x-z)^beta d/dx_i for 1 <= |beta| <= order, listed by
/// beta in graded-lex order, then by i. Their jets at z form the standard
/// basis of the total isotropy algebra at z.
std::vector<PolyVectorField> engel_basis(unsigned n, unsigned order,
                                         const std::vector<Rational>& z);

/// Same fields including |beta| = 0 (the coordinate translations), a basis of
/// the jets of all vector fields at z.
std::vector<PolyVectorField> monomial_fields(unsigned n, unsigned order,
                                             const std::vector<Rational>& z);

/// Jet of a polynomial section at z: values are plain partial derivatives.
JetPoint jet_of_section(const JetSpec& spec, const std::vector<Poly>& section,
                        const std::vector<Rational>& z);

}  // namespace forge
