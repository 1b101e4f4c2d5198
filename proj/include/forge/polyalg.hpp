#pragma once

#include "forge/exactlin.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace forge {

using Exps = std::vector<unsigned>;

unsigned exps_order(const Exps& e);

/// Graded-lexicographic term order: lower total degree first, ties broken so
/// that the lexicographically larger exponent comes first
/// (e.g. degree 2 in two variables enumerates (2,0), (1,1), (0,2)).
bool grlex_before(const Exps& a, const Exps& b);

struct GrlexBefore {
    bool operator()(const Exps& a, const Exps& b) const { return grlex_before(a, b); }
};

using VarList = std::vector<std::string>;
using VarListPtr = std::shared_ptr<const VarList>;

VarListPtr make_vars(VarList names);
bool same_vars(const VarListPtr& a, const VarListPtr& b);

/// Multivariate polynomial over Q with a fixed ordered variable list.
class Poly {
public:
    Poly() = default;
    explicit Poly(VarListPtr vars) : vars_(std::move(vars)) {}

    static Poly zero(VarListPtr vars) { return Poly(std::move(vars)); }
    static Poly constant(VarListPtr vars, const Rational& c);
    static Poly variable(VarListPtr vars, std::size_t index);
    static Poly monomial(VarListPtr vars, const Exps& exps, const Rational& c);

    const VarListPtr& vars() const { return vars_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // 0 for the zero polynomial
    unsigned degree() const;          // total degree; 0 for the zero polynomial

    const std::map<Exps, Rational, GrlexBefore>& terms() const { return terms_; }
    void add_term(const Exps& exps, const Rational& c);

    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator-() const;
    Poly operator*(const Poly& rhs) const;
    Poly operator*(const Rational& c) const;
    bool operator==(const Poly&) const = default;

    Poly partial(std::size_t var_index) const;
    Rational eval(const std::vector<Rational>& point) const;

    /// Substitute images[i] for variable i; images share one variable list.
    Poly subst(const std::vector<Poly>& images) const;

    /// Reinterpret over a larger variable list; var_map[i] is the position of
    /// this polynomial's i-th variable in the new list.
    Poly extend(const VarListPtr& new_vars, const std::vector<std::size_t>& var_map) const;

    /// Drop all terms of total degree > max_degree.
    Poly truncate_degree(unsigned max_degree) const;

    std::string to_string() const;

private:
    void check_compatible(const Poly& rhs) const;

    VarListPtr vars_;
    std::map<Exps, Rational, GrlexBefore> terms_;
};

/// Exterior form of degree q with polynomial coefficients. Terms are indexed
/// by strictly increasing variable-index tuples of length q.
class DiffForm {
public:
    DiffForm() : degree_(0) {}
    DiffForm(unsigned degree, VarListPtr vars);

    static DiffForm from_poly(const Poly& p);          // degree 0
    static DiffForm d_var(VarListPtr vars, std::size_t index);  // dx_i

    unsigned degree() const { return degree_; }
    const VarListPtr& vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<unsigned>, Poly>& terms() const { return terms_; }

    void add_term(const std::vector<unsigned>& idx, const Poly& coeff);

    DiffForm operator+(const DiffForm& rhs) const;
    DiffForm operator-(const DiffForm& rhs) const;
    DiffForm operator*(const Poly& f) const;
    DiffForm operator*(const Rational& c) const;
    bool operator==(const DiffForm&) const = default;

    std::string to_string() const;

private:
    unsigned degree_;
    VarListPtr vars_;
    std::map<std::vector<unsigned>, Poly> terms_;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm exterior_derivative(const DiffForm& w);

/// Pointwise value of a form: alternating tensor with rational entries.
using AltTensor = std::map<std::vector<unsigned>, Rational>;
AltTensor eval_form(const DiffForm& w, const std::vector<Rational>& point);

/// Pull a form back along the linear substitution x = T x'.
DiffForm pullback_linear(const DiffForm& w, const QMatrix& t);

/// Vector field with polynomial components, one per variable.
class PolyVectorField {
public:
    PolyVectorField() = default;
    explicit PolyVectorField(VarListPtr vars);
    PolyVectorField(VarListPtr vars, std::vector<Poly> components);

    const VarListPtr& vars() const { return vars_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    const Poly& component(std::size_t i) const { return components_[i]; }
    Poly& component(std::size_t i) { return components_[i]; }
    const std::vector<Poly>& components() const { return components_; }

    /// Derivation: sum_i comp_i * d f / d x_i.
    Poly apply(const Poly& f) const;

    bool operator==(const PolyVectorField&) const = default;

    std::string to_string() const;

private:
    VarListPtr vars_;
    std::vector<Poly> components_;
};

PolyVectorField bracket(const PolyVectorField& a, const PolyVectorField& b);

}  // namespace forge
