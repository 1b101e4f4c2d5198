#pragma once

#include "forge/spencer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace forge {

struct PDETerm {
    Rational coef;
    unsigned unknown = 0;  // lambda, 0-based
    MultiIndex deriv;
};

struct PDEEquation {
    std::vector<PDETerm> terms;
    unsigned actual_order() const;
    std::string to_string(unsigned n, unsigned m) const;
};

/// Linear constant-coefficient system on m unknowns over R^n.
struct LinearPDESystem {
    unsigned n = 0, m = 0;
    unsigned order = 0;  // declared order; every term satisfies |deriv| <= order
    std::vector<PDEEquation> equations;

    void validate() const;
};

/// Coefficient row of an equation on the jet coordinates of order <= k.
std::vector<Rational> equation_row(const PDEEquation& eq, const JetSpec& spec);

/// All formal derivatives of every equation through order k:
/// rows d^gamma(e) for |gamma| <= k - order(e).
QMatrix consequence_matrix(const LinearPDESystem& sys, unsigned k);

/// Space of k-jets at a point satisfying every consequence through order k.
Subspace solution_space(const LinearPDESystem& sys, unsigned k);
std::size_t solution_fibre_dim(const LinearPDESystem& sys, unsigned k);

/// Symbol at order k: top-order kernel of the consequence matrix.
Subspace symbol_at(const LinearPDESystem& sys, unsigned k);

/// Symbol family of the system: actual symbols through the top equation
/// order, algebraic prolongations beyond.
SymbolFamily symbol_family(const LinearPDESystem& sys);

/// Original equations plus every first formal derivative; order goes up by one.
LinearPDESystem prolong_system(const LinearPDESystem& sys);

/// Exact elimination of the top-order jet variables from the stacked
/// coefficient matrix of sys. Returns the induced relations of lower order
/// that are not consequences of the lower-order equations already present.
std::vector<PDEEquation> project_system(const LinearPDESystem& sys);

struct KuranishiOrderRecord {
    unsigned order = 0;
    std::size_t dim_solution = 0;
    std::size_t dim_symbol = 0;
    bool projection_surjective = false;
    bool two_acyclic = false;
};

struct KuranishiEvent {
    unsigned order = 0;       // order of the absorbed equations
    std::size_t count = 0;    // how many were absorbed
};

struct KuranishiReport {
    std::vector<KuranishiOrderRecord> records;
    std::vector<KuranishiEvent> events;
    std::string verdict;              // formally-integrable | cap-reached
    std::optional<unsigned> mu0;      // 2-acyclicity onset when integrable
    unsigned cap = 0;
    LinearPDESystem completed;        // pool including absorbed equations
};

/// Cartan-Kuranishi completion: prolong and project until the projections are
/// surjective at every order and the symbol is 2-acyclic (Quillen), or the
/// order cap is reached.
KuranishiReport complete(const LinearPDESystem& sys, unsigned cap);

}  // namespace forge
