#pragma once

#include "forge/exactlin.hpp"
#include "forge/jetcalc.hpp"

#include <map>
#include <optional>
#include <random>
#include <vector>

namespace forge {

/// A subspace g of S^k V* (x) W, V of dimension n, W of dimension m.
/// Coordinates are jet-style: component (alpha, lambda) with |alpha| = k,
/// enumerated alpha-major in graded-lex order, lambda minor, so the formal
/// derivative D_i acts by the index shift alpha -> alpha + e_i.
struct SymbolSpace {
    unsigned n = 0, m = 0, k = 0;
    Subspace space;
};

std::size_t symbol_ambient(unsigned n, unsigned m, unsigned k);
std::size_t symbol_index(unsigned n, unsigned m, unsigned k,
                         const MultiIndex& alpha, unsigned lambda);

SymbolSpace full_symbol(unsigned n, unsigned m, unsigned k);
SymbolSpace zero_symbol(unsigned n, unsigned m, unsigned k);
/// Kernel of homogeneous linear relations on the (alpha, lambda) coordinates.
SymbolSpace symbol_from_constraints(unsigned n, unsigned m, unsigned k,
                                    const QMatrix& relations);

/// Matrix of D_i : S^k (x) W -> S^{k-1} (x) W.
QMatrix shift_matrix(unsigned n, unsigned m, unsigned k, unsigned i);

/// First algebraic prolongation {v in S^{k+1} (x) W : D_i v in g for all i}.
SymbolSpace prolong_symbol(const SymbolSpace& g);

/// Strictly increasing q-tuples from {0..n-1}, lexicographic order.
std::vector<std::vector<unsigned>> wedge_tuples(unsigned n, unsigned q);

/// A symbol family g_k indexed by homogeneity order. Orders below the first
/// explicit member are full; orders above the last are generated lazily by
/// algebraic prolongation.
class SymbolFamily {
public:
    SymbolFamily(unsigned n, unsigned m, std::map<unsigned, Subspace> members);
    static SymbolFamily from_seed(const SymbolSpace& seed);

    unsigned n() const { return n_; }
    unsigned m() const { return m_; }
    unsigned min_order() const { return min_explicit_; }

    Subspace member(unsigned k) const;
    std::size_t member_dim(unsigned k) const { return member(k).dim(); }

    /// D_i g_k contained in g_{k-1} for all i (the family is a complex at k).
    bool is_complex_at(unsigned k) const;

private:
    unsigned n_, m_;
    unsigned min_explicit_;
    mutable std::map<unsigned, Subspace> members_;
};

/// Spencer delta on the full spaces, Lambda^q V* (x) S^k (x) W ->
/// Lambda^{q+1} V* (x) S^{k-1} (x) W, with delta(e_J (x) v) =
/// sum_i e_i ^ e_J (x) D_i v.
QMatrix delta_full(unsigned n, unsigned m, unsigned k, unsigned q);

/// The same map restricted to Lambda^q (x) g_k; the codomain keeps ambient
/// coordinates, which is all rank and kernel computations need.
QMatrix delta_map(const SymbolFamily& family, unsigned k, unsigned q);

/// dim ker delta^{k,q} - rank delta^{k+1,q-1} (incoming map at q = 0 is zero).
std::size_t cohomology_dim(const SymbolFamily& family, unsigned k, unsigned q);

/// Least k in [start, cap] with H^{k',q} = 0 for all k' in [k, cap] and
/// 1 <= q <= s; empty when even the cap order fails.
std::optional<unsigned> acyclicity_onset(const SymbolFamily& family, unsigned s,
                                         unsigned start, unsigned cap);

struct CharacterData {
    std::vector<std::size_t> alpha;   // Cartan characters
    std::size_t prolongation_dim = 0; // dim g^{(1)}
    std::size_t cartan_sum = 0;       // sum i * alpha_i
    bool involutive = false;
};

/// Characters along a generic flag, drawn as a random rational basis change;
/// the best of five draws (lexicographically maximal character vector) is kept.
CharacterData character_analysis(const SymbolSpace& g, std::mt19937_64& rng);
std::vector<std::size_t> cartan_characters(const SymbolSpace& g, std::mt19937_64& rng);
bool cartan_test(const SymbolSpace& g, std::mt19937_64& rng);

/// Least k in [start, cap] from which every member up to cap passes the
/// Cartan test.
std::optional<unsigned> involutivity_onset(const SymbolFamily& family, unsigned start,
                                           unsigned cap, std::mt19937_64& rng);

}  // namespace forge
