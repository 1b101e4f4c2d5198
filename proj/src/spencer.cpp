#include "forge/spencer.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace forge {

std::size_t symbol_ambient(unsigned n, unsigned m, unsigned k) {
    return static_cast<std::size_t>(m) * sym_dim(n, k);
}

namespace {

std::size_t alpha_position(unsigned n, unsigned k, const MultiIndex& alpha) {
    const auto list = multiindices(n, k);
    for (std::size_t p = 0; p < list.size(); ++p)
        if (list[p] == alpha) return p;
    throw std::invalid_argument("symbol_index: multi-index of wrong order");
}

}  // namespace

std::size_t symbol_index(unsigned n, unsigned m, unsigned k,
                         const MultiIndex& alpha, unsigned lambda) {
    if (alpha.order() != k) throw std::invalid_argument("symbol_index: order mismatch");
    return alpha_position(n, k, alpha) * m + lambda;
}

SymbolSpace full_symbol(unsigned n, unsigned m, unsigned k) {
    return {n, m, k, Subspace::full(symbol_ambient(n, m, k))};
}

SymbolSpace zero_symbol(unsigned n, unsigned m, unsigned k) {
    return {n, m, k, Subspace::zero(symbol_ambient(n, m, k))};
}

SymbolSpace symbol_from_constraints(unsigned n, unsigned m, unsigned k,
                                    const QMatrix& relations) {
    if (relations.rows() == 0) return full_symbol(n, m, k);
    if (relations.cols() != symbol_ambient(n, m, k))
        throw std::invalid_argument("symbol_from_constraints: ambient mismatch");
    return {n, m, k, nullspace(relations)};
}

QMatrix shift_matrix(unsigned n, unsigned m, unsigned k, unsigned i) {
    if (k == 0) return QMatrix(0, symbol_ambient(n, m, 0));
    QMatrix d(symbol_ambient(n, m, k - 1), symbol_ambient(n, m, k));
    const auto lower = multiindices(n, k - 1);
    for (std::size_t p = 0; p < lower.size(); ++p) {
        const std::size_t src = alpha_position(n, k, lower[p].plus(i));
        for (unsigned lambda = 0; lambda < m; ++lambda)
            d(p * m + lambda, src * m + lambda) = 1;
    }
    return d;
}

SymbolSpace prolong_symbol(const SymbolSpace& g) {
    const unsigned n = g.n, m = g.m, k = g.k;
    QMatrix cons = g.space.constraints();
    QMatrix stacked(0, symbol_ambient(n, m, k + 1));
    for (unsigned i = 0; i < n; ++i)
        stacked = vstack(stacked, cons * shift_matrix(n, m, k + 1, i));
    if (stacked.rows() == 0) return full_symbol(n, m, k + 1);
    return {n, m, k + 1, nullspace(stacked)};
}

std::vector<std::vector<unsigned>> wedge_tuples(unsigned n, unsigned q) {
    std::vector<std::vector<unsigned>> out;
    if (q > n) return out;
    std::vector<unsigned> cur(q);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned lo) {
        if (pos == q) {
            out.push_back(cur);
            return;
        }
        for (unsigned i = lo; i + (q - pos - 1) < n; ++i) {
            cur[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    return out;
}

SymbolFamily::SymbolFamily(unsigned n, unsigned m, std::map<unsigned, Subspace> members)
    : n_(n), m_(m), members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("SymbolFamily: no members");
    for (const auto& [k, s] : members_)
        if (s.ambient_dim() != symbol_ambient(n_, m_, k))
            throw std::invalid_argument("SymbolFamily: member ambient mismatch");
    min_explicit_ = members_.begin()->first;
}

SymbolFamily SymbolFamily::from_seed(const SymbolSpace& seed) {
    std::map<unsigned, Subspace> members;
    members[seed.k] = seed.space;
    return SymbolFamily(seed.n, seed.m, std::move(members));
}

Subspace SymbolFamily::member(unsigned k) const {
    if (k < min_explicit_) return Subspace::full(symbol_ambient(n_, m_, k));
    auto it = members_.find(k);
    if (it != members_.end()) return it->second;
    SymbolSpace below{n_, m_, k - 1, member(k - 1)};
    members_[k] = prolong_symbol(below).space;
    return members_[k];
}

bool SymbolFamily::is_complex_at(unsigned k) const {
    if (k == 0) return true;
    const Subspace gk = member(k);
    const Subspace glow = member(k - 1);
    for (unsigned i = 0; i < n_; ++i) {
        QMatrix shifted = gk.basis() * shift_matrix(n_, m_, k, i).transpose();
        for (std::size_t r = 0; r < shifted.rows(); ++r)
            if (!glow.contains(shifted.row(r))) return false;
    }
    return true;
}

QMatrix delta_full(unsigned n, unsigned m, unsigned k, unsigned q) {
    const auto dom_tuples = wedge_tuples(n, q);
    const auto cod_tuples = wedge_tuples(n, q + 1);
    const std::size_t nk = symbol_ambient(n, m, k);
    if (k == 0) return QMatrix(0, dom_tuples.size() * nk);
    const std::size_t nk1 = symbol_ambient(n, m, k - 1);
    QMatrix d(cod_tuples.size() * nk1, dom_tuples.size() * nk);

    std::map<std::vector<unsigned>, std::size_t> cod_pos;
    for (std::size_t t = 0; t < cod_tuples.size(); ++t) cod_pos[cod_tuples[t]] = t;
    std::vector<QMatrix> shifts;
    for (unsigned i = 0; i < n; ++i) shifts.push_back(shift_matrix(n, m, k, i));

    for (std::size_t jt = 0; jt < dom_tuples.size(); ++jt) {
        const auto& J = dom_tuples[jt];
        for (unsigned i = 0; i < n; ++i) {
            if (std::find(J.begin(), J.end(), i) != J.end()) continue;
            // sign of e_i ^ e_J: one flip per element of J below i
            int sign = 1;
            std::vector<unsigned> merged;
            merged.reserve(J.size() + 1);
            bool placed = false;
            for (unsigned v : J) {
                if (!placed && v > i) {
                    merged.push_back(i);
                    placed = true;
                }
                if (!placed) sign = -sign;
                merged.push_back(v);
            }
            if (!placed) merged.push_back(i);
            const std::size_t tt = cod_pos.at(merged);
            const QMatrix& sh = shifts[i];
            for (std::size_t r = 0; r < nk1; ++r)
                for (std::size_t c = 0; c < nk; ++c) {
                    if (sh(r, c) == 0) continue;
                    d(tt * nk1 + r, jt * nk + c) += sign > 0 ? Rational(1) : Rational(-1);
                }
        }
    }
    return d;
}

QMatrix delta_map(const SymbolFamily& family, unsigned k, unsigned q) {
    const unsigned n = family.n(), m = family.m();
    const Subspace gk = family.member(k);
    const auto dom_tuples = wedge_tuples(n, q);
    const std::size_t nk = symbol_ambient(n, m, k);
    QMatrix full = delta_full(n, m, k, q);
    QMatrix incl(dom_tuples.size() * nk, dom_tuples.size() * gk.dim());
    for (std::size_t jt = 0; jt < dom_tuples.size(); ++jt)
        for (std::size_t b = 0; b < gk.dim(); ++b)
            for (std::size_t c = 0; c < nk; ++c)
                incl(jt * nk + c, jt * gk.dim() + b) = gk.basis()(b, c);
    return full * incl;
}

std::size_t cohomology_dim(const SymbolFamily& family, unsigned k, unsigned q) {
    const unsigned n = family.n();
    if (q > n) return 0;
    const std::size_t dom = wedge_tuples(n, q).size() * family.member_dim(k);
    const std::size_t ker = dom - rank(delta_map(family, k, q));
    if (q == 0) return ker;
    return ker - rank(delta_map(family, k + 1, q - 1));
}

std::optional<unsigned> acyclicity_onset(const SymbolFamily& family, unsigned s,
                                         unsigned start, unsigned cap) {
    if (cap < start) throw std::invalid_argument("acyclicity_onset: cap below start");
    std::optional<unsigned> onset;
    for (unsigned k = cap + 1; k-- > start;) {
        bool clean = true;
        for (unsigned q = 1; q <= std::min(s, family.n()) && clean; ++q)
            clean = cohomology_dim(family, k, q) == 0;
        if (!clean) break;
        onset = k;
    }
    return onset;
}

namespace {

QMatrix random_invertible(unsigned n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 2);
    while (true) {
        QMatrix t(n, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) t(i, j) = Rational(num(rng), den(rng));
        if (rank(t) == n) return t;
    }
}

std::vector<std::size_t> characters_for_flag(const SymbolSpace& g, const QMatrix& flag) {
    const unsigned n = g.n;
    std::vector<std::size_t> alpha;
    Subspace w = g.space;
    for (unsigned i = 0; i < n; ++i) {
        QMatrix ku(symbol_ambient(g.n, g.m, g.k - 1), symbol_ambient(g.n, g.m, g.k));
        for (unsigned j = 0; j < n; ++j) {
            if (flag(j, i) == 0) continue;
            const QMatrix sh = shift_matrix(g.n, g.m, g.k, j);
            for (std::size_t r = 0; r < ku.rows(); ++r)
                for (std::size_t c = 0; c < ku.cols(); ++c)
                    if (sh(r, c) != 0) ku(r, c) += flag(j, i) * sh(r, c);
        }
        Subspace next = w.intersect(nullspace(ku));
        alpha.push_back(w.dim() - next.dim());
        w = next;
    }
    return alpha;
}

}  // namespace

CharacterData character_analysis(const SymbolSpace& g, std::mt19937_64& rng) {
    if (g.k == 0)
        throw std::invalid_argument("character_analysis: symbol order must be positive");
    CharacterData best;
    for (int draw = 0; draw < 5; ++draw) {
        QMatrix flag = random_invertible(g.n, rng);
        std::vector<std::size_t> alpha = characters_for_flag(g, flag);
        if (draw == 0 || std::lexicographical_compare(best.alpha.begin(), best.alpha.end(),
                                                      alpha.begin(), alpha.end()))
            best.alpha = alpha;
    }
    best.prolongation_dim = prolong_symbol(g).space.dim();
    best.cartan_sum = 0;
    for (std::size_t i = 0; i < best.alpha.size(); ++i)
        best.cartan_sum += (i + 1) * best.alpha[i];
    best.involutive = best.prolongation_dim == best.cartan_sum;
    return best;
}

std::vector<std::size_t> cartan_characters(const SymbolSpace& g, std::mt19937_64& rng) {
    return character_analysis(g, rng).alpha;
}

bool cartan_test(const SymbolSpace& g, std::mt19937_64& rng) {
    return character_analysis(g, rng).involutive;
}

std::optional<unsigned> involutivity_onset(const SymbolFamily& family, unsigned start,
                                           unsigned cap, std::mt19937_64& rng) {
    std::optional<unsigned> onset;
    for (unsigned k = cap + 1; k-- > std::max(start, 1u);) {
        SymbolSpace g{family.n(), family.m(), k, family.member(k)};
        if (!cartan_test(g, rng)) break;
        onset = k;
    }
    return onset;
}

}  // namespace forge
