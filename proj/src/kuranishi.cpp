#include "forge/kuranishi.hpp"

#include <algorithm>
#include <stdexcept>

namespace forge {

unsigned PDEEquation::actual_order() const {
    unsigned o = 0;
    for (const PDETerm& t : terms) o = std::max(o, t.deriv.order());
    return o;
}

std::string PDEEquation::to_string(unsigned n, unsigned m) const {
    JetSpec spec(n, m, actual_order(), "x", "u");
    std::string s;
    for (const PDETerm& t : terms) {
        if (t.coef == 0) continue;
        Rational c = t.coef;
        if (s.empty()) {
            if (c < 0) { s += "-"; c = -c; }
        } else {
            s += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        std::string name = spec.coord_name(t.unknown, t.deriv);
        if (c == 1) s += name;
        else s += forge::to_string(c) + "*" + name;
    }
    if (s.empty()) s = "0";
    return s + " = 0";
}

void LinearPDESystem::validate() const {
    if (n == 0 || m == 0) throw std::invalid_argument("pde system: dimensions must be positive");
    for (const PDEEquation& eq : equations) {
        if (eq.terms.empty()) throw std::invalid_argument("pde system: empty equation");
        for (const PDETerm& t : eq.terms) {
            if (t.unknown >= m) throw std::invalid_argument("pde system: unknown out of range");
            if (t.deriv.size() != n) throw std::invalid_argument("pde system: multi-index arity");
            if (t.deriv.order() > order)
                throw std::invalid_argument("pde system: derivative above declared order");
        }
    }
}

std::vector<Rational> equation_row(const PDEEquation& eq, const JetSpec& spec) {
    std::vector<Rational> row(spec.num_coords());
    for (const PDETerm& t : eq.terms)
        row[spec.coord_index(t.unknown, t.deriv)] += t.coef;
    return row;
}

namespace {

PDEEquation shift_equation(const PDEEquation& eq, unsigned i) {
    PDEEquation out;
    out.terms.reserve(eq.terms.size());
    for (const PDETerm& t : eq.terms) out.terms.push_back({t.coef, t.unknown, t.deriv.plus(i)});
    return out;
}

PDEEquation equation_from_row(const std::vector<Rational>& row, const JetSpec& spec) {
    PDEEquation eq;
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] == 0) continue;
        const auto& [lambda, alpha] = spec.coords()[c];
        eq.terms.push_back({row[c], lambda, alpha});
    }
    return eq;
}

}  // namespace

QMatrix consequence_matrix(const LinearPDESystem& sys, unsigned k) {
    JetSpec spec(sys.n, sys.m, k, "x", "u");
    std::vector<std::vector<Rational>> rows;
    for (const PDEEquation& eq : sys.equations) {
        const unsigned o = eq.actual_order();
        if (o > k) continue;
        for (const MultiIndex& gamma : multiindices_upto(sys.n, k - o)) {
            PDEEquation shifted = eq;
            for (std::size_t i = 0; i < gamma.size(); ++i)
                for (unsigned t = 0; t < gamma[i]; ++t) shifted = shift_equation(shifted, i);
            rows.push_back(equation_row(shifted, spec));
        }
    }
    QMatrix out(rows.size(), spec.num_coords());
    for (std::size_t r = 0; r < rows.size(); ++r) out.set_row(r, rows[r]);
    return out;
}

Subspace solution_space(const LinearPDESystem& sys, unsigned k) {
    QMatrix m = consequence_matrix(sys, k);
    if (m.rows() == 0) return Subspace::full(JetSpec(sys.n, sys.m, k).num_coords());
    return nullspace(m);
}

std::size_t solution_fibre_dim(const LinearPDESystem& sys, unsigned k) {
    return solution_space(sys, k).dim();
}

Subspace symbol_at(const LinearPDESystem& sys, unsigned k) {
    JetSpec spec(sys.n, sys.m, k, "x", "u");
    QMatrix m = consequence_matrix(sys, k);
    const std::size_t low = k == 0 ? 0 : spec.coords_upto(k - 1);
    std::vector<std::size_t> top;
    for (std::size_t c = low; c < spec.num_coords(); ++c) top.push_back(c);
    if (m.rows() == 0) return Subspace::full(top.size());
    return nullspace(m.select_cols(top));
}

SymbolFamily symbol_family(const LinearPDESystem& sys) {
    unsigned top = 0;
    for (const PDEEquation& eq : sys.equations) top = std::max(top, eq.actual_order());
    std::map<unsigned, Subspace> members;
    for (unsigned k = 0; k <= top; ++k) members[k] = symbol_at(sys, k);
    return SymbolFamily(sys.n, sys.m, std::move(members));
}

LinearPDESystem prolong_system(const LinearPDESystem& sys) {
    LinearPDESystem out = sys;
    out.order = sys.order + 1;
    for (const PDEEquation& eq : sys.equations)
        for (unsigned i = 0; i < sys.n; ++i) out.equations.push_back(shift_equation(eq, i));
    return out;
}

std::vector<PDEEquation> project_system(const LinearPDESystem& sys) {
    const unsigned k1 = sys.order;
    if (k1 == 0) return {};
    JetSpec spec(sys.n, sys.m, k1, "x", "u");
    const std::size_t low = spec.coords_upto(k1 - 1);
    const std::size_t total = spec.num_coords();
    const std::size_t top_count = total - low;

    // permute columns so the top-order block is eliminated first
    std::vector<std::size_t> perm;
    for (std::size_t c = low; c < total; ++c) perm.push_back(c);
    for (std::size_t c = 0; c < low; ++c) perm.push_back(c);

    QMatrix stacked(sys.equations.size(), total);
    for (std::size_t r = 0; r < sys.equations.size(); ++r)
        stacked.set_row(r, equation_row(sys.equations[r], spec));
    QMatrix reduced = rref(stacked.select_cols(perm));

    // relations already implied by the lower-order equations present in sys
    std::vector<std::vector<Rational>> old_rows;
    std::vector<std::size_t> low_cols;
    for (std::size_t c = 0; c < low; ++c) low_cols.push_back(c);
    for (const PDEEquation& eq : sys.equations)
        if (eq.actual_order() < k1) old_rows.push_back(equation_row(eq, spec));
    QMatrix old_m(old_rows.size(), total);
    for (std::size_t r = 0; r < old_rows.size(); ++r) old_m.set_row(r, old_rows[r]);
    Subspace implied = old_rows.empty() ? Subspace::zero(low)
                                        : image(old_m.select_cols(low_cols));

    JetSpec lower(sys.n, sys.m, k1 - 1, "x", "u");
    std::vector<PDEEquation> out;
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        bool top_zero = true;
        for (std::size_t c = 0; c < top_count && top_zero; ++c)
            top_zero = reduced(r, c) == 0;
        if (!top_zero) continue;
        std::vector<Rational> row(low);
        bool nonzero = false;
        for (std::size_t c = 0; c < low; ++c) {
            row[c] = reduced(r, top_count + c);
            nonzero = nonzero || row[c] != 0;
        }
        if (!nonzero) continue;
        if (implied.contains(row)) continue;
        out.push_back(equation_from_row(row, lower));
    }
    return out;
}

namespace {

// New relations revealed at order k+1: eliminate the top block of the full
// consequence matrix, keep rows independent of the order-k consequences.
std::vector<PDEEquation> hidden_relations(const LinearPDESystem& pool, unsigned k) {
    LinearPDESystem closure;
    closure.n = pool.n;
    closure.m = pool.m;
    closure.order = k + 1;
    JetSpec spec(pool.n, pool.m, k + 1, "x", "u");
    QMatrix cons = consequence_matrix(pool, k + 1);
    for (std::size_t r = 0; r < cons.rows(); ++r) {
        PDEEquation eq = equation_from_row(cons.row(r), spec);
        if (!eq.terms.empty()) closure.equations.push_back(eq);
    }
    return project_system(closure);
}

bool projection_surjective(const LinearPDESystem& pool, unsigned j) {
    Subspace rj = solution_space(pool, j);
    Subspace rj1 = solution_space(pool, j + 1);
    JetSpec spec1(pool.n, pool.m, j + 1);
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < spec1.coords_upto(j); ++c) kept.push_back(c);
    return rj1.project_coords(kept) == rj;
}

}  // namespace

KuranishiReport complete(const LinearPDESystem& sys, unsigned cap) {
    sys.validate();
    if (cap < sys.order + 1)
        throw std::invalid_argument("complete: cap must exceed the system order");

    KuranishiReport report;
    report.cap = cap;
    LinearPDESystem pool = sys;

    unsigned k = sys.order;
    while (true) {
        bool absorbed = false;
        for (unsigned j = 0; j <= k && !absorbed; ++j) {
            if (projection_surjective(pool, j)) continue;
            std::vector<PDEEquation> found = hidden_relations(pool, j);
            if (found.empty())
                throw std::logic_error("complete: projection dropped but elimination found nothing");
            unsigned event_order = 0;
            for (const PDEEquation& eq : found) {
                event_order = std::max(event_order, eq.actual_order());
                pool.equations.push_back(eq);
            }
            report.events.push_back({event_order, found.size()});
            absorbed = true;
        }
        if (absorbed) continue;

        // every projection through order k is surjective; Quillen test
        SymbolFamily fam = symbol_family(pool);
        std::optional<unsigned> onset = acyclicity_onset(fam, 2, 0, cap);
        if (onset && *onset <= k) {
            report.verdict = "formally-integrable";
            report.mu0 = onset;
            break;
        }
        if (k == cap) {
            report.verdict = "cap-reached";
            break;
        }
        ++k;
    }

    // per-order trace from the final pool
    SymbolFamily fam = symbol_family(pool);
    std::optional<unsigned> onset = acyclicity_onset(fam, 2, 0, cap);
    for (unsigned j = 0; j <= k; ++j) {
        KuranishiOrderRecord rec;
        rec.order = j;
        rec.dim_solution = solution_fibre_dim(pool, j);
        rec.dim_symbol = fam.member_dim(j);
        rec.projection_surjective = projection_surjective(pool, j);
        rec.two_acyclic = onset && j >= *onset;
        report.records.push_back(rec);
    }
    report.completed = pool;
    return report;
}

}  // namespace forge
