#include "forge/jetcalc.hpp"

#include <algorithm>
#include <stdexcept>

namespace forge {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::size_t out = 1;
    for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

MultiIndex MultiIndex::plus(std::size_t dir) const {
    Exps e = exps_;
    ++e[dir];
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::minus(std::size_t dir) const {
    if (exps_[dir] == 0) throw std::invalid_argument("MultiIndex::minus: zero exponent");
    Exps e = exps_;
    --e[dir];
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& rhs) const {
    if (rhs.size() != size()) throw std::invalid_argument("MultiIndex: arity mismatch");
    Exps e = exps_;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += rhs.exps_[i];
    return MultiIndex(std::move(e));
}

Rational MultiIndex::factorial() const {
    BigInt f = 1;
    for (unsigned e : exps_)
        for (unsigned t = 2; t <= e; ++t) f *= t;
    return Rational(f);
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(exps_[i]);
    }
    return s + ")";
}

namespace {

void gen_exact(unsigned n, unsigned k, Exps& cur, std::size_t pos,
               std::vector<MultiIndex>& out) {
    if (pos + 1 == n) {
        cur[pos] = k;
        out.emplace_back(cur);
        return;
    }
    for (int e = static_cast<int>(k); e >= 0; --e) {
        cur[pos] = static_cast<unsigned>(e);
        gen_exact(n, k - e, cur, pos + 1, out);
    }
}

}  // namespace

std::vector<MultiIndex> multiindices(unsigned n, unsigned k) {
    if (n == 0) throw std::invalid_argument("multiindices: n must be positive");
    std::vector<MultiIndex> out;
    Exps cur(n, 0);
    gen_exact(n, k, cur, 0, out);
    return out;
}

std::vector<MultiIndex> multiindices_upto(unsigned n, unsigned k) {
    std::vector<MultiIndex> out;
    for (unsigned d = 0; d <= k; ++d) {
        auto level = multiindices(n, d);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::size_t sym_dim(unsigned n, unsigned k) {
    return binomial(n + k - 1, k);
}

JetSpec::JetSpec(unsigned n, unsigned m, unsigned k,
                 std::string base_prefix, std::string fibre_prefix)
    : n_(n), m_(m), k_(k),
      base_prefix_(std::move(base_prefix)), fibre_prefix_(std::move(fibre_prefix)) {
    if (n == 0 || m == 0) throw std::invalid_argument("JetSpec: dimensions must be positive");
    upto_.assign(k_ + 1, 0);
    for (unsigned d = 0; d <= k_; ++d) {
        for (const MultiIndex& alpha : multiindices(n_, d))
            for (unsigned lambda = 0; lambda < m_; ++lambda) {
                index_[{lambda, alpha.exps()}] = coords_.size();
                coords_.emplace_back(lambda, alpha);
            }
        upto_[d] = coords_.size();
    }
    VarList names;
    for (unsigned i = 0; i < n_; ++i) names.push_back(base_prefix_ + std::to_string(i + 1));
    for (unsigned lambda = 0; lambda < m_; ++lambda)
        names.push_back(fibre_prefix_ + std::to_string(lambda + 1));
    base_vars_ = make_vars(names);
    VarList jet = *base_vars_;
    jet.resize(n_);
    for (const auto& [lambda, alpha] : coords_) jet.push_back(coord_name(lambda, alpha));
    jet_vars_ = make_vars(std::move(jet));
}

std::size_t JetSpec::coord_index(unsigned lambda, const MultiIndex& alpha) const {
    auto it = index_.find({lambda, alpha.exps()});
    if (it == index_.end()) throw std::invalid_argument("JetSpec: unknown jet coordinate");
    return it->second;
}

std::size_t JetSpec::coords_upto(unsigned h) const {
    if (h > k_) throw std::invalid_argument("JetSpec::coords_upto: order exceeds spec");
    return upto_[h];
}

std::string JetSpec::coord_name(unsigned lambda, const MultiIndex& alpha) const {
    std::string name = fibre_prefix_ + std::to_string(lambda + 1);
    if (alpha.order() == 0) return name;
    name += "_";
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (unsigned t = 0; t < alpha[i]; ++t) name += std::to_string(i + 1);
    return name;
}

JetPoint::JetPoint(JetSpec s, std::vector<Rational> b, std::vector<Rational> v)
    : spec(std::move(s)), base(std::move(b)), values(std::move(v)) {
    if (base.size() != spec.n() || values.size() != spec.num_coords())
        throw std::invalid_argument("JetPoint: incomplete assignment");
}

const Rational& JetPoint::value(unsigned lambda, const MultiIndex& alpha) const {
    return values[spec.coord_index(lambda, alpha)];
}

std::vector<Rational> JetPoint::full_point() const {
    std::vector<Rational> out = base;
    out.insert(out.end(), values.begin(), values.end());
    return out;
}

JetPoint JetPoint::project(unsigned h) const {
    JetSpec lower(spec.n(), spec.m(), h);
    std::vector<Rational> v(values.begin(), values.begin() + spec.coords_upto(h));
    return JetPoint(lower, base, std::move(v));
}

namespace {

// Total derivative D_i on functions of jet coordinates of order <= k-1.
Poly total_derivative(const Poly& f, unsigned i, const JetSpec& spec) {
    const unsigned n = spec.n();
    Poly out = f.partial(i);
    const auto& coords = spec.coords();
    const std::size_t low = spec.k() == 0 ? 0 : spec.coords_upto(spec.k() - 1);
    for (std::size_t c = 0; c < low; ++c) {
        Poly df = f.partial(n + c);
        if (df.is_zero()) continue;
        const auto& [lambda, alpha] = coords[c];
        std::size_t up = spec.coord_index(lambda, alpha.plus(i));
        out = out + Poly::variable(spec.jet_vars(), n + up) * df;
    }
    return out;
}

}  // namespace

PolyVectorField prolong_field(const PolyVectorField& xi, const JetSpec& spec) {
    const unsigned n = spec.n(), m = spec.m(), k = spec.k();
    if (xi.nvars() != n + m)
        throw std::invalid_argument("prolong_field: field must live on the total space");
    // reinterpret the field components over the jet variable list
    std::vector<std::size_t> var_map(n + m);
    for (unsigned i = 0; i < n; ++i) var_map[i] = i;
    for (unsigned lambda = 0; lambda < m; ++lambda)
        var_map[n + lambda] = n + spec.coord_index(lambda, MultiIndex::zero(n));
    std::vector<Poly> a(n), comp(spec.num_coords());
    for (unsigned i = 0; i < n; ++i) a[i] = xi.component(i).extend(spec.jet_vars(), var_map);
    for (unsigned lambda = 0; lambda < m; ++lambda)
        comp[spec.coord_index(lambda, MultiIndex::zero(n))] =
            xi.component(n + lambda).extend(spec.jet_vars(), var_map);

    std::vector<Poly> da(n * n);  // D_i a_j, functions of order <= 1 coordinates
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            da[i * n + j] = total_derivative(a[j], i, spec);

    for (unsigned d = 1; d <= k; ++d)
        for (const MultiIndex& beta : multiindices(n, d)) {
            unsigned i = 0;
            while (beta[i] == 0) ++i;
            const MultiIndex alpha = beta.minus(i);
            for (unsigned lambda = 0; lambda < m; ++lambda) {
                Poly eta = total_derivative(comp[spec.coord_index(lambda, alpha)], i, spec);
                for (unsigned j = 0; j < n; ++j) {
                    if (da[i * n + j].is_zero()) continue;
                    eta = eta - Poly::variable(spec.jet_vars(),
                                               n + spec.coord_index(lambda, alpha.plus(j))) *
                                    da[i * n + j];
                }
                comp[spec.coord_index(lambda, beta)] = std::move(eta);
            }
        }

    std::vector<Poly> all;
    all.reserve(n + comp.size());
    for (unsigned i = 0; i < n; ++i) all.push_back(a[i]);
    for (auto& p : comp) {
        if (p.is_zero()) p = Poly::zero(spec.jet_vars());
        all.push_back(std::move(p));
    }
    return PolyVectorField(spec.jet_vars(), std::move(all));
}

namespace {

Poly shifted_monomial(const VarListPtr& vars, const MultiIndex& beta,
                      const std::vector<Rational>& z) {
    // (x - z)^beta / beta!
    Poly p = Poly::constant(vars, 1);
    for (std::size_t j = 0; j < beta.size(); ++j) {
        Poly lin = Poly::variable(vars, j) - Poly::constant(vars, z[j]);
        for (unsigned t = 0; t < beta[j]; ++t) p = p * lin;
    }
    return p * (Rational(1) / beta.factorial());
}

std::vector<PolyVectorField> monomial_fields_impl(unsigned n, unsigned order,
                                                  const std::vector<Rational>& z,
                                                  unsigned min_order) {
    if (z.size() != n) throw std::invalid_argument("engel basis: base point arity");
    VarList names;
    for (unsigned i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    VarListPtr vars = make_vars(std::move(names));
    std::vector<PolyVectorField> out;
    for (unsigned d = min_order; d <= order; ++d)
        for (const MultiIndex& beta : multiindices(n, d)) {
            Poly mono = shifted_monomial(vars, beta, z);
            for (unsigned i = 0; i < n; ++i) {
                PolyVectorField f(vars);
                f.component(i) = mono;
                out.push_back(std::move(f));
            }
        }
    return out;
}

}  // namespace

std::vector<PolyVectorField> engel_basis(unsigned n, unsigned order,
                                         const std::vector<Rational>& z) {
    return monomial_fields_impl(n, order, z, 1);
}

std::vector<PolyVectorField> monomial_fields(unsigned n, unsigned order,
                                             const std::vector<Rational>& z) {
    return monomial_fields_impl(n, order, z, 0);
}

JetPoint jet_of_section(const JetSpec& spec, const std::vector<Poly>& section,
                        const std::vector<Rational>& z) {
    if (section.size() != spec.m())
        throw std::invalid_argument("jet_of_section: one polynomial per fibre coordinate");
    std::vector<Rational> values(spec.num_coords());
    for (unsigned lambda = 0; lambda < spec.m(); ++lambda) {
        // cache derivatives along the enumeration: compute directly per alpha
        for (const auto& [lam, alpha] : spec.coords()) {
            if (lam != lambda) continue;
            Poly d = section[lambda];
            for (std::size_t i = 0; i < alpha.size(); ++i)
                for (unsigned t = 0; t < alpha[i]; ++t) d = d.partial(i);
            values[spec.coord_index(lambda, alpha)] = d.eval(z);
        }
    }
    return JetPoint(spec, z, std::move(values));
}

}  // namespace forge
