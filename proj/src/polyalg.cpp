#include "forge/polyalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace forge {

unsigned exps_order(const Exps& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

bool grlex_before(const Exps& a, const Exps& b) {
    const unsigned oa = exps_order(a), ob = exps_order(b);
    if (oa != ob) return oa < ob;
    return a > b;  // lexicographically larger exponent first within a degree
}

VarListPtr make_vars(VarList names) {
    return std::make_shared<const VarList>(std::move(names));
}

bool same_vars(const VarListPtr& a, const VarListPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

Poly Poly::constant(VarListPtr vars, const Rational& c) {
    Poly p(std::move(vars));
    if (c != 0) p.terms_[Exps(p.nvars(), 0)] = c;
    return p;
}

Poly Poly::variable(VarListPtr vars, std::size_t index) {
    if (index >= vars->size()) throw std::invalid_argument("Poly::variable: unknown variable");
    Poly p(std::move(vars));
    Exps e(p.nvars(), 0);
    e[index] = 1;
    p.terms_[e] = 1;
    return p;
}

Poly Poly::monomial(VarListPtr vars, const Exps& exps, const Rational& c) {
    if (exps.size() != vars->size()) throw std::invalid_argument("Poly::monomial: exponent arity");
    Poly p(std::move(vars));
    if (c != 0) p.terms_[exps] = c;
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && exps_order(terms_.begin()->first) == 0;
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::invalid_argument("constant_value: polynomial is not constant");
    return terms_.begin()->second;
}

unsigned Poly::degree() const {
    if (terms_.empty()) return 0;
    return exps_order(terms_.rbegin()->first);
}

void Poly::add_term(const Exps& exps, const Rational& c) {
    if (exps.size() != nvars()) throw std::invalid_argument("add_term: exponent arity");
    if (c == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_[exps] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Poly::check_compatible(const Poly& rhs) const {
    if (!same_vars(vars_, rhs.vars_))
        throw std::invalid_argument("polynomial operation: variable lists differ");
}

Poly Poly::operator+(const Poly& rhs) const {
    check_compatible(rhs);
    Poly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
}

Poly Poly::operator-(const Poly& rhs) const {
    check_compatible(rhs);
    Poly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
    return out;
}

Poly Poly::operator-() const {
    Poly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

Poly Poly::operator*(const Poly& rhs) const {
    check_compatible(rhs);
    Poly out(vars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : rhs.terms_) {
            Exps e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Poly Poly::operator*(const Rational& c) const {
    Poly out(vars_);
    if (c == 0) return out;
    for (const auto& [e, v] : terms_) out.terms_[e] = v * c;
    return out;
}

Poly Poly::partial(std::size_t var_index) const {
    if (var_index >= nvars()) throw std::invalid_argument("partial: unknown variable");
    Poly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var_index] == 0) continue;
        Exps d = e;
        --d[var_index];
        out.add_term(d, c * e[var_index]);
    }
    return out;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
    if (point.size() != nvars()) throw std::invalid_argument("eval: point arity mismatch");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
        acc += term;
    }
    return acc;
}

Poly Poly::subst(const std::vector<Poly>& images) const {
    if (images.size() != nvars()) throw std::invalid_argument("subst: image arity mismatch");
    if (images.empty()) return *this;
    VarListPtr target = images.front().vars();
    std::vector<std::vector<Poly>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        powers[i].push_back(Poly::constant(target, 1));
    Poly acc = Poly::zero(target);
    for (const auto& [e, c] : terms_) {
        Poly term = Poly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
            if (e[i] > 0) term = term * powers[i][e[i]];
        }
        acc = acc + term;
    }
    return acc;
}

Poly Poly::extend(const VarListPtr& new_vars, const std::vector<std::size_t>& var_map) const {
    if (var_map.size() != nvars()) throw std::invalid_argument("extend: map arity mismatch");
    Poly out(new_vars);
    for (const auto& [e, c] : terms_) {
        Exps ne(new_vars->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) ne[var_map[i]] = e[i];
        out.add_term(ne, c);
    }
    return out;
}

Poly Poly::truncate_degree(unsigned max_degree) const {
    Poly out(vars_);
    for (const auto& [e, c] : terms_)
        if (exps_order(e) <= max_degree) out.terms_[e] = c;
    return out;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->second;
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < it->first.size(); ++i) {
            unsigned e = it->first[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (*vars_)[i];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            os << forge::to_string(c);
        } else if (c == 1) {
            os << mono;
        } else {
            os << forge::to_string(c) << "*" << mono;
        }
    }
    return os.str();
}

DiffForm::DiffForm(unsigned degree, VarListPtr vars) : degree_(degree), vars_(std::move(vars)) {}

DiffForm DiffForm::from_poly(const Poly& p) {
    DiffForm w(0, p.vars());
    if (!p.is_zero()) w.terms_[{}] = p;
    return w;
}

DiffForm DiffForm::d_var(VarListPtr vars, std::size_t index) {
    if (index >= vars->size()) throw std::invalid_argument("d_var: unknown variable");
    DiffForm w(1, vars);
    w.terms_[{static_cast<unsigned>(index)}] = Poly::constant(vars, 1);
    return w;
}

void DiffForm::add_term(const std::vector<unsigned>& idx, const Poly& coeff) {
    if (idx.size() != degree_) throw std::invalid_argument("DiffForm::add_term: wrong degree");
    if (!std::is_sorted(idx.begin(), idx.end()) ||
        std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw std::invalid_argument("DiffForm::add_term: index tuple must be strictly increasing");
    for (unsigned i : idx)
        if (i >= vars_->size()) throw std::invalid_argument("DiffForm::add_term: index range");
    if (coeff.is_zero()) return;
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
        terms_[idx] = coeff;
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffForm DiffForm::operator+(const DiffForm& rhs) const {
    if (degree_ != rhs.degree_ || !same_vars(vars_, rhs.vars_))
        throw std::invalid_argument("form addition: mismatched forms");
    DiffForm out = *this;
    for (const auto& [idx, c] : rhs.terms_) out.add_term(idx, c);
    return out;
}

DiffForm DiffForm::operator-(const DiffForm& rhs) const {
    return *this + rhs * Rational(-1);
}

DiffForm DiffForm::operator*(const Poly& f) const {
    DiffForm out(degree_, vars_);
    for (const auto& [idx, c] : terms_) out.add_term(idx, c * f);
    return out;
}

DiffForm DiffForm::operator*(const Rational& c) const {
    DiffForm out(degree_, vars_);
    if (c == 0) return out;
    for (const auto& [idx, v] : terms_) out.terms_[idx] = v * c;
    return out;
}

namespace {

// Insert one index into a strictly increasing tuple, tracking the wedge sign.
// Returns false when the index is already present.
bool insert_index(const std::vector<unsigned>& idx, unsigned extra,
                  std::vector<unsigned>& merged, int& sign) {
    merged.clear();
    sign = 1;
    bool placed = false;
    for (unsigned v : idx) {
        if (v == extra) return false;
        if (!placed && v > extra) {
            merged.push_back(extra);
            placed = true;
        }
        if (!placed) sign = -sign;
        merged.push_back(v);
    }
    if (!placed) merged.push_back(extra);
    return true;
}

// Sign of sorting the concatenation of two strictly increasing tuples:
// count the inversions between the blocks. Returns 0 on overlap.
int merge_tuples(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                 std::vector<unsigned>& merged) {
    std::size_t inversions = 0;
    for (unsigned va : a)
        for (unsigned vb : b) {
            if (va == vb) return 0;
            if (va > vb) ++inversions;
        }
    merged.clear();
    merged.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    if (!same_vars(a.vars(), b.vars()))
        throw std::invalid_argument("wedge: mismatched variables");
    DiffForm out(a.degree() + b.degree(), a.vars());
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms()) {
            std::vector<unsigned> merged;
            int sign = merge_tuples(ia, ib, merged);
            if (sign == 0) continue;
            Poly c = ca * cb;
            if (sign < 0) c = -c;
            out.add_term(merged, c);
        }
    return out;
}

DiffForm exterior_derivative(const DiffForm& w) {
    const unsigned n = static_cast<unsigned>(w.vars()->size());
    DiffForm out(w.degree() + 1, w.vars());
    for (const auto& [idx, c] : w.terms())
        for (unsigned i = 0; i < n; ++i) {
            Poly dc = c.partial(i);
            if (dc.is_zero()) continue;
            std::vector<unsigned> merged;
            int sign;
            if (!insert_index(idx, i, merged, sign)) continue;
            out.add_term(merged, sign < 0 ? -dc : dc);
        }
    return out;
}

AltTensor eval_form(const DiffForm& w, const std::vector<Rational>& point) {
    AltTensor out;
    for (const auto& [idx, c] : w.terms()) {
        Rational v = c.eval(point);
        if (v != 0) out[idx] = v;
    }
    return out;
}

DiffForm pullback_linear(const DiffForm& w, const QMatrix& t) {
    const std::size_t n = w.vars()->size();
    if (t.rows() != n || t.cols() != n)
        throw std::invalid_argument("pullback_linear: matrix must be n x n");
    // substitution x_i = sum_j T(i,j) x'_j
    std::vector<Poly> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly p = Poly::zero(w.vars());
        for (std::size_t j = 0; j < n; ++j)
            p = p + Poly::variable(w.vars(), j) * t(i, j);
        images.push_back(p);
    }
    DiffForm out(w.degree(), w.vars());
    for (const auto& [idx, c] : w.terms()) {
        DiffForm term = DiffForm::from_poly(c.subst(images));
        for (unsigned i : idx) {
            DiffForm dxi(1, w.vars());
            for (std::size_t j = 0; j < n; ++j)
                dxi.add_term({static_cast<unsigned>(j)}, Poly::constant(w.vars(), t(i, j)));
            term = wedge(term, dxi);
        }
        out = out + term;
    }
    return out;
}

std::string DiffForm::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string base;
        for (std::size_t t = 0; t < idx.size(); ++t) {
            if (t) base += "^";
            base += "d" + (*vars_)[idx[t]];
        }
        if (base.empty()) {
            os << c.to_string();
        } else if (c.is_constant() && c.constant_value() == 1) {
            os << base;
        } else {
            os << "(" << c.to_string() << ")*" << base;
        }
    }
    return os.str();
}

PolyVectorField::PolyVectorField(VarListPtr vars) : vars_(std::move(vars)) {
    components_.assign(vars_->size(), Poly::zero(vars_));
}

PolyVectorField::PolyVectorField(VarListPtr vars, std::vector<Poly> components)
    : vars_(std::move(vars)), components_(std::move(components)) {
    if (components_.size() != vars_->size())
        throw std::invalid_argument("PolyVectorField: component count mismatch");
    for (const Poly& p : components_)
        if (!p.is_zero() && !same_vars(p.vars(), vars_))
            throw std::invalid_argument("PolyVectorField: component variable mismatch");
}

Poly PolyVectorField::apply(const Poly& f) const {
    Poly acc = Poly::zero(vars_);
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].is_zero()) continue;
        acc = acc + components_[i] * f.partial(i);
    }
    return acc;
}

std::string PolyVectorField::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << components_[i].to_string() << ")*d/d" << (*vars_)[i];
    }
    if (first) os << "0";
    return os.str();
}

PolyVectorField bracket(const PolyVectorField& a, const PolyVectorField& b) {
    if (!same_vars(a.vars(), b.vars()))
        throw std::invalid_argument("bracket: mismatched variables");
    PolyVectorField out(a.vars());
    for (std::size_t i = 0; i < a.nvars(); ++i)
        out.component(i) = a.apply(b.component(i)) - b.apply(a.component(i));
    return out;
}

}  // namespace forge
