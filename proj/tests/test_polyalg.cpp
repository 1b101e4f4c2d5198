#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "forge/polyalg.hpp"

#include <functional>
#include <random>

using namespace forge;

namespace {

Rational rnd_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
    return Rational(num(rng), den(rng));
}

Poly random_poly(std::mt19937_64& rng, const VarListPtr& vars, unsigned max_deg, int nterms) {
    std::uniform_int_distribution<unsigned> e(0, max_deg);
    Poly p = Poly::zero(vars);
    for (int t = 0; t < nterms; ++t) {
        Exps exps(vars->size());
        unsigned budget = max_deg;
        for (auto& x : exps) {
            x = e(rng) % (budget + 1);
            budget -= x;
        }
        p.add_term(exps, rnd_q(rng));
    }
    return p;
}

DiffForm random_form(std::mt19937_64& rng, const VarListPtr& vars, unsigned degree) {
    DiffForm w(degree, vars);
    const unsigned n = static_cast<unsigned>(vars->size());
    std::vector<unsigned> idx(degree);
    // iterate over all strictly increasing tuples, keep a random sample
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned lo) {
        if (pos == degree) {
            if (std::uniform_int_distribution<int>(0, 1)(rng))
                w.add_term(idx, random_poly(rng, vars, 2, 2));
            return;
        }
        for (unsigned i = lo; i < n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    return w;
}

}  // namespace

TEST_CASE("grlex order") {
    CHECK(grlex_before({1, 0}, {0, 2}));
    CHECK(grlex_before({2, 0}, {1, 1}));
    CHECK(grlex_before({1, 1}, {0, 2}));
    CHECK(!grlex_before({0, 2}, {2, 0}));
}

TEST_CASE("poly arithmetic basics") {
    auto vars = make_vars({"x", "y"});
    Poly x = Poly::variable(vars, 0), y = Poly::variable(vars, 1);
    Poly one = Poly::constant(vars, 1);

    // d/dx (x^2 y) = 2xy
    Poly p = x * x * y;
    CHECK(p.partial(0) == x * y * Rational(2));

    // (x+1)(x-1) = x^2 - 1
    CHECK((x + one) * (x - one) == x * x - one);

    // eval x - y at x = y = 5/3
    Poly q = x - y;
    CHECK(q.eval({Rational(5, 3), Rational(5, 3)}) == 0);

    CHECK(p.to_string() == "x^2*y");
    CHECK((x * x - one).to_string() == "x^2 - 1");
}

TEST_CASE("poly error paths") {
    auto vars = make_vars({"x", "y"});
    auto other = make_vars({"z"});
    Poly x = Poly::variable(vars, 0);
    Poly z = Poly::variable(other, 0);
    CHECK_THROWS_AS(x + z, std::invalid_argument);
    CHECK_THROWS_AS(x.partial(5), std::invalid_argument);
    CHECK_THROWS_AS(x.eval({Rational(1)}), std::invalid_argument);
}

TEST_CASE("exterior derivative examples") {
    auto vars = make_vars({"x1", "x2", "x3"});
    Poly x3 = Poly::variable(vars, 2);
    // w = dx2 - x3 dx1
    DiffForm w(1, vars);
    w.add_term({1}, Poly::constant(vars, 1));
    w.add_term({0}, -x3);
    DiffForm dw = exterior_derivative(w);
    // dw = dx1 ^ dx3
    DiffForm expected(2, vars);
    expected.add_term({0, 2}, Poly::constant(vars, 1));
    CHECK(dw == expected);

    // constant-coefficient 1-form is closed
    DiffForm c(1, vars);
    c.add_term({0}, Poly::constant(vars, 3));
    c.add_term({2}, Poly::constant(vars, Rational(-1, 2)));
    CHECK(exterior_derivative(c).is_zero());

    // d(d f) = 0 for f = x1 x2
    Poly f = Poly::variable(vars, 0) * Poly::variable(vars, 1);
    DiffForm df = exterior_derivative(DiffForm::from_poly(f));
    CHECK(exterior_derivative(df).is_zero());
}

TEST_CASE("wedge basics") {
    auto vars = make_vars({"x1", "x2"});
    DiffForm dx1 = DiffForm::d_var(vars, 0), dx2 = DiffForm::d_var(vars, 1);
    CHECK(wedge(dx1, dx1).is_zero());
    CHECK((wedge(dx1, dx2) + wedge(dx2, dx1)).is_zero());

    // eval_form(x2 dx1 at x2 = 2) = 2 dx1
    DiffForm w = dx1 * Poly::variable(vars, 1);
    AltTensor t = eval_form(w, {Rational(7), Rational(2)});
    REQUIRE(t.size() == 1);
    CHECK(t.at({0}) == 2);
}

TEST_CASE("d after d vanishes on random forms") {
    std::mt19937_64 rng(5);
    auto vars = make_vars({"x1", "x2", "x3", "x4"});
    for (int trial = 0; trial < 100; ++trial) {
        unsigned q = trial % 3;
        DiffForm w = random_form(rng, vars, q);
        CHECK(exterior_derivative(exterior_derivative(w)).is_zero());
    }
}

TEST_CASE("graded Leibniz rule on random pairs") {
    std::mt19937_64 rng(9);
    auto vars = make_vars({"x1", "x2", "x3"});
    for (int trial = 0; trial < 40; ++trial) {
        unsigned qa = trial % 2, qb = (trial / 2) % 2;
        DiffForm a = random_form(rng, vars, qa);
        DiffForm b = random_form(rng, vars, qb);
        DiffForm lhs = exterior_derivative(wedge(a, b));
        DiffForm rhs = wedge(exterior_derivative(a), b) +
                       (qa % 2 == 0 ? wedge(a, exterior_derivative(b))
                                    : wedge(a, exterior_derivative(b)) * Rational(-1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("graded commutativity of wedge") {
    std::mt19937_64 rng(13);
    auto vars = make_vars({"x1", "x2", "x3", "x4"});
    for (int trial = 0; trial < 30; ++trial) {
        unsigned qa = trial % 3, qb = (trial / 3) % 3;
        DiffForm a = random_form(rng, vars, qa);
        DiffForm b = random_form(rng, vars, qb);
        DiffForm ab = wedge(a, b), ba = wedge(b, a);
        if ((qa * qb) % 2 == 1) ba = ba * Rational(-1);
        CHECK(ab == ba);
    }
}

TEST_CASE("eval commutes with ring operations") {
    std::mt19937_64 rng(17);
    auto vars = make_vars({"x", "y", "z"});
    std::vector<Rational> pt = {Rational(1, 2), Rational(-2), Rational(3)};
    for (int trial = 0; trial < 30; ++trial) {
        Poly a = random_poly(rng, vars, 3, 4), b = random_poly(rng, vars, 3, 4);
        CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
        CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
    }
}

TEST_CASE("vector field bracket is antisymmetric and satisfies Jacobi") {
    std::mt19937_64 rng(21);
    auto vars = make_vars({"x", "y"});
    for (int trial = 0; trial < 10; ++trial) {
        PolyVectorField a(vars, {random_poly(rng, vars, 2, 3), random_poly(rng, vars, 2, 3)});
        PolyVectorField b(vars, {random_poly(rng, vars, 2, 3), random_poly(rng, vars, 2, 3)});
        PolyVectorField c(vars, {random_poly(rng, vars, 2, 3), random_poly(rng, vars, 2, 3)});
        PolyVectorField ab = bracket(a, b), ba = bracket(b, a);
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(ab.component(i) == -ba.component(i));
        PolyVectorField jac1 = bracket(a, bracket(b, c));
        PolyVectorField jac2 = bracket(b, bracket(c, a));
        PolyVectorField jac3 = bracket(c, bracket(a, b));
        for (std::size_t i = 0; i < 2; ++i)
            CHECK((jac1.component(i) + jac2.component(i) + jac3.component(i)).is_zero());
    }
}

TEST_CASE("linear pullback respects wedge") {
    std::mt19937_64 rng(29);
    auto vars = make_vars({"x1", "x2", "x3"});
    QMatrix t(3, 3);
    t(0, 0) = 1; t(0, 1) = 2; t(1, 1) = 1; t(2, 0) = -1; t(2, 2) = 3;
    for (int trial = 0; trial < 10; ++trial) {
        DiffForm a = random_form(rng, vars, 1), b = random_form(rng, vars, 1);
        CHECK(pullback_linear(wedge(a, b), t) ==
              wedge(pullback_linear(a, t), pullback_linear(b, t)));
        CHECK(pullback_linear(exterior_derivative(a), t) ==
              exterior_derivative(pullback_linear(a, t)));
    }
}
