#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "forge/exactlin.hpp"

#include <random>

using namespace forge;

namespace {

QMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    std::size_t r = rows.size();
    std::size_t c = rows.begin()->size();
    QMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (int v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    return Rational(num(rng), den(rng));
}

QMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = random_rational(rng);
    return m;
}

}  // namespace

TEST_CASE("rank basics") {
    CHECK(rank(QMatrix::identity(3)) == 3);
    CHECK(rank(QMatrix(2, 5)) == 0);
    CHECK(rank(from_rows({{1, 2}, {2, 4}, {3, 6}})) == 1);
    CHECK(rank(QMatrix(0, 4)) == 0);
    CHECK(rank(QMatrix(4, 0)) == 0);
}

TEST_CASE("rank with rational entries") {
    QMatrix m(2, 2);
    m(0, 0) = Rational(1, 2);
    m(0, 1) = Rational(1, 3);
    m(1, 0) = Rational(3, 2);
    m(1, 1) = 1;
    CHECK(rank(m) == 1);
    m(1, 1) = 2;
    CHECK(rank(m) == 2);
}

TEST_CASE("nullspace examples") {
    // [[1,1]] -> span{(1,-1)}
    Subspace s = nullspace(from_rows({{1, 1}}));
    CHECK(s.dim() == 1);
    CHECK(s.basis()(0, 0) == 1);
    CHECK(s.basis()(0, 1) == -1);

    CHECK(nullspace(QMatrix::identity(4)).dim() == 0);

    // [[1,0,1],[0,1,1]] -> dim 1, (-1,-1,1) scaled to leading 1
    Subspace t = nullspace(from_rows({{1, 0, 1}, {0, 1, 1}}));
    CHECK(t.dim() == 1);
    CHECK(t.basis()(0, 0) == 1);
    CHECK(t.basis()(0, 1) == 1);
    CHECK(t.basis()(0, 2) == -1);
    // verify by substitution
    QMatrix m = from_rows({{1, 0, 1}, {0, 1, 1}});
    QMatrix prod = m * t.basis().transpose();
    CHECK(prod.is_zero());
}

TEST_CASE("rank-nullity on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + trial % 6, c = 1 + (trial * 3) % 7;
        QMatrix m = random_matrix(rng, r, c);
        Subspace ns = nullspace(m);
        CHECK(rank(m) + ns.dim() == c);
        if (ns.dim() > 0) CHECK((m * ns.basis().transpose()).is_zero());
    }
}

TEST_CASE("image and intersect examples") {
    Subspace im = image(from_rows({{2, 4}, {1, 2}}));
    CHECK(im.dim() == 1);
    CHECK(im.basis()(0, 0) == 1);
    CHECK(im.basis()(0, 1) == 2);

    Subspace a = image(from_rows({{1, 0, 0}, {0, 1, 0}}));
    Subspace b = image(from_rows({{0, 1, 0}, {0, 0, 1}}));
    Subspace e2 = image(from_rows({{0, 1, 0}}));
    CHECK(intersect(a, b) == e2);
}

TEST_CASE("project_coords examples") {
    Subspace s = image(from_rows({{1, 0, 5}}));
    Subspace p = project_coords(s, {0, 1});
    CHECK(p.ambient_dim() == 2);
    CHECK(p.dim() == 1);
    CHECK(p.basis()(0, 0) == 1);
    CHECK(p.basis()(0, 1) == 0);
    CHECK_THROWS_AS(project_coords(s, {0, 7}), std::out_of_range);
}

TEST_CASE("project_coords composes as intersection of kept sets") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Subspace s = image(random_matrix(rng, 2, 6));
        std::vector<std::size_t> k1 = {0, 2, 3, 5};
        std::vector<std::size_t> k2pos = {1, 3};  // positions within k1 -> coords {2,5}
        Subspace two_step = s.project_coords(k1).project_coords(k2pos);
        Subspace one_step = s.project_coords({2, 5});
        CHECK(two_step == one_step);
    }
}

TEST_CASE("canonical form: set equality iff stored-basis equality") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        QMatrix m = random_matrix(rng, 3, 5);
        Subspace s = image(m);
        // Re-span by random invertible recombinations of the basis rows.
        QMatrix t = random_matrix(rng, s.dim() + 1, s.dim() == 0 ? 1 : s.dim());
        if (s.dim() == 0) continue;
        QMatrix newrows(t.rows(), 5);
        for (std::size_t i = 0; i < t.rows(); ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                Rational acc = 0;
                for (std::size_t k = 0; k < s.dim(); ++k) acc += t(i, k) * s.basis()(k, j);
                newrows(i, j) = acc;
            }
        Subspace s2 = image(newrows);
        // double inclusion iff identical bases
        bool incl = s.contains(s2) && s2.contains(s);
        CHECK(incl == (s == s2));
        if (incl) CHECK(s.basis() == s2.basis());
    }
}

TEST_CASE("sum and intersection dimensions") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        Subspace a = image(random_matrix(rng, 2, 5));
        Subspace b = image(random_matrix(rng, 3, 5));
        CHECK(a.sum(b).dim() + a.intersect(b).dim() == a.dim() + b.dim());
        CHECK(a.contains(a.intersect(b)));
        CHECK(a.sum(b).contains(a));
    }
}

TEST_CASE("rref idempotence and inverse") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        QMatrix m = random_matrix(rng, 4, 4);
        QMatrix r = rref(m);
        CHECK(rref(r) == r);
        QMatrixInverse mi = inverse(m);
        if (rank(m) == 4) {
            REQUIRE(mi.ok);
            CHECK(m * mi.inv == QMatrix::identity(4));
        } else {
            CHECK(!mi.ok);
        }
    }
}

TEST_CASE("coordinate_slice") {
    // span{(1,0,2),(0,1,3)}; slice v0 = 0 then keep coords 1,2
    Subspace s = image(from_rows({{1, 0, 2}, {0, 1, 3}}));
    Subspace sl = s.coordinate_slice({0}, {1, 2});
    CHECK(sl.dim() == 1);
    CHECK(sl.basis()(0, 0) == 1);
    CHECK(sl.basis()(0, 1) == 3);
}
