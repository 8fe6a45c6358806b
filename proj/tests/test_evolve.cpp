#include <random>

#include "doctest.h"
#include "tetra/evolve.hpp"

using namespace tetra;

namespace {

using RF = RationalFunction;
RF v(const std::string& s) { return RF::variable(s); }

MatrixRF rows(std::vector<std::vector<RF>> r) { return MatrixRF::from_rows(r); }

}  // namespace

TEST_CASE("embeddings") {
    RF a = v("a"), b = v("b"), c = v("c"), d = v("d");
    auto A = template_matrix(Template::ABC, {a, b, c});
    CHECK(phi_embed(A, 2, 3).equals(rows({{1, 0, 0}, {0, a, b}, {0, c, 0}})));
    CHECK(phi_embed(MatrixRF::identity(2), 3, 5).equals(MatrixRF::identity(5)));
    CHECK(m13_embed(rows({{a, b}, {c, d}})).equals(rows({{a, 0, b}, {0, 1, 0}, {c, 0, d}})));
    CHECK_THROWS_AS(phi_embed(A, 3, 3), IndexOutOfRange);
    CHECK_THROWS_AS(phi_embed(A, 0, 3), IndexOutOfRange);
}

TEST_CASE("products along words match displays") {
    auto bl = symbolic_blocks(Template::ABC, 3);
    RF a1 = v("a1"), b1 = v("b1"), c1 = v("c1"), a2 = v("a2"), b2 = v("b2"), c2 = v("c2"), a3 = v("a3"),
       b3 = v("b3"), c3 = v("c3");
    auto p = product_along_word(3, {1, 2, 1}, bl, Template::ABC);
    REQUIRE(p.size() == 4);
    CHECK(p[2].equals(rows({{a1, b1 * a2, b1 * b2}, {c1, 0, 0}, {0, c2, 0}})));
    CHECK(p[3].equals(rows({{a1 * a3 + b1 * a2 * c3, a1 * b3, b1 * b2}, {c1 * a3, c1 * b3, 0}, {c2 * c3, 0, 0}})));
    auto q = product_along_word(3, {2, 1, 2}, bl, Template::ABC);
    CHECK(q[3].equals(rows({{a2, b2 * a3, b2 * b3}, {a1 * c2, b1 * c3, 0}, {c1 * c2, 0, 0}})));

    auto ab = product_along_word(3, {1, 2, 1}, symbolic_blocks(Template::AB, 3), Template::AB).back();
    CHECK(ab.equals(rows({{a1 * a3 + b1 * a2 / b3, a1 * b3, b1 * b2},
                          {a3 / b1, b3 / b1, 0},
                          {RF(1) / (b2 * b3), 0, 0}})));

    auto va = product_along_word(ReducedWord::parse(4, "121321"), symbolic_blocks(Template::A, 6), Template::A).back();
    CHECK(in_class(va, TriangularityClass::cUpperB));
    for (std::size_t i = 0; i < 4; ++i) {
        const RF& e = va(i, 3 - i);
        CHECK((rf_equal(e, RF(1)) || rf_equal(e, RF(-1))));
    }
    CHECK_THROWS_AS(product_along_word(3, {1, 2}, bl, Template::ABC), ArityMismatch);
}

TEST_CASE("triangularity classes") {
    CHECK(classify_triangularity(anti_identity(4)) == TriangularityClass::cUpperN);
    CHECK(in_class(anti_identity(4), TriangularityClass::cLowerN));
    auto bl = symbolic_blocks(Template::ABC, 2);
    auto dbl = product_along_word(3, {1, 2}, bl, Template::ABC).back();
    CHECK(classify_triangularity(dbl) == TriangularityClass::None);
    CHECK(classify_triangularity(permutation_matrix({1, 3, 2}) * dbl) == TriangularityClass::cUpperB);
    MatrixRF dense = rows({{v("p"), v("q")}, {v("r"), v("s")}});
    CHECK(classify_triangularity(dense) == TriangularityClass::None);
    CHECK(classify_triangularity(MatrixRF::identity(3)) == TriangularityClass::UpperN);
    CHECK(classify_triangularity(rows({{v("p"), 0}, {v("r"), v("s")}})) == TriangularityClass::LowerB);
}

TEST_CASE("determinant and inverse") {
    RF a = v("a"), b = v("b"), c = v("c"), d = v("d");
    CHECK(rf_equal(determinant(rows({{a, b}, {c, d}})), a * d - b * c));
    auto m = rows({{a, b, 1}, {c, 2, d}, {0, a, 3}});
    // Sarrus oracle
    RF sarrus = a * 2 * 3 + b * d * 0 + RF(1) * c * a - RF(1) * 2 * 0 - b * c * 3 - a * d * a;
    CHECK(rf_equal(determinant(m), sarrus));
    CHECK((m * inverse(m)).equals(MatrixRF::identity(3)));
    CHECK_THROWS_AS(inverse(rows({{a, b}, {a, b}})), DivisionByZeroFunction);
    for (std::size_t n = 2; n <= 4; ++n) CHECK(determinant_multiplicativity(n).passed);
}

TEST_CASE("quaternity and reversal") {
    for (std::size_t n = 1; n <= 4; ++n) {
        CHECK(quaternity_check(n, false).passed);
        CHECK(quaternity_check(n, true).passed);
        CHECK(reversal_identities(n).passed);
    }
    // explicit 2x2 loop
    RF a = v("a"), b = v("b"), d = v("d");
    auto up = rows({{a, b}, {0, d}});
    auto I = anti_identity(2);
    CHECK((I * up).equals(rows({{0, d}, {a, b}})));
    CHECK((I * up * I).equals(rows({{d, 0}, {b, a}})));
    CHECK((I * (I * up * I)).equals(rows({{b, a}, {d, 0}})));
    CHECK(((I * (I * up * I)) * I).equals(up));
}

TEST_CASE("SL_n identities and evolutions") {
    RF a = v("a"), b = v("b");
    auto comm = elementary(3, 1, 2, a) * elementary(3, 2, 3, b) * elementary(3, 1, 2, -a) * elementary(3, 2, 3, -b);
    CHECK(comm.equals(elementary(3, 1, 3, a * b)));
    CHECK((elementary(4, 1, 2, a) * elementary(4, 1, 2, -a)).equals(MatrixRF::identity(4)));
    CHECK(elementary_identities(3).passed);
    CHECK(elementary_identities(4).passed);
    CHECK_THROWS_AS(elementary(3, 2, 2, a), IndexOutOfRange);
    CHECK(triple_quadruple_evolution().passed);
    CHECK(bz_braid_check().passed);
}

TEST_CASE("long products are c-upper") {
    CHECK_NOTHROW(long_product_triangularity(ReducedWord::parse(3, "121")));
    for (const auto& w : enumerate_reduced_words(4)) CHECK_NOTHROW(long_product_triangularity(w));
    auto neg = product_along_word(3, {1, 1, 2}, symbolic_blocks(Template::ABC, 3), Template::ABC).back();
    CHECK_FALSE(in_class(neg, TriangularityClass::cUpperB));
}

TEST_CASE("permutation factorization") {
    auto bl = symbolic_blocks(Template::ABC, 2);
    auto dbl = product_along_word(3, {1, 2}, bl, Template::ABC).back();
    // interchange rows 2, 3
    CHECK(permutation_factorization(dbl, Side::Left) == Permutation{1, 3, 2});
    // interchange columns 1, 2
    CHECK(permutation_factorization(dbl, Side::Right) == Permutation{2, 1, 3});
    CHECK_THROWS_AS(permutation_factorization(MatrixRF(3, 3), Side::Left), NoPermutation);
    CHECK_THROWS_AS(permutation_factorization(rows({{v("p"), v("q")}, {v("r"), v("s")}}), Side::Left),
                    NoPermutation);

    for (int n = 3; n <= 4; ++n)
        for (const auto& w : enumerate_reduced_words(n)) {
            auto w0 = longest_permutation(n);
            for (const auto& row : factorization_table(w, Side::Right)) CHECK(row.found == row.suffix);
            for (const auto& row : factorization_table(w, Side::Left))
                CHECK(row.found == compose(w0, inverse(row.prefix)));
        }
}

TEST_CASE("property: random 3x3 products, det and inverse") {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        MatrixRF x(3, 3), y(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                x(i, j) = RF(d(rng)) + RF(d(rng)) * v("s");
                y(i, j) = RF(d(rng));
            }
        CHECK(rf_equal(determinant(x * y), determinant(x) * determinant(y)));
        CHECK((x * y).transpose().equals(y.transpose() * x.transpose()));
        if (!determinant(x).is_zero()) CHECK((inverse(x) * x).equals(MatrixRF::identity(3)));
    }
}
