#include <random>

#include "doctest.h"
#include "tetra/wronskian.hpp"

using namespace tetra;

namespace {

using RF = RationalFunction;
RF v(const std::string& s) { return RF::variable(s); }
RF q(long p, long d = 1) { return RF(BigRational(p, d)); }
const RF x = v("x");

RF fact(unsigned k) {
    long f = 1;
    for (unsigned j = 2; j <= k; ++j) f *= static_cast<long>(j);
    return q(f);
}

std::vector<RF> monomials_upto(unsigned count) {
    std::vector<RF> out;
    for (unsigned k = 0; k < count; ++k) out.push_back(x.pow(static_cast<int>(k)) / fact(k));
    return out;
}

TruncatedSeries ser(const RF& f, unsigned order) { return TruncatedSeries::from_rf(f, "x", order); }

bool tuple_is(const WrTuple& f, const std::vector<RF>& want) {
    if (f.f.size() != want.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i)
        if (!series_equal(f.f[i], ser(want[i], f.f[i].order()))) return false;
    return true;
}

// random polynomial in x of degree <= deg with small rational coefficients
RF random_poly(std::mt19937_64& rng, unsigned deg, bool nonzero_constant) {
    std::uniform_int_distribution<long> coef(-9, 9);
    RF out(0);
    for (unsigned k = 0; k <= deg; ++k) {
        long c = coef(rng);
        if (k == 0 && nonzero_constant && c == 0) c = 1;
        out += q(c, 1 + static_cast<long>(k)) * x.pow(static_cast<int>(k));
    }
    return out;
}

}  // namespace

TEST_CASE("wronskian of the monomial families") {
    for (unsigned i = 1; i <= 5; ++i) {
        CHECK(rf_equal(wronskian_det(monomials_upto(i)), RF(1)));
        auto shifted = monomials_upto(i - 1);
        shifted.push_back(x.pow(static_cast<int>(i)) / fact(i));
        CHECK(rf_equal(wronskian_det(shifted), x));
    }
    CHECK(rf_equal(wronskian_det({x * x + v("a")}), x * x + v("a")));
    // 2x2 by hand: Wr(f, g) = f g' - f' g
    RF f = RF(1) + x * x, g = x + RF(3) * x.pow(3);
    CHECK(rf_equal(wronskian_det({f, g}), f * g.derivative("x") - f.derivative("x") * g));
}

TEST_CASE("series wronskian agrees with the exact one and checks order") {
    std::vector<RF> us = {RF(1) + x + x * x, x - x.pow(3), x * x / q(2) + x.pow(4)};
    std::vector<TruncatedSeries> ss;
    for (const auto& u : us) ss.push_back(ser(u, 8));
    auto w = wronskian_det(ss);
    CHECK(w.order() == 6);
    CHECK(series_equal(w, ser(wronskian_det(us), 8)));
    std::vector<TruncatedSeries> short_ones(3, ser(RF(1) + x, 1));
    CHECK_THROWS_AS(wronskian_det(short_ones), InsufficientTruncationOrder);
}

TEST_CASE("normalize_collection") {
    auto same = normalize_collection(monomials_upto(4));
    for (std::size_t i = 0; i < 4; ++i) CHECK(rf_equal(same.polys[i], monomials_upto(4)[i]));

    // hand elimination: (2+x)/2 = 1 + x/2; 3x has no constant term, so it scales to x
    auto n = normalize_collection({RF(2) + x, RF(3) * x}, {1, 1});
    CHECK(rf_equal(n.polys[0], RF(1) + x / q(2)));
    CHECK(rf_equal(n.polys[1], x));

    // (1+x)^2 - (1+x) = x + x^2; with c = (3, 5): 3(1+x), 5(x + x^2)
    auto m = normalize_collection({RF(1) + x, (RF(1) + x) * (RF(1) + x)}, {3, 5});
    CHECK(rf_equal(m.polys[0], RF(3) * (RF(1) + x)));
    CHECK(rf_equal(m.polys[1], RF(5) * (x + x * x)));

    CHECK_THROWS_AS(normalize_collection({x, RF(1) + x}), NotInGeneralPosition);
    CHECK_THROWS_AS(normalize_collection({RF(1) + x, RF(2) + RF(2) * x}), NotInGeneralPosition);
}

TEST_CASE("A_i on collections") {
    RF a = v("a"), b = v("b");
    auto u = standard_collection(5);
    auto au = a_on_collection(u, 2, a);
    std::vector<RF> want = {RF(1), x / a + x * x / q(2), a * x * x / q(2), x.pow(3) / q(6), x.pow(4) / q(24)};
    for (std::size_t i = 0; i < 5; ++i) CHECK(rf_equal(au.polys[i], want[i]));
    CHECK(rf_equal(au.params[1], a.inverse()));
    CHECK(rf_equal(au.params[2], a));

    auto bau = a_on_collection(au, 1, b);
    CHECK(rf_equal(bau.polys[0], b.inverse() + x / a + x * x / q(2)));
    CHECK(rf_equal(bau.polys[1], b * (x / a + x * x / q(2))));

    auto shear = a_on_collection(u, 3, RF(1));
    CHECK(rf_equal(shear.polys[2], x * x / q(2) + x.pow(3) / q(6)));
    CHECK(rf_equal(shear.polys[3], x.pow(3) / q(6)));

    CHECK_THROWS_AS(a_on_collection(u, 0, a), IndexOutOfRange);
    CHECK_THROWS_AS(a_on_collection(u, 5, a), IndexOutOfRange);
}

TEST_CASE("wr_map of the worked examples") {
    RF a = v("a"), b = v("b");
    auto u = standard_collection(5);
    CHECK(tuple_is(wr_map(u), {1, 1, 1, 1, 1}));

    auto au = a_on_collection(u, 2, a);
    // det A_2(a) = 1, so f_3 stays 1
    CHECK(tuple_is(wr_map(au), {1, a.inverse() + x, 1, 1, 1}));
    auto bau = a_on_collection(au, 1, b);
    CHECK(tuple_is(wr_map(bau), {b.inverse() + x / a + x * x / q(2), a.inverse() + x, 1, 1, 1}));

    // leading constants are the products of the c_i
    auto c = standard_collection(3, {2, a, b});
    auto f = wr_map(c);
    CHECK(rf_equal(f.a[2], RF(2) * a * b));
    CHECK(f.f[0].order() == 6);

    PolyTuple bad = u;
    bad.polys[1] = x * x;
    CHECK_THROWS_AS(wr_map(bad), NotInGeneralPosition);
}

TEST_CASE("A_i on Wronskian tuples") {
    RF a = v("a"), b = v("b");
    auto f = wr_map(standard_collection(5));
    auto g = a_on_wrtuple(f, 2, a);
    CHECK(tuple_is(g, {1, a.inverse() + x, 1, 1, 1}));
    CHECK(rf_equal(g.a[1], a.inverse()));
    auto h = a_on_wrtuple(g, 1, b);
    CHECK(tuple_is(h, {b.inverse() + x / a + x * x / q(2), a.inverse() + x, 1, 1, 1}));

    // the literal rule scales f_{i+1}, which reproduces the printed a and b(a^-1 + x)
    auto lit = a_on_wrtuple(a_on_wrtuple(f, 2, a, WrMode::Literal), 1, b, WrMode::Literal);
    CHECK(tuple_is(lit, {b.inverse() + x / a + x * x / q(2), b * (a.inverse() + x), a, 1, 1}));

    // x-coefficient of f-hat is a_{i-1} a_{i+1} / a_i
    auto u = standard_collection(4, {v("c1"), v("c2"), v("c3"), v("c4")});
    auto fu = wr_map(u);
    for (std::size_t i = 1; i <= 3; ++i) {
        TruncatedSeries prev = i >= 2 ? fu.f[i - 2] : TruncatedSeries::constant(1, "x", fu.f[0].order());
        auto hat = solve_evolution_ode(fu.f[i - 1], prev * fu.f[i]);
        RF am1 = i >= 2 ? fu.a[i - 2] : RF(1);
        CHECK(hat[0].is_zero());
        CHECK(rf_equal(hat[1], am1 * fu.a[i] / fu.a[i - 1]));
    }

    CHECK_THROWS_AS(a_on_wrtuple(f, 5, a), IndexOutOfRange);
    CHECK_THROWS_AS(a_on_wrtuple(f, 0, a), IndexOutOfRange);
}

TEST_CASE("evolution ODE round trip") {
    std::mt19937_64 rng(20261018);
    for (int trial = 0; trial < 25; ++trial) {
        unsigned order = 4 + static_cast<unsigned>(rng() % 5);
        auto fi = ser(random_poly(rng, 4, true), order);
        auto rhs = ser(random_poly(rng, 5, false), order);
        auto g = solve_evolution_ode(fi, rhs);
        CHECK(g[0].is_zero());
        auto lhs = fi * g.derivative() - fi.derivative() * g;
        CHECK(lhs.order() + 1 >= order);
        CHECK(series_equal(lhs, rhs));
    }
    auto zero = ser(x, 4);
    CHECK_THROWS_AS(solve_evolution_ode(zero, ser(RF(1) + x, 4)), ODEInconsistent);
}

TEST_CASE("commutation theorem") {
    RF a = v("a"), b = v("b");
    std::mt19937_64 rng(7);
    for (std::size_t r1 = 3; r1 <= 5; ++r1) {
        std::vector<RF> raw;
        for (std::size_t i = 0; i < r1; ++i) raw.push_back(random_poly(rng, static_cast<unsigned>(r1), true));
        auto generic = normalize_collection(raw);
        for (std::size_t i = 1; i < r1; ++i) {
            auto std_rep = check_commutation(standard_collection(r1), {{i, a}});
            CHECK_MESSAGE(std_rep.equal, "r+1=" << r1 << " i=" << i << " " << std_rep.mismatch);
            auto gen_rep = check_commutation(generic, {{i, a}});
            CHECK_MESSAGE(gen_rep.equal, "r+1=" << r1 << " i=" << i << " " << gen_rep.mismatch);
        }
    }
    CHECK(check_commutation(standard_collection(4), {{1, b}, {2, a}}).equal);
    CHECK(check_commutation(standard_collection(4), {{2, a}, {1, b}, {3, v("c")}, {2, a * b}}).equal);
    CHECK_FALSE(check_commutation(standard_collection(3), {{1, a}}, 0, WrMode::Literal).equal);
    CHECK_THROWS_AS(check_commutation(standard_collection(3), {{3, a}}), IndexOutOfRange);
}

TEST_CASE("wronskian coordinates") {
    auto word = ReducedWord::parse(3, "121");
    auto blocks = symbolic_blocks(Template::ABC, 3);
    auto cs = wronskian_coordinates(word, blocks, Template::ABC);
    REQUIRE(cs.size() == 4);
    CHECK(rf_equal(cs[0].w, RF(1)));
    auto prefixes = product_along_word(word, blocks, Template::ABC);
    for (std::size_t k = 1; k <= 3; ++k) {
        CHECK(cs[k].v.size() == k);
        CHECK_FALSE(cs[k].e.is_zero());
        CHECK(rf_equal(cs[k].e, coefficient(cs[k].w, "x", 0)));
        CHECK(in_class(permutation_matrix(cs[k].sigma) * prefixes[k], TriangularityClass::cUpperB));
    }
    // k = 1 by hand: v_1 is the first entry of iota(sigma) A_1 (x^2/2, x, 1)
    MatrixRF col(3, 1);
    col(0, 0) = x * x / q(2);
    col(1, 0) = x;
    col(2, 0) = 1;
    auto v1 = permutation_matrix(cs[1].sigma) * prefixes[1] * col;
    CHECK(rf_equal(cs[1].w, v1(0, 0)));
}
