#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "tetra/formulas.hpp"
#include "tetra/verify.hpp"

using namespace tetra;

namespace {

using RF = RationalFunction;
RF v(const std::string& s) { return RF::variable(s); }

RF expr(const std::string& s, const Bindings& names = {}) {
    std::map<std::string, Variable> u;
    auto ast = parse_expr(s);
    std::function<void(const ExprAst&)> walk = [&](const ExprAst& n) {
        if (n.kind == ExprAst::Kind::Var) u[n.name] = Variable(n.name);
        for (const auto& c : n.children) walk(c);
    };
    walk(ast);
    RF f = ast_to_rf(ast, u);
    return names.empty() ? f : substitute(f, names);
}

std::vector<RF> row(const std::vector<std::string>& xs, const Bindings& names = {}) {
    std::vector<RF> out;
    for (const auto& x : xs) out.push_back(expr(x, names));
    return out;
}

bool same(const std::vector<RF>& a, const std::vector<RF>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!rf_equal(a[i], b[i])) return false;
    return true;
}

const Assignment* find_assignment(const SolveResult& s, const std::string& name) {
    for (const auto& a : s.assignments)
        if (a.paper_name == name) return &a;
    return nullptr;
}

std::vector<FreeRecord> all_frees(const SonnetRun& r) {
    auto f = r.plus.frees();
    auto g = r.minus.frees();
    f.insert(f.end(), g.begin(), g.end());
    return f;
}

// paper names -> fresh variables of a run
Bindings to_vars(const std::vector<FreeRecord>& frees) {
    Bindings b;
    for (const auto& f : frees) b[f.paper_name] = v(f.var);
    return b;
}

}  // namespace

TEST_CASE("naming helpers") {
    CHECK(step_tag(1) == "p");
    CHECK(step_tag(3) == "ppp");
    CHECK(step_tag(4) == "iv");
    CHECK(step_tag(7) == "vii");
    CHECK(step_tag(9) == "ix");
    CHECK(component_label(7, 2) == "4a");
    CHECK(component_label(8, 2) == "4b");
    CHECK(component_label(5, 1) == "5");
    auto s = symbolic_start(2, 3);
    CHECK(rf_equal(s[1][2], v("c2")));
}

TEST_CASE("very small evolution") {
    auto run = run_sonnet(builtin("very_small"));
    const auto& p = run.plus.steps;
    REQUIRE(p.size() == 8);
    CHECK(same(p[1].state.flat(), row({"a3", "a1*a3+a2", "a1", "a4", "a5", "a6"})));
    CHECK(same(p[2].state.flat(), row({"a3", "a1*a3+a2", "a5", "a1*a5+a4", "a1", "a6"})));
    CHECK(same(p[4].state.flat(), row({"a3", "a5", "a1*a3+a2", "a1*a5+a4", "a6", "a1"})));
    auto fin = row({"a6", "a3*a6+a5", "a1*a3*a6+a2*a6+a1*a5+a4", "a3", "a1*a3+a2", "a1"});
    CHECK(same(run.plus.final_state().flat(), fin));
    CHECK(same(run.minus.steps[3].state.flat(), row({"a1", "a6", "a2*a6+a4", "a2", "a3*a6+a5", "a3"})));
    CHECK(same(run.minus.final_state().flat(), fin));
    CHECK(run.plus.final_state().word.str() == "321323");
    auto m = compare_traces(run.plus, run.minus);
    CHECK(m.all_equal());
    for (const auto& c : m.components) CHECK(c.verdict == Verdict::Equal);
    auto c = certify_random(run.plus, run.minus, 10, 3);
    CHECK(c.passed == 10);
}

TEST_CASE("lusztig tables") {
    Bindings g = {{"al", expr("a1+a3")},
                  {"ga", expr("a3+a6")},
                  {"be", expr("a1+a3+a6")},
                  {"de", expr("a2*a3+a2*a6+a5*a6")},
                  {"ep", expr("a1*a2+a1*a5+a3*a5")}};
    CHECK(rf_equal(expr("a6*ep + a2*a3*be", g), expr("al*de", g)));
    CHECK(rf_equal(expr("a1*de + a3*a5*be", g), expr("ga*ep", g)));

    auto run = run_sonnet(builtin("lusztig"));
    // upper way of the tables is the internal lower chain, read reversed
    std::vector<std::vector<std::string>> upper = {
        {"a6", "a5", "a4", "a3", "a2", "a1"},
        {"a6", "a5", "a3", "a4", "a2", "a1"},
        {"a3*a5/ga", "ga", "a5*a6/ga", "a4", "a2", "a1"},
        {"a3*a5/ga", "ga", "a2*a4*ga/de", "de/ga", "a4*a5*a6/de", "a1"},
        {"a3*a5/ga", "a2*a4*ga/de", "ga", "de/ga", "a1", "a4*a5*a6/de"},
        {"a3*a5/ga", "a2*a4*ga/de", "a1*de/(ga*be)", "be", "de/be", "a4*a5*a6/de"},
        {"a1*a2*a4/ep", "ep/be", "a2*a3*a4*a5*be/(de*ep)", "be", "de/be", "a4*a5*a6/de"}};
    std::vector<std::string> upper_words = {"123121", "121321", "212321", "213231", "231213", "232123", "323123"};
    std::vector<std::vector<std::string>> lower = {
        {"a6", "a5", "a4", "a3", "a2", "a1"},
        {"a6", "a5", "a4", "a1*a2/al", "al", "a2*a3/al"},
        {"a6", "a1*a2*a4/ep", "ep/al", "a4*a5*al/ep", "al", "a2*a3/al"},
        {"a1*a2*a4/ep", "a6", "ep/al", "al", "a4*a5*al/ep", "a2*a3/al"},
        {"a1*a2*a4/ep", "ep/be", "be", "a6*ep/(al*be)", "a4*a5*al/ep", "a2*a3/al"},
        {"a1*a2*a4/ep", "ep/be", "be", "a2*a3*a4*a5*be/(ep*de)", "de/be", "a4*a5*a6/de"},
        {"a1*a2*a4/ep", "ep/be", "a2*a3*a4*a5*be/(de*ep)", "be", "de/be", "a4*a5*a6/de"}};
    std::vector<std::string> lower_words = {"123121", "123212", "132312", "312132", "321232", "321323", "323123"};

    auto up = present_reversed(run.minus);
    auto lo = present_reversed(run.plus);
    REQUIRE(up.size() == 7);
    REQUIRE(lo.size() == 7);
    CHECK(up[4].moves == "L(2)L(5)");
    CHECK(lo[3].moves == "L(1)L(4)");
    for (std::size_t i = 0; i < 7; ++i) {
        CAPTURE(i);
        CHECK(up[i].word == upper_words[i]);
        CHECK(same(up[i].params, row(upper[i], g)));
        CHECK(lo[i].word == lower_words[i]);
        CHECK(same(lo[i].params, row(lower[i], g)));
    }
    CHECK(compare_traces(run.plus, run.minus).all_equal());
}

TEST_CASE("sergeev tables") {
    Bindings g = {{"al", expr("a1*a3-a2")}, {"alp", expr("a3*a6-a5")}, {"be", expr("a1*a5-a4")},
                  {"bep", expr("a2*a6-a4")}, {"ga", expr("a1*a3*a6-a1*a5-a2*a6+a4")}};
    g["de"] = g["alp"];
    g["dep"] = g["al"];
    g["gap"] = g["ga"];
    auto m = MatrixRF::from_rows({{v("a1"), v("a2"), v("a4")}, {RF(1), v("a3"), v("a5")}, {RF(0), RF(1), v("a6")}});
    CHECK(rf_equal(determinant(m), g["ga"]));
    CHECK(rf_equal(expr("a6*al - be", g), expr("a1*alp - bep", g)));

    auto run = run_sonnet(builtin("sergeev_alpha"));
    std::vector<std::vector<std::string>> ev1 = {{"a6", "a5", "a4", "a3", "a2", "a1"},
                                                 {"a6", "a5", "a3", "a4", "a2", "a1"},
                                                 {"a3", "alp", "a6", "a4", "a2", "a1"},
                                                 {"a3", "alp", "a2", "bep", "a6", "a1"},
                                                 {"a3", "a2", "alp", "bep", "a1", "a6"},
                                                 {"a3", "a2", "a1", "gap", "alp", "a6"},
                                                 {"a1", "dep", "a3", "gap", "alp", "a6"}};
    std::vector<std::vector<std::string>> ev2 = {{"a6", "a5", "a4", "a3", "a2", "a1"},
                                                 {"a6", "a5", "a4", "a1", "al", "a3"},
                                                 {"a6", "a1", "be", "a5", "al", "a3"},
                                                 {"a1", "a6", "be", "al", "a5", "a3"},
                                                 {"a1", "al", "ga", "a6", "a5", "a3"},
                                                 {"a1", "al", "ga", "a3", "de", "a6"},
                                                 {"a1", "al", "a3", "ga", "de", "a6"}};
    auto up = present_reversed(run.minus);
    auto lo = present_reversed(run.plus);
    REQUIRE(up.size() == 7);
    REQUIRE(lo.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
        CAPTURE(i);
        CHECK(same(up[i].params, row(ev1[i], g)));
        CHECK(same(lo[i].params, row(ev2[i], g)));
    }
    CHECK(compare_traces(run.plus, run.minus).all_equal());
}

TEST_CASE("smaller2 sonnet") {
    auto run = run_sonnet(builtin("smaller2"));
    std::vector<std::string> names;
    for (const auto& f : all_frees(run)) names.push_back(f.paper_name);
    CHECK(names == std::vector<std::string>{"a1p", "a3pp", "a3v", "a1vi", "a4pp", "a2ppp", "a2vi", "a4vii"});

    auto m = compare_traces(run.plus, run.minus);
    CHECK(m.all_equal());
    CHECK(std::count_if(m.components.begin(), m.components.end(),
                        [](const ComponentMatch& c) { return c.verdict == Verdict::EqualAfterSolving; }) > 0);
    CHECK(m.solve.residual.empty());
    CHECK(m.solve.absent == std::vector<std::string>{"a4pp"});
    CHECK(std::find(m.solve.unconstrained.begin(), m.solve.unconstrained.end(), "a4pp") !=
          m.solve.unconstrained.end());

    // computed relations, checked with an independent substitution
    Bindings p = to_vars(all_frees(run));
    auto sol = m.solve.bindings();
    auto s = [&](const std::string& e) { return substitute(expr(e, p), sol); };
    CHECK(rf_equal(s("a1vi"), s("a2ppp")));
    CHECK(rf_equal(s("a2vi"), s("a1p*a3v*(a5*b3 + a3*a6*b6)/(a3*a6*b6)")));
    CHECK(rf_equal(s("a4vii*a2ppp"), s("a3pp*a3*a6*b6/(a5*b3)")));

    // the printed solutions form a special case of the computed family
    Bindings printed = {{"a1vi", expr("a6*b4*b5*b6/(b1*b2*b3)")},
                        {"a2ppp", expr("a6*b4*b5*b6/(b1*b2*b3)")},
                        {"a3pp", expr("a5*b4/b6")},
                        {"a4vii", expr("a3*b1*b2/(b5*b6)")},
                        {"a2vi", expr("a1*b6/b4")},
                        {"a3v", expr("a1*a3*a6*b6^2/(b4*(a5*b3 + a3*a6*b6)*a1p)")}};
    Bindings pv;
    for (const auto& [k, val] : printed) pv[p[k].render()] = substitute(val, p);
    auto up = run.plus.final_state().flat(), lo = run.minus.final_state().flat();
    for (std::size_t i = 0; i < up.size(); ++i) CHECK(rf_equal(substitute(up[i], pv), substitute(lo[i], pv)));
    // but the printed a1vi is not forced: it stays a free parameter here
    const auto* a1vi = find_assignment(m.solve, "a1vi");
    REQUIRE(a1vi != nullptr);
    CHECK(a1vi->value.contains(p["a2ppp"].render()));
}

TEST_CASE("smaller2 certification") {
    auto run = run_sonnet(builtin("smaller2"));
    auto c1 = certify_random(run.plus, run.minus, 100, 7);
    CHECK(c1.passed == 100);
    auto c2 = certify_random(run.plus, run.minus, 100, 7);
    CHECK(c2.resamples == c1.resamples);

    Transform bad = builtin("smaller2");
    bad.outputs[3] = expr("-a1p*b1/a3");
    auto broken = run_sonnet(bad);
    CHECK_THROWS_AS(certify_random(broken.plus, broken.minus, 20, 7), CertificationFailed);
    CHECK_THROWS_AS(compare_traces(broken.plus, broken.minus), ComparisonFailed);
}

TEST_CASE("solve_frees") {
    std::vector<FreeRecord> u = {{"t1", "x", ""}, {"t2", "y", ""}};
    auto r = solve_frees({v("t1") * v("a"), v("t2")}, {v("b"), v("t1") + v("a")}, u);
    REQUIRE(r.assignments.size() == 2);
    CHECK(r.assignments[0].paper_name == "x");
    CHECK(rf_equal(r.assignments[1].value, v("b") / v("a") + v("a")));
    CHECK(r.relations.empty());
    CHECK(r.unconstrained.empty());
    CHECK_THROWS_AS(solve_frees({v("t1") * v("t1")}, {v("a")}, u), SolveStuck);
    auto rel = solve_frees({v("t1") * v("t2")}, {v("a")}, u);
    REQUIRE(rel.relations.size() == 1);
    CHECK(rel.relations[0].text == "x*y = a");
    CHECK(rel.unconstrained.size() == 2);
    CHECK(rel.parameters == std::vector<std::string>{"t2"});
}

TEST_CASE("full3 upper way") {
    auto run = run_sonnet(builtin("full3"));
    Bindings p = to_vars(run.plus.frees());
    auto resume = row({"a1p", "b1p", "a1p*c2*c3/(a3*c1)", "a1*a3 + a2*b1*c3", "a1*b3/a3p", "a3*c1/a1p", "a3pp", "b3pp",
                       "a3pp*b1p*c4*c5/(a5*b3*c1)", "a3p*(a5 + a4*b1*b2*c5/(a1*b3))", "a3p*b5/a5pp",
                       "a5*b3*c1/(a3pp*b1p)", "a5pp", "a5pp*b1*b2*b4/(a1*b3*b5)", "b3*b5*c1/(b1p*b3pp)", "a6", "b6",
                       "c6"},
                      p);
    CHECK(same(run.plus.steps[2].state.flat(), resume));
    std::vector<RF> reordered;
    for (std::size_t blk : {0, 2, 1, 3, 5, 4})
        for (std::size_t j = 0; j < 3; ++j) reordered.push_back(resume[3 * blk + j]);
    CHECK(same(run.plus.steps[4].state.flat(), reordered));
    CHECK(cell_dimension(run.plus, 0) == 18);
    CHECK(cell_dimension(run.plus, 1) == 21);
    CHECK(cell_dimension(run.plus, 2) == 24);
}

TEST_CASE("pair-labelled protocol") {
    auto run = run_pairlabel_protocol(builtin("triple13"));
    using L = std::vector<std::string>;
    std::vector<L> plus = {{"12", "13", "14", "23", "24", "34"}, {"12", "13", "14", "34", "24", "23"},
                           {"12", "34", "14", "13", "24", "23"}, {"12", "34", "14", "24", "13", "23"},
                           {"34", "12", "14", "24", "13", "23"}, {"34", "24", "14", "12", "13", "23"},
                           {"34", "24", "14", "23", "13", "12"}, {"34", "24", "23", "14", "13", "12"}};
    std::vector<L> minus = {{"12", "13", "14", "23", "24", "34"}, {"12", "13", "23", "14", "24", "34"},
                            {"23", "13", "12", "14", "24", "34"}, {"23", "13", "24", "14", "12", "34"},
                            {"23", "24", "13", "14", "12", "34"}, {"23", "24", "13", "14", "34", "12"},
                            {"23", "24", "34", "14", "13", "12"}, {"34", "24", "23", "14", "13", "12"}};
    REQUIRE(run.plus.steps.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(run.plus.steps[i].state.labels == plus[i]);
        CHECK(run.minus.steps[i].state.labels == minus[i]);
    }
    Bindings g = {{"P", expr("a1*a2+a1*a5+a4*a5")}, {"Q", expr("a2*a4+a2*a6+a5*a6")}};
    auto fin = row({"a3*a5*a6/Q", "Q/(a1+a4+a6)", "a2*a3*a4*a5*(a1+a4+a6)/(P*Q)", "a1+a4+a6", "P/(a1+a4+a6)",
                    "a1*a2*a3/P"},
                   g);
    CHECK(same(run.plus.final_state().flat(), fin));
    CHECK(same(run.minus.final_state().flat(), fin));
    CHECK(run.match.all_equal());
    // the variant with a4*a6 in place of a4*a5 does not match
    CHECK_FALSE(rf_equal(run.minus.final_state().flat()[5], expr("a1*a2*a3/(a1*a2+a1*a5+a4*a6)")));
    CHECK(rf_equal(expr("(a4+a6)*P", g), expr("a1*a2*a4+a1*a2*a6+a1*a5*a6+a1*a4*a5+a4^2*a5+a4*a5*a6")));
    CHECK(rf_equal(expr("(a1+a4)*Q", g), expr("a1*a2*a4+a2*a4^2+a2*a4*a6+a1*a2*a6+a1*a5*a6+a4*a5*a6")));
    CHECK_THROWS_AS(run_pairlabel_protocol(builtin("lusztig")), UnknownTransform);
}

TEST_CASE("flacon") {
    auto run = run_flacon();
    Bindings p = to_vars(run.upper.frees());
    auto q = to_vars(run.lower.frees());
    p.insert(q.begin(), q.end());
    CHECK(same(run.upper.final_state().flat(), row({"d/(ep*dbar)", "b*e/fp", "a*c*f", "dbar", "fp", "ep"}, p)));
    CHECK(same(run.lower.final_state().flat(), row({"d/e1", "b*e/(f1*d1)", "a*c*f", "e1/f1bar", "d1*f1", "f1bar"}, p)));
    auto check = [&](const std::string& name, const std::string& value) {
        const auto* a = find_assignment(run.consistency, name);
        REQUIRE(a != nullptr);
        CHECK(rf_equal(a->value, expr(value, p)));
    };
    check("fp", "d1*f1");
    check("ep", "f1bar");
    check("dbar", "e1/f1bar");
    CHECK(run.consistency.residual.empty());
    CHECK(run.systems_agree);
    CHECK(run.p_equals_r.size() == 6);
}

TEST_CASE("frees-free builtins agree at random points") {
    std::mt19937_64 rng(20261018);
    std::uniform_int_distribution<int> pool(1, 97);
    for (const std::string name : {"lusztig", "sergeev_alpha", "very_small", "very_small_inverse", "bz"}) {
        CAPTURE(name);
        auto run = run_sonnet(builtin(name));
        auto a = run.plus.final_state().flat(), b = run.minus.final_state().flat();
        for (int trial = 0; trial < 5; ++trial) {
            Point pt;
            for (const auto& x : run.plus.inputs) pt[x] = BigRational(pool(rng), pool(rng));
            for (auto& [k, val] : pt) val.canonicalize();
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(evaluate(a[i], pt) == evaluate(b[i], pt));
        }
    }
}

TEST_CASE("verify errors") {
    auto [plus, minus] = canonical_chains_n4();
    FreeSupply fresh;
    CHECK_THROWS_AS(run_chain(symbolic_start(5, 1), plus, builtin("lusztig"), fresh), ArityMismatch);
    CHECK_THROWS_AS(run_chain(symbolic_start(6, 2), plus, builtin("lusztig"), fresh), ArityMismatch);
    auto t1 = run_chain(symbolic_start(6, 1), plus, builtin("lusztig"), fresh);
    auto start = symbolic_start(6, 1);
    start[0][0] = v("z");
    auto t2 = run_chain(start, minus, builtin("lusztig"), fresh);
    CHECK_THROWS_AS(compare_traces(t1, t2), ComparisonFailed);
    CHECK_THROWS_AS(certify_random(t1, t1, 0, 1), ArityMismatch);
    CHECK_THROWS_AS(cell_dimension(t1, 99), IndexOutOfRange);
}
