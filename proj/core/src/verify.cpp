#include "tetra/verify.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

namespace tetra {

namespace {

using RF = RationalFunction;

RF var(const std::string& n) { return RF::variable(n); }

std::string roman(std::size_t n) {
    static const std::pair<std::size_t, const char*> table[] = {{1000, "m"}, {900, "cm"}, {500, "d"}, {400, "cd"},
                                                                {100, "c"},  {90, "xc"},  {50, "l"},  {40, "xl"},
                                                                {10, "x"},   {9, "ix"},   {5, "v"},   {4, "iv"},
                                                                {1, "i"}};
    std::string s;
    for (const auto& [v, r] : table)
        while (n >= v) {
            s += r;
            n -= v;
        }
    return s;
}

// a3p at position k, step s -> a{k+2}{tag}; names without a digit keep
// their letters and get the tag.
std::string paper_free_name(const std::string& origin, int k, std::size_t step) {
    std::size_t i = 0;
    while (i < origin.size() && std::isalpha(static_cast<unsigned char>(origin[i])) && origin[i] != 'p') ++i;
    std::size_t j = i;
    while (j < origin.size() && std::isdigit(static_cast<unsigned char>(origin[j]))) ++j;
    if (j == i) return origin.substr(0, i) + step_tag(step);
    int d = std::stoi(origin.substr(i, j - i));
    return origin.substr(0, i) + std::to_string(k + d - 1) + step_tag(step);
}

std::vector<std::string> input_symbols(const std::vector<Block>& start) {
    std::vector<std::string> out;
    for (const auto& b : start)
        for (const auto& x : b)
            for (const auto& v : x.variables())
                if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

std::vector<RF> flatten(const std::vector<Block>& blocks) {
    std::vector<RF> out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool mentions(const RF& f, const std::set<std::string>& vars) {
    for (const auto& v : f.variables())
        if (vars.count(v)) return true;
    return false;
}

std::set<std::string> unknown_vars(const RF& f, const std::set<std::string>& vars) {
    std::set<std::string> out;
    for (const auto& v : f.variables())
        if (vars.count(v)) out.insert(v);
    return out;
}

std::string record_name(const std::vector<FreeRecord>& frees, const std::string& v) {
    for (const auto& f : frees)
        if (f.var == v) return f.paper_name;
    return v;
}

}  // namespace

std::vector<RF> ParamState::flat() const { return flatten(blocks); }

std::string ParamState::word_str() const {
    if (!labels.empty()) {
        std::string s = "(";
        for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
        return s + ")";
    }
    return word.str();
}

std::string step_tag(std::size_t step) {
    if (step == 0) return "";
    if (step <= 3) return std::string(step, 'p');
    return roman(step);
}

std::vector<Block> symbolic_start(std::size_t letters, std::size_t width) {
    static const char* names = "abc";
    if (width < 1 || width > 3) throw ArityMismatch("block width must be 1, 2 or 3");
    std::vector<Block> out(letters);
    for (std::size_t k = 0; k < letters; ++k)
        for (std::size_t j = 0; j < width; ++j) out[k].push_back(var(std::string(1, names[j]) + std::to_string(k + 1)));
    return out;
}

std::string component_label(std::size_t index, std::size_t width) {
    if (width <= 1) return std::to_string(index);
    static const char* names = "abc";
    return std::to_string((index - 1) / width + 1) + names[(index - 1) % width];
}

RF with_paper_names(const RF& f, const std::vector<FreeRecord>& frees) {
    Bindings b;
    for (const auto& r : frees)
        if (f.contains(r.var)) b[r.var] = var(r.paper_name);
    return b.empty() ? f : substitute(f, b);
}

EvolutionTrace run_chain(const std::vector<Block>& start, const Chain& chain, const Transform& t, FreeSupply& fresh,
                         const std::vector<std::string>& explicit_names) {
    if (start.size() != chain.start().length())
        throw ArityMismatch("start state has " + std::to_string(start.size()) + " blocks for a word of length " +
                            std::to_string(chain.start().length()));
    for (const auto& b : start)
        if (b.size() != t.width)
            throw ArityMismatch(t.name + " has block width " + std::to_string(t.width) + ", got " +
                                std::to_string(b.size()));
    EvolutionTrace trace;
    trace.transform = t.name;
    trace.inputs = input_symbols(start);
    ParamState st;
    st.word = chain.start();
    st.blocks = start;
    trace.steps.push_back({"", st});
    std::size_t named = 0, step = 0;
    for (const auto& m : chain.moves()) {
        ++step;
        st.word = apply_move(st.word, m);
        auto k = static_cast<std::size_t>(m.pos - 1);
        if (m.kind == Move::Kind::Commute) {
            std::swap(st.blocks[k], st.blocks[k + 1]);
        } else {
            std::vector<std::string> names;
            for (const auto& f : t.frees) {
                if (named < explicit_names.size())
                    names.push_back(explicit_names[named++]);
                else
                    names.push_back(paper_free_name(f, m.pos, step));
            }
            auto out = apply(t, {st.blocks[k], st.blocks[k + 1], st.blocks[k + 2]}, fresh, names);
            for (std::size_t j = 0; j < 3; ++j) st.blocks[k + j] = out.blocks[j];
            st.frees.insert(st.frees.end(), out.frees.begin(), out.frees.end());
        }
        trace.steps.push_back({m.str(), st});
    }
    return trace;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Equal: return "equal";
        case Verdict::EqualAfterSolving: return "equal-after-solving";
        case Verdict::Failed: return "failed";
    }
    return "failed";
}

Bindings SolveResult::bindings() const {
    Bindings b;
    for (const auto& a : assignments) b[a.var] = a.value;
    return b;
}

SolveResult solve_frees(const std::vector<RF>& lhs, const std::vector<RF>& rhs, const std::vector<FreeRecord>& unknowns,
                        bool throw_on_stuck, std::size_t width) {
    if (lhs.size() != rhs.size())
        throw ArityMismatch("solve_frees: " + std::to_string(lhs.size()) + " vs " + std::to_string(rhs.size()) +
                            " components");
    std::set<std::string> open;
    std::map<std::string, std::size_t> order;
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
        open.insert(unknowns[i].var);
        order[unknowns[i].var] = i;
    }
    const std::set<std::string> all = open;
    SolveResult res;
    std::vector<RF> l = lhs, r = rhs;

    auto pick = [&]() -> std::optional<std::pair<std::size_t, std::string>> {
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (rf_equal(l[i], r[i])) continue;
            auto u = unknown_vars(l[i], open);
            auto ur = unknown_vars(r[i], open);
            u.insert(ur.begin(), ur.end());
            if (u.size() == 1 && isolate(l[i], r[i], *u.begin())) return std::make_pair(i, *u.begin());
        }
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (rf_equal(l[i], r[i])) continue;
            auto ul = unknown_vars(l[i], open), ur = unknown_vars(r[i], open);
            std::vector<std::string> cands;
            for (const auto* side : {&ul, &ur})
                for (const auto& v : *side)
                    if (isolate(l[i], r[i], v)) cands.push_back(v);
            if (cands.empty()) continue;
            std::sort(cands.begin(), cands.end(), [&](const std::string& a, const std::string& b) {
                bool sa = (ul.count(a) ? ul.size() : ur.size()) == 1;
                bool sb = (ul.count(b) ? ul.size() : ur.size()) == 1;
                if (sa != sb) return sa;
                return order[a] < order[b];
            });
            return std::make_pair(i, cands.front());
        }
        return std::nullopt;
    };

    while (true) {
        auto choice = pick();
        if (!choice) break;
        auto [i, v] = *choice;
        RF value = *isolate(l[i], r[i], v);
        Bindings b{{v, value}};
        for (auto& a : res.assignments)
            if (a.value.contains(v)) a.value = substitute(a.value, b);
        Assignment a;
        a.var = v;
        a.paper_name = record_name(unknowns, v);
        a.value = value;
        a.equation = i + 1;
        a.label = component_label(i + 1, width);
        res.assignments.push_back(std::move(a));
        open.erase(v);
        for (std::size_t j = 0; j < l.size(); ++j) {
            if (l[j].contains(v)) l[j] = substitute(l[j], b);
            if (r[j].contains(v)) r[j] = substitute(r[j], b);
        }
    }
    for (std::size_t i = 0; i < l.size(); ++i)
        if (!rf_equal(l[i], r[i])) res.residual.push_back(i + 1);

    std::set<std::string> tied;
    for (const auto& a : res.assignments) {
        auto others = unknown_vars(a.value, all);
        if (others.empty()) continue;
        tied.insert(a.var);
        tied.insert(others.begin(), others.end());
        RF mono(1), rest(a.value.coefficient());
        for (const auto& [f, e] : a.value.factors()) {
            RF piece = RF(f).pow(e);
            if (mentions(RF(f), all))
                mono = mono * piece;
            else
                rest = rest * piece;
        }
        Relation rel;
        rel.lhs = var(a.var) / mono;
        rel.rhs = rest;
        rel.text = with_paper_names(rel.lhs, unknowns).render() + " = " + rel.rhs.render();
        res.relations.push_back(std::move(rel));
    }
    for (const auto& u : unknowns) {
        bool occurs = std::any_of(lhs.begin(), lhs.end(), [&](const RF& f) { return f.contains(u.var); }) ||
                      std::any_of(rhs.begin(), rhs.end(), [&](const RF& f) { return f.contains(u.var); });
        if (!occurs) res.absent.push_back(u.paper_name);
        if (open.count(u.var)) res.parameters.push_back(u.var);
        if (open.count(u.var) || tied.count(u.var)) res.unconstrained.push_back(u.paper_name);
    }
    if (throw_on_stuck && !res.residual.empty()) {
        std::size_t i = res.residual.front() - 1;
        throw SolveStuck("component " + component_label(i + 1, width) + ": " +
                         with_paper_names(l[i], unknowns).render() + " = " + with_paper_names(r[i], unknowns).render() +
                         " has no isolatable free");
    }
    return res;
}

bool MatchReport::all_equal() const {
    return std::all_of(components.begin(), components.end(),
                       [](const ComponentMatch& c) { return c.verdict != Verdict::Failed; });
}

MatchReport compare_traces(const EvolutionTrace& upper, const EvolutionTrace& lower) {
    auto s0 = upper.steps.front().state.flat(), s1 = lower.steps.front().state.flat();
    if (s0.size() != s1.size()) throw ComparisonFailed("start states differ in length");
    for (std::size_t i = 0; i < s0.size(); ++i)
        if (!rf_equal(s0[i], s1[i])) throw ComparisonFailed("start states differ at component " + std::to_string(i + 1));
    const auto& fu = upper.final_state();
    const auto& fl = lower.final_state();
    if (fu.word_str() != fl.word_str())
        throw ComparisonFailed("end words differ: " + fu.word_str() + " vs " + fl.word_str());
    std::size_t width = fu.blocks.empty() ? 1 : fu.blocks.front().size();
    auto a = fu.flat(), b = fl.flat();
    MatchReport rep;
    std::vector<FreeRecord> frees = fu.frees;
    frees.insert(frees.end(), fl.frees.begin(), fl.frees.end());
    Bindings sol;
    if (!frees.empty()) {
        rep.solve = solve_frees(a, b, frees, false, width);
        sol = rep.solve.bindings();
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        ComponentMatch c;
        c.index = i + 1;
        c.upper = a[i];
        c.lower = b[i];
        if (rf_equal(a[i], b[i]))
            c.verdict = Verdict::Equal;
        else if (!sol.empty() && rf_equal(substitute(a[i], sol), substitute(b[i], sol)))
            c.verdict = Verdict::EqualAfterSolving;
        rep.components.push_back(std::move(c));
    }
    for (const auto& c : rep.components)
        if (c.verdict == Verdict::Failed)
            throw ComparisonFailed("component " + component_label(c.index, width) + ": " +
                                   with_paper_names(c.upper, frees).render() + " vs " +
                                   with_paper_names(c.lower, frees).render());
    return rep;
}

CertifyResult certify_random(const EvolutionTrace& upper, const EvolutionTrace& lower, std::size_t trials,
                             unsigned long long seed) {
    if (trials < 1) throw ArityMismatch("certify_random needs at least one trial");
    auto a = upper.final_state().flat(), b = lower.final_state().flat();
    if (a.size() != b.size()) throw CertificationFailed("final states differ in length");
    std::vector<FreeRecord> frees = upper.final_state().frees;
    frees.insert(frees.end(), lower.final_state().frees.begin(), lower.final_state().frees.end());
    auto symbolic = solve_frees(a, b, frees, false);

    std::vector<std::string> drawn = upper.inputs;
    for (const auto& v : lower.inputs)
        if (std::find(drawn.begin(), drawn.end(), v) == drawn.end()) drawn.push_back(v);
    drawn.insert(drawn.end(), symbolic.parameters.begin(), symbolic.parameters.end());
    std::vector<FreeRecord> solved;
    for (const auto& f : frees)
        if (std::find(symbolic.parameters.begin(), symbolic.parameters.end(), f.var) == symbolic.parameters.end())
            solved.push_back(f);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pool(1, 97);
    CertifyResult out;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        ++out.trials;
        bool done = false;
        for (int attempt = 0; attempt < 20 && !done; ++attempt) {
            Bindings pt;
            for (const auto& v : drawn) {
                BigRational q(pool(rng), pool(rng));
                q.canonicalize();
                pt[v] = RF(q);
            }
            try {
                std::vector<RF> ea, eb;
                for (const auto& x : a) ea.push_back(substitute(x, pt));
                for (const auto& x : b) eb.push_back(substitute(x, pt));
                auto num = solve_frees(ea, eb, solved, false);
                auto nb = num.bindings();
                for (std::size_t i = 0; i < ea.size(); ++i) {
                    RF x = substitute(ea[i], nb), y = substitute(eb[i], nb);
                    if (!x.is_constant() || !y.is_constant() || !rf_equal(x, y))
                        throw CertificationFailed("trial " + std::to_string(trial + 1) + ", component " +
                                                  std::to_string(i + 1) + ": " + x.render() + " vs " + y.render());
                }
                done = true;
            } catch (const PoleAtPoint&) {
                ++out.resamples;
            } catch (const DenominatorVanishes&) {
                ++out.resamples;
            } catch (const DivisionByZeroFunction&) {
                ++out.resamples;
            }
        }
        if (!done) throw CertificationFailed("trial " + std::to_string(trial + 1) + ": no pole-free point in 20 draws");
        ++out.passed;
    }
    return out;
}

std::size_t cell_dimension(const EvolutionTrace& trace, std::size_t step, unsigned long long seed) {
    if (step >= trace.steps.size()) throw IndexOutOfRange("trace has " + std::to_string(trace.steps.size()) + " states");
    const auto& st = trace.steps[step].state;
    std::vector<RF> funcs;
    std::vector<std::string> vars = trace.inputs;
    for (const auto& x : trace.inputs) funcs.push_back(var(x));
    auto flat = st.flat();
    funcs.insert(funcs.end(), flat.begin(), flat.end());
    for (const auto& f : st.frees) vars.push_back(f.var);
    return jacobian_rank(funcs, vars, seed);
}

SonnetRun run_sonnet(const Transform& t) {
    auto [plus, minus] = canonical_chains_n4();
    auto start = symbolic_start(plus.start().length(), t.width);
    FreeSupply fresh;
    SonnetRun run;
    run.plus = run_chain(start, plus, t, fresh);
    run.minus = run_chain(start, minus, t, fresh);
    return run;
}

namespace {

EvolutionTrace run_pair_moves(const Transform& t, const std::vector<std::string>& moves) {
    EvolutionTrace trace;
    trace.transform = t.name;
    ParamState st;
    st.word = ReducedWord::parse(4, "123121");
    st.labels = {"12", "13", "14", "23", "24", "34"};
    st.blocks = symbolic_start(6, 1);
    trace.inputs = input_symbols(st.blocks);
    trace.steps.push_back({"", st});
    FreeSupply fresh;
    for (const auto& m : moves) {
        if (m.size() == 2 && m[0] == 'L') {
            int k = m[1] - '0';
            st.word = apply_move(st.word, Move::commute(k));
            std::swap(st.labels[k - 1], st.labels[k]);
            std::swap(st.blocks[k - 1], st.blocks[k]);
        } else {
            std::string ijk = m.substr(2, 3);
            std::set<std::string> want = {{ijk[0], ijk[1]}, {ijk[0], ijk[2]}, {ijk[1], ijk[2]}};
            std::size_t pos = st.labels.size();
            for (std::size_t p = 0; p + 2 < st.labels.size(); ++p)
                if (std::set<std::string>{st.labels[p], st.labels[p + 1], st.labels[p + 2]} == want) pos = p;
            if (pos == st.labels.size()) throw MoveNotApplicable(m + " at " + st.word_str());
            st.word = apply_move(st.word, Move::braid(static_cast<int>(pos) + 1));
            auto out = apply(t, {st.blocks[pos], st.blocks[pos + 1], st.blocks[pos + 2]}, fresh);
            for (std::size_t j = 0; j < 3; ++j) st.blocks[pos + j] = out.blocks[j];
            std::reverse(st.labels.begin() + static_cast<long>(pos), st.labels.begin() + static_cast<long>(pos) + 3);
        }
        trace.steps.push_back({m, st});
    }
    return trace;
}

}  // namespace

PairProtocolRun run_pairlabel_protocol(const Transform& t) {
    if (!t.pair_labelled()) throw UnknownTransform(t.name + " is not pair-labelled");
    PairProtocolRun run;
    run.plus = run_pair_moves(t, {"R(234)", "R(134)", "L4", "L1", "R(124)", "R(123)", "L3"});
    run.minus = run_pair_moves(t, {"L3", "R(123)", "R(124)", "L2", "L5", "R(134)", "R(234)"});
    run.match = compare_traces(run.plus, run.minus);
    return run;
}

FlaconRun run_flacon() {
    auto [plus, minus] = canonical_chains_n4();
    const std::vector<std::string> letters = {"a", "b", "c", "d", "e", "f"};
    const std::vector<std::string> xs = {"x", "y", "z", "u", "v", "w"};
    const std::vector<std::string> upper_names = {"cp", "ep", "fp", "dbar"};
    const std::vector<std::string> lower_names = {"f1", "e1", "d1", "f1bar"};
    std::vector<Block> diag, full;
    for (std::size_t i = 0; i < 6; ++i) {
        diag.push_back({var(letters[i])});
        full.push_back({var(letters[i]), var(xs[i])});
    }
    FlaconRun run;
    {
        FreeSupply fresh;
        run.upper = run_chain(diag, plus, builtin("flacon_diag"), fresh, upper_names);
        run.lower = run_chain(diag, minus, builtin("flacon_diag"), fresh, lower_names);
        run.consistency = solve_frees(run.upper.final_state().flat(), run.lower.final_state().flat(),
                                      run.upper.final_state().frees, false);
    }
    {
        FreeSupply fresh;
        run.full_upper = run_chain(full, plus, builtin("flacon_full"), fresh, upper_names);
        run.full_lower = run_chain(full, minus, builtin("flacon_full"), fresh, lower_names);
        std::vector<RF> du, dl;
        for (const auto& b : run.full_upper.final_state().blocks) du.push_back(b[0]);
        for (const auto& b : run.full_lower.final_state().blocks) dl.push_back(b[0]);
        run.full_consistency = solve_frees(du, dl, run.full_upper.final_state().frees, false);
        auto sol = run.full_consistency.bindings();
        const auto& ub = run.full_upper.final_state().blocks;
        const auto& lb = run.full_lower.final_state().blocks;
        for (std::size_t i = 0; i < ub.size(); ++i) run.p_equals_r.emplace_back(substitute(ub[i][1], sol), lb[i][1]);
    }
    // compare by paper name: the two runs use separate fresh supplies
    auto by_name = [](const SolveResult& s, const std::vector<FreeRecord>& lower) {
        std::map<std::string, RF> m;
        for (const auto& a : s.assignments) m[a.paper_name] = with_paper_names(a.value, lower);
        return m;
    };
    auto m0 = by_name(run.consistency, run.lower.final_state().frees);
    auto m1 = by_name(run.full_consistency, run.full_lower.final_state().frees);
    run.systems_agree = !m0.empty() && m0.size() == m1.size() && run.consistency.residual.empty() &&
                        run.full_consistency.residual.empty() &&
                        std::all_of(m0.begin(), m0.end(), [&](const auto& kv) {
                            auto it = m1.find(kv.first);
                            return it != m1.end() && rf_equal(kv.second, it->second);
                        });
    return run;
}

std::vector<PresentedState> present_reversed(const EvolutionTrace& trace) {
    std::vector<PresentedState> out;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& step = trace.steps[i];
        const auto& st = step.state;
        PresentedState p;
        p.word = reversed(st.word).str();
        for (auto it = st.blocks.rbegin(); it != st.blocks.rend(); ++it) p.params.insert(p.params.end(), it->begin(), it->end());
        if (!step.move.empty()) p.moves = mirrored(Move::parse(step.move), st.word.length()).str();
        bool commute = !step.move.empty() && step.move[0] == 'L';
        bool prev_commute = !out.empty() && !out.back().moves.empty() && out.back().moves[0] == 'L' && i > 1 &&
                            trace.steps[i - 1].move[0] == 'L';
        if (commute && prev_commute) {
            // commuting moves on disjoint positions: list them ascending
            std::vector<std::string> parts;
            for (std::size_t at = 0; at < out.back().moves.size();) {
                auto next = out.back().moves.find('L', at + 1);
                parts.push_back(out.back().moves.substr(at, next == std::string::npos ? next : next - at));
                at = next == std::string::npos ? out.back().moves.size() : next;
            }
            parts.push_back(p.moves);
            std::sort(parts.begin(), parts.end());
            out.back().moves.clear();
            for (const auto& part : parts) out.back().moves += part;
            out.back().word = p.word;
            out.back().params = p.params;
        } else {
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace tetra
