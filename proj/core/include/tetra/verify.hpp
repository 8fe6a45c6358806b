#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tetra/exactalg.hpp"
#include "tetra/report.hpp"
#include "tetra/transforms.hpp"
#include "tetra/words.hpp"

namespace tetra {

struct ParamState {
    ReducedWord word;
    std::vector<std::string> labels;  // pair labels in the pair-labelled protocol
    std::vector<Block> blocks;
    std::vector<FreeRecord> frees;  // introduced so far

    std::vector<RationalFunction> flat() const;
    std::string word_str() const;
};

struct TraceStep {
    std::string move;  // empty for the start state
    ParamState state;
};

struct EvolutionTrace {
    std::string transform;
    std::vector<TraceStep> steps;
    std::vector<std::string> inputs;  // symbols of the start state

    const ParamState& final_state() const { return steps.back().state; }
    std::vector<FreeRecord> frees() const { return final_state().frees; }
};

// Primed tag for a step number: 1 -> p, 2 -> pp, 3 -> ppp, 4 -> iv, ...
std::string step_tag(std::size_t step);

// Symbolic start state a1.., or a1,b1,.. / a1,b1,c1,.. by width.
std::vector<Block> symbolic_start(std::size_t letters, std::size_t width);

// Paper names for frees: a transform free "a3p" introduced by a braid at
// position k in step s is named a{k+2}{tag(s)}. Explicit names, when given,
// are used in order instead.
EvolutionTrace run_chain(const std::vector<Block>& start, const Chain& chain, const Transform& t, FreeSupply& fresh,
                         const std::vector<std::string>& explicit_names = {});

enum class Verdict { Equal, EqualAfterSolving, Failed };
std::string to_string(Verdict v);

struct Assignment {
    std::string var;
    std::string paper_name;
    RationalFunction value;
    std::size_t equation = 0;  // 1-based component it was read from
    std::string label;         // component label, e.g. 4b for block 4, second entry
};

// var * (monomial in other frees) = value, with value free of unknowns.
struct Relation {
    RationalFunction lhs, rhs;
    std::string text;
};

struct SolveResult {
    std::vector<Assignment> assignments;  // fully substituted, in solving order
    std::vector<Relation> relations;
    std::vector<std::string> unconstrained;  // paper names, including frees tied only by relations
    std::vector<std::string> parameters;     // variables never solved for
    std::vector<std::string> absent;         // paper names of frees occurring in no component
    std::vector<std::size_t> residual;       // components still unequal
    Bindings bindings() const;
};

// Triangular solving of lhs[k] = rhs[k] for the unknown frees. width only
// affects component labels. Throws SolveStuck when equations remain unequal
// and nothing can be isolated.
SolveResult solve_frees(const std::vector<RationalFunction>& lhs, const std::vector<RationalFunction>& rhs,
                        const std::vector<FreeRecord>& unknowns, bool throw_on_stuck = true, std::size_t width = 1);

std::string component_label(std::size_t index, std::size_t width);  // 1-based index
// Free variables t1.. replaced by their paper names.
RationalFunction with_paper_names(const RationalFunction& f, const std::vector<FreeRecord>& frees);

struct ComponentMatch {
    std::size_t index = 0;
    Verdict verdict = Verdict::Failed;
    RationalFunction upper, lower;
};

struct MatchReport {
    std::vector<ComponentMatch> components;
    SolveResult solve;
    bool all_equal() const;
};

// Compares final states; solves frees when there are any. Throws
// ComparisonFailed naming the first differing component.
MatchReport compare_traces(const EvolutionTrace& upper, const EvolutionTrace& lower);

struct CertifyResult {
    std::size_t trials = 0, passed = 0, resamples = 0;
};
// Random rational evaluation: frees left unconstrained by the symbolic
// solve are drawn along with the inputs, the rest are solved numerically.
// Throws CertificationFailed.
CertifyResult certify_random(const EvolutionTrace& upper, const EvolutionTrace& lower, std::size_t trials,
                             unsigned long long seed);

// Jacobian rank of (inputs, state after `step`) over inputs and the frees
// introduced so far.
std::size_t cell_dimension(const EvolutionTrace& trace, std::size_t step, unsigned long long seed = 1);

// The canonical chains run with a builtin or user transform.
struct SonnetRun {
    EvolutionTrace plus, minus;
};
SonnetRun run_sonnet(const Transform& t);

struct PairProtocolRun {
    EvolutionTrace plus, minus;
    MatchReport match;
};
// Pair-labelled sonnet for triple13. Throws ComparisonFailed.
PairProtocolRun run_pairlabel_protocol(const Transform& t);

struct FlaconRun {
    EvolutionTrace upper, lower;            // flacon_diag on a..f
    SolveResult consistency;                // upper frees in terms of lower
    EvolutionTrace full_upper, full_lower;  // flacon_full
    SolveResult full_consistency;           // from the diagonal part of the full paths
    std::vector<std::pair<RationalFunction, RationalFunction>> p_equals_r;
    bool systems_agree = false;
};
FlaconRun run_flacon();

// States as printed in the paper's section on Lusztig and Sergeev flips:
// words and parameters reversed, consecutive commutation moves merged.
struct PresentedState {
    std::string moves;
    std::string word;
    std::vector<RationalFunction> params;
};
std::vector<PresentedState> present_reversed(const EvolutionTrace& trace);

}  // namespace tetra
