#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tetra/errors.hpp"

namespace tetra {

// One-line notation, 1-based values: perm[j-1] = w(j).
using Permutation = std::vector<int>;

// Letters are generator indices 1..n-1, positions in moves are 1-based.
struct ReducedWord {
    int n = 2;
    std::vector<int> letters;

    ReducedWord() = default;
    // Throws LetterOutOfRange, or NotReduced.
    ReducedWord(int n, std::vector<int> letters);
    static ReducedWord parse(int n, const std::string& digits);

    std::size_t length() const { return letters.size(); }
    std::string str() const;
    bool operator==(const ReducedWord&) const = default;
    auto operator<=>(const ReducedWord&) const = default;
};

struct Move {
    enum class Kind { Braid, Commute };
    Kind kind = Kind::Braid;
    int pos = 1;

    static Move braid(int k) { return {Kind::Braid, k}; }
    static Move commute(int k) { return {Kind::Commute, k}; }
    // "R3", "R(3)", "L5", "L(5)"
    static Move parse(const std::string& s);
    // Paper notation: R(k) for braid moves, L(k) for commutations.
    std::string str() const;
    bool operator==(const Move&) const = default;
};

// A start word plus moves; construction validates every step.
class Chain {
public:
    Chain(ReducedWord start, std::vector<Move> moves);
    const ReducedWord& start() const { return start_; }
    const std::vector<Move>& moves() const { return moves_; }
    // start followed by the word after each move
    const std::vector<ReducedWord>& words() const { return words_; }
    const ReducedWord& end() const { return words_.back(); }

private:
    ReducedWord start_;
    std::vector<Move> moves_;
    std::vector<ReducedWord> words_;
};

Permutation word_to_permutation(int n, const std::vector<int>& letters);
inline Permutation word_to_permutation(const ReducedWord& w) { return word_to_permutation(w.n, w.letters); }
bool is_reduced(const std::vector<int>& letters, int n);
int inversions(const Permutation& p);
Permutation longest_permutation(int n);
Permutation identity_permutation(int n);
Permutation compose(const Permutation& p, const Permutation& q);  // (p o q)(j) = p(q(j))
Permutation inverse(const Permutation& p);

bool move_applicable(const ReducedWord& w, const Move& m);
ReducedWord apply_move(const ReducedWord& w, const Move& m);
std::vector<Move> applicable_moves(const ReducedWord& w);

// All reduced words of w0(n), sorted lexicographically. n <= 6.
std::vector<ReducedWord> enumerate_reduced_words(int n);
// Connected components of the commutation-move graph, each sorted, classes
// ordered by their smallest word.
std::vector<std::vector<ReducedWord>> commutation_classes(int n);
// Whether braid and commutation moves connect all reduced words of w0(n).
bool move_graph_connected(int n);

// C+ = L(3)R(1)R(3)L(5)L(2)R(3)R(1) and C- = R(4)R(2)L(1)L(4)R(2)R(4)L(3),
// both from (121321) to (321323); moves are listed in application order.
std::pair<Chain, Chain> canonical_chains_n4();

// s1 s2s1 s3s2s1 ...
ReducedWord minimal_word(int n);
// s_{n-1} s_{n-2}s_{n-1} s_{n-3}s_{n-2}s_{n-1} ...
ReducedWord maximal_word(int n);

// Mirror image: letters reversed, so a move at k on a word of length L
// corresponds to the mirrored move returned here.
ReducedWord reversed(const ReducedWord& w);
Move mirrored(const Move& m, std::size_t length);

}  // namespace tetra
