#include "tetra/words.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace tetra {

ReducedWord::ReducedWord(int n_, std::vector<int> letters_) : n(n_), letters(std::move(letters_)) {
    if (!is_reduced(letters, n)) throw NotReduced(str() + " is not reduced in S(" + std::to_string(n) + ")");
}

ReducedWord ReducedWord::parse(int n, const std::string& digits) {
    std::vector<int> ls;
    for (char c : digits) {
        if (c == ' ' || c == ',') continue;
        if (c < '1' || c > '9') throw LetterOutOfRange(std::string("bad letter '") + c + "'");
        ls.push_back(c - '0');
    }
    return ReducedWord(n, std::move(ls));
}

std::string ReducedWord::str() const {
    std::string s;
    for (int l : letters) s += std::to_string(l);
    return s;
}

Move Move::parse(const std::string& s) {
    std::string t;
    for (char c : s)
        if (c != '(' && c != ')' && c != ' ') t += c;
    if (t.size() < 2 || (t[0] != 'R' && t[0] != 'L') ||
        !std::all_of(t.begin() + 1, t.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw MoveNotApplicable("cannot parse move '" + s + "'");
    int k = std::stoi(t.substr(1));
    return t[0] == 'R' ? braid(k) : commute(k);
}

std::string Move::str() const { return std::string(kind == Kind::Braid ? "R(" : "L(") + std::to_string(pos) + ")"; }

Chain::Chain(ReducedWord start, std::vector<Move> moves) : start_(std::move(start)), moves_(std::move(moves)) {
    words_.push_back(start_);
    for (const auto& m : moves_) words_.push_back(apply_move(words_.back(), m));
}

Permutation identity_permutation(int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 1);
    return p;
}

Permutation longest_permutation(int n) {
    Permutation p(n);
    for (int j = 0; j < n; ++j) p[j] = n - j;
    return p;
}

Permutation word_to_permutation(int n, const std::vector<int>& letters) {
    Permutation p = identity_permutation(n);
    for (int i : letters) {
        if (i < 1 || i > n - 1) throw LetterOutOfRange("letter " + std::to_string(i) + " outside 1.." + std::to_string(n - 1));
        // right multiplication by s_i swaps positions i, i+1
        std::swap(p[i - 1], p[i]);
    }
    return p;
}

int inversions(const Permutation& p) {
    int c = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++c;
    return c;
}

bool is_reduced(const std::vector<int>& letters, int n) {
    return inversions(word_to_permutation(n, letters)) == static_cast<int>(letters.size());
}

Permutation compose(const Permutation& p, const Permutation& q) {
    Permutation r(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) r[j] = p[q[j] - 1];
    return r;
}

Permutation inverse(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) r[p[j] - 1] = static_cast<int>(j) + 1;
    return r;
}

bool move_applicable(const ReducedWord& w, const Move& m) {
    const auto& l = w.letters;
    int k = m.pos - 1;
    if (m.kind == Move::Kind::Braid) {
        if (k < 0 || k + 2 >= static_cast<int>(l.size())) return false;
        return l[k] == l[k + 2] && std::abs(l[k] - l[k + 1]) == 1;
    }
    if (k < 0 || k + 1 >= static_cast<int>(l.size())) return false;
    return std::abs(l[k] - l[k + 1]) >= 2;
}

ReducedWord apply_move(const ReducedWord& w, const Move& m) {
    if (!move_applicable(w, m)) throw MoveNotApplicable(m.str() + " on (" + w.str() + ")");
    ReducedWord r = w;
    int k = m.pos - 1;
    if (m.kind == Move::Kind::Braid) {
        std::swap(r.letters[k], r.letters[k + 1]);
        r.letters[k + 2] = r.letters[k];
    } else {
        std::swap(r.letters[k], r.letters[k + 1]);
    }
    return r;
}

std::vector<Move> applicable_moves(const ReducedWord& w) {
    std::vector<Move> out;
    for (int k = 1; k <= static_cast<int>(w.length()); ++k) {
        if (move_applicable(w, Move::braid(k))) out.push_back(Move::braid(k));
        if (move_applicable(w, Move::commute(k))) out.push_back(Move::commute(k));
    }
    return out;
}

namespace {

using WordSet = std::vector<std::string>;

// Reduced words of p, found by peeling right descents.
const WordSet& words_of(const Permutation& p, std::map<Permutation, WordSet>& memo) {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    WordSet out;
    bool any = false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (p[i] <= p[i + 1]) continue;
        any = true;
        Permutation q = p;
        std::swap(q[i], q[i + 1]);
        const WordSet& sub = words_of(q, memo);
        char letter = static_cast<char>('0' + i + 1);
        for (const auto& w : sub) out.push_back(w + letter);
    }
    if (!any) out.push_back("");
    return memo.emplace(p, std::move(out)).first->second;
}

std::vector<int> to_letters(const std::string& s) {
    std::vector<int> ls;
    for (char c : s) ls.push_back(c - '0');
    return ls;
}

}  // namespace

std::vector<ReducedWord> enumerate_reduced_words(int n) {
    if (n < 2 || n > 6) throw LetterOutOfRange("enumeration supports 2 <= n <= 6");
    std::map<Permutation, WordSet> memo;
    WordSet ws = words_of(longest_permutation(n), memo);
    std::sort(ws.begin(), ws.end());
    std::vector<ReducedWord> out;
    out.reserve(ws.size());
    for (const auto& w : ws) {
        ReducedWord r;
        r.n = n;
        r.letters = to_letters(w);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

template <typename Pred>
Dsu components(const std::vector<ReducedWord>& ws, Pred use_move) {
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < ws.size(); ++i) index[ws[i].letters] = i;
    Dsu d(ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (const auto& m : applicable_moves(ws[i]))
            if (use_move(m)) d.unite(i, index.at(apply_move(ws[i], m).letters));
    return d;
}

}  // namespace

std::vector<std::vector<ReducedWord>> commutation_classes(int n) {
    auto ws = enumerate_reduced_words(n);
    Dsu d = components(ws, [](const Move& m) { return m.kind == Move::Kind::Commute; });
    std::map<std::size_t, std::vector<ReducedWord>> groups;
    for (std::size_t i = 0; i < ws.size(); ++i) groups[d.find(i)].push_back(ws[i]);
    std::vector<std::vector<ReducedWord>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
}

bool move_graph_connected(int n) {
    auto ws = enumerate_reduced_words(n);
    Dsu d = components(ws, [](const Move&) { return true; });
    for (std::size_t i = 0; i < ws.size(); ++i)
        if (d.find(i) != 0) return false;
    return true;
}

std::pair<Chain, Chain> canonical_chains_n4() {
    ReducedWord start = ReducedWord::parse(4, "121321");
    using M = Move;
    Chain plus(start, {M::braid(1), M::braid(3), M::commute(2), M::commute(5), M::braid(3), M::braid(1), M::commute(3)});
    Chain minus(start, {M::commute(3), M::braid(4), M::braid(2), M::commute(4), M::commute(1), M::braid(2), M::braid(4)});
    return {plus, minus};
}

ReducedWord minimal_word(int n) {
    std::vector<int> ls;
    for (int k = 1; k < n; ++k)
        for (int j = k; j >= 1; --j) ls.push_back(j);
    return ReducedWord(n, ls);
}

ReducedWord maximal_word(int n) {
    std::vector<int> ls;
    for (int k = 1; k < n; ++k)
        for (int j = n - k; j <= n - 1; ++j) ls.push_back(j);
    return ReducedWord(n, ls);
}

ReducedWord reversed(const ReducedWord& w) {
    ReducedWord r = w;
    std::reverse(r.letters.begin(), r.letters.end());
    return r;
}

Move mirrored(const Move& m, std::size_t length) {
    int L = static_cast<int>(length);
    if (m.kind == Move::Kind::Braid) return Move::braid(L - m.pos - 1);
    return Move::commute(L - m.pos);
}

}  // namespace tetra
