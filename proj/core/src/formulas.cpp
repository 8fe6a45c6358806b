#include "tetra/formulas.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tetra {

ExprAst ExprAst::constant(const BigRational& v) {
    ExprAst a;
    a.kind = Kind::Const;
    a.value = v;
    return a;
}

ExprAst ExprAst::var(std::string n) {
    ExprAst a;
    a.kind = Kind::Var;
    a.name = std::move(n);
    return a;
}

ExprAst ExprAst::binary(Kind k, ExprAst l, ExprAst r) {
    ExprAst a;
    a.kind = k;
    a.children.push_back(std::move(l));
    a.children.push_back(std::move(r));
    return a;
}

ExprAst ExprAst::neg(ExprAst x) {
    ExprAst a;
    a.kind = Kind::Neg;
    a.children.push_back(std::move(x));
    return a;
}

ExprAst ExprAst::pow(ExprAst base, unsigned e) {
    ExprAst a;
    a.kind = Kind::Pow;
    a.exponent = e;
    a.children.push_back(std::move(base));
    return a;
}

std::size_t ExprAst::depth() const {
    std::size_t d = 0;
    for (const auto& c : children) d = std::max(d, c.depth());
    return d + 1;
}

bool ExprAst::operator==(const ExprAst& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Const: return value == o.value;
        case Kind::Var: return name == o.name;
        case Kind::Pow: return exponent == o.exponent && children == o.children;
        default: return children == o.children;
    }
}

// ---- parser ---------------------------------------------------------------

namespace {

constexpr std::size_t kMaxDepth = 2000;

class Parser {
public:
    Parser(const std::string& s, std::size_t base) : s_(s), base_(base) {}

    ExprAst parse_all() {
        ExprAst e = expr();
        skip();
        if (pos_ != s_.size()) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"}, "unexpected character");
        return e;
    }

private:
    const std::string& s_;
    std::size_t base_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail) const {
        throw SyntaxError(base_ + pos_, std::move(expected), detail);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& pp) : p(pp) {
            if (++p.depth_ > kMaxDepth) p.fail({}, "expression nested too deeply");
        }
        ~DepthGuard() { --p.depth_; }
    };

    ExprAst expr() {
        DepthGuard g(*this);
        ExprAst left = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                left = ExprAst::binary(ExprAst::Kind::Add, std::move(left), term());
            } else if (peek('-')) {
                ++pos_;
                left = ExprAst::binary(ExprAst::Kind::Sub, std::move(left), term());
            } else {
                return left;
            }
        }
    }

    ExprAst term() {
        ExprAst left = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                left = ExprAst::binary(ExprAst::Kind::Mul, std::move(left), factor());
            } else if (peek('/')) {
                ++pos_;
                left = ExprAst::binary(ExprAst::Kind::Div, std::move(left), factor());
            } else {
                return left;
            }
        }
    }

    ExprAst factor() {
        DepthGuard g(*this);
        if (peek('-')) {
            ++pos_;
            return ExprAst::neg(factor());
        }
        ExprAst a = atom();
        if (peek('^')) {
            ++pos_;
            skip();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail({"natural number"}, "exponent must be a non-negative integer");
            BigInteger n = nat();
            if (n > 1000000) fail({}, "exponent too large");
            return ExprAst::pow(std::move(a), static_cast<unsigned>(n.get_ui()));
        }
        return a;
    }

    BigInteger nat() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return BigInteger(s_.substr(start, pos_ - start), 10);
    }

    ExprAst atom() {
        skip();
        if (pos_ >= s_.size()) fail({"number", "identifier", "'('", "'-'"}, "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprAst e = expr();
            if (!peek(')')) fail({"')'"}, "unbalanced parenthesis");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInteger num = nat();
            std::size_t save = pos_;
            skip();
            if (pos_ + 1 <= s_.size() && pos_ < s_.size() && s_[pos_] == '/') {
                std::size_t after = pos_ + 1;
                while (after < s_.size() && std::isspace(static_cast<unsigned char>(s_[after]))) ++after;
                if (after < s_.size() && std::isdigit(static_cast<unsigned char>(s_[after]))) {
                    pos_ = after;
                    BigInteger den = nat();
                    if (den == 0) fail({}, "zero denominator in rational literal");
                    BigRational q(num, den);
                    q.canonicalize();
                    return ExprAst::constant(q);
                }
            }
            pos_ = save;
            return ExprAst::constant(BigRational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            ++pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return ExprAst::var(s_.substr(start, pos_ - start));
        }
        fail({"number", "identifier", "'('", "'-'"}, std::string("unexpected character '") + c + "'");
    }
};

// Binding strength used by the renderer.
int level(const ExprAst& a) {
    using K = ExprAst::Kind;
    switch (a.kind) {
        case K::Add:
        case K::Sub: return 1;
        case K::Mul:
        case K::Div: return 2;
        case K::Neg: return 3;
        case K::Pow: return 4;
        default: return 5;
    }
}

std::string render_const(const BigRational& v) {
    if (v < 0) return "(-" + BigRational(-v).get_str() + ")";
    return v.get_str();
}

std::string render(const ExprAst& a);

std::string wrap(const ExprAst& a, bool paren) {
    std::string s = render(a);
    return paren ? "(" + s + ")" : s;
}

std::string render(const ExprAst& a) {
    using K = ExprAst::Kind;
    switch (a.kind) {
        case K::Const: return render_const(a.value);
        case K::Var: return a.name;
        case K::Add:
        case K::Sub:
            return wrap(a.children[0], false) + (a.kind == K::Add ? " + " : " - ") +
                   wrap(a.children[1], level(a.children[1]) <= 1);
        case K::Mul:
        case K::Div: {
            std::string l = wrap(a.children[0], level(a.children[0]) < 2);
            std::string r = render(a.children[1]);
            bool paren = level(a.children[1]) <= 2;
            // a digit right after '/' would be read as part of a rational
            if (a.kind == K::Div && !r.empty() && std::isdigit(static_cast<unsigned char>(r[0]))) paren = true;
            if (a.kind == K::Mul && !r.empty() && std::isdigit(static_cast<unsigned char>(r[0])) &&
                !l.empty() && std::isdigit(static_cast<unsigned char>(l.back())))
                paren = true;
            return l + (a.kind == K::Mul ? "*" : "/") + (paren ? "(" + r + ")" : r);
        }
        case K::Neg: return "-" + wrap(a.children[0], level(a.children[0]) < 3);
        case K::Pow: {
            const ExprAst& b = a.children[0];
            bool paren = level(b) < 5 || (b.kind == K::Const && (b.value.get_den() != 1 || b.value < 0));
            return wrap(b, paren) + "^" + std::to_string(a.exponent);
        }
    }
    return {};
}

template <typename Lookup>
RationalFunction eval(const ExprAst& a, const Lookup& lookup) {
    using K = ExprAst::Kind;
    switch (a.kind) {
        case K::Const: return RationalFunction(a.value);
        case K::Var: return lookup(a.name);
        case K::Add: return eval(a.children[0], lookup) + eval(a.children[1], lookup);
        case K::Sub: return eval(a.children[0], lookup) - eval(a.children[1], lookup);
        case K::Mul: return eval(a.children[0], lookup) * eval(a.children[1], lookup);
        case K::Div: return eval(a.children[0], lookup) / eval(a.children[1], lookup);
        case K::Neg: return -eval(a.children[0], lookup);
        case K::Pow: return eval(a.children[0], lookup).pow(static_cast<int>(a.exponent));
    }
    return {};
}

void collect_names(const ExprAst& a, std::set<std::string>& out) {
    if (a.kind == ExprAst::Kind::Var) out.insert(a.name);
    for (const auto& c : a.children) collect_names(c, out);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool valid_ident(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

ExprAst parse_expr(const std::string& src) { return Parser(src, 0).parse_all(); }

std::string render_expr(const ExprAst& ast) { return render(ast); }

RationalFunction ast_to_rf(const ExprAst& ast, const std::map<std::string, Variable>& universe) {
    return eval(ast, [&](const std::string& n) {
        auto it = universe.find(n);
        if (it == universe.end()) throw UnknownSymbol(n);
        return RationalFunction::variable(it->second);
    });
}

RationalFunction ast_to_rf(const ExprAst& ast, const Bindings& values) {
    return eval(ast, [&](const std::string& n) {
        auto it = values.find(n);
        if (it == values.end()) throw UnknownSymbol(n);
        return it->second;
    });
}

RationalFunction parse_rational_function(const std::string& src) {
    auto ast = parse_expr(src);
    return eval(ast, [](const std::string& n) { return RationalFunction::variable(n); });
}

TransformFile parse_transform_file(const std::string& src) {
    TransformFile tf;
    std::set<std::string> seen_keys;
    std::map<int, ExprAst> outs;
    std::size_t line_start = 0;
    auto parse_int = [](const std::string& v, std::size_t off) {
        if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw SyntaxError(off, {"natural number"}, "bad integer '" + v + "'");
        return std::stoi(v);
    };
    auto parse_list = [](const std::string& v, std::size_t off) {
        std::vector<std::string> names;
        if (trim(v).empty()) return names;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!valid_ident(item)) throw SyntaxError(off, {"identifier"}, "bad name '" + item + "'");
            names.push_back(item);
        }
        return names;
    };
    while (line_start <= src.size()) {
        std::size_t nl = src.find('\n', line_start);
        if (nl == std::string::npos) nl = src.size();
        std::string line = src.substr(line_start, nl - line_start);
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string t = trim(line);
        std::size_t off = line_start + (line.find_first_not_of(" \t\r") == std::string::npos ? 0 : line.find_first_not_of(" \t\r"));
        if (!t.empty()) {
            if (t.rfind("out[", 0) == 0) {
                std::size_t close = t.find(']');
                std::size_t eq = t.find('=');
                if (close == std::string::npos || eq == std::string::npos || eq < close)
                    throw SyntaxError(off, {"out[<index>] = <expr>"}, "malformed output line");
                int idx = parse_int(trim(t.substr(4, close - 4)), off + 4);
                if (!trim(t.substr(close + 1, eq - close - 1)).empty())
                    throw SyntaxError(off + close + 1, {"'='"}, "malformed output line");
                if (outs.count(idx)) throw SyntaxError(off, {}, "duplicate out[" + std::to_string(idx) + "]");
                std::size_t eq_in_line = line.find('=');
                std::string body = line.substr(eq_in_line + 1);
                outs.emplace(idx, Parser(body, line_start + eq_in_line + 1).parse_all());
            } else {
                std::size_t colon = t.find(':');
                if (colon == std::string::npos)
                    throw SyntaxError(off, {"name:", "width:", "blocks:", "inputs:", "free:", "out[i] ="}, "unrecognized line");
                std::string key = trim(t.substr(0, colon));
                std::string val = trim(t.substr(colon + 1));
                if (seen_keys.count(key)) throw SyntaxError(off, {}, "duplicate key '" + key + "'");
                seen_keys.insert(key);
                if (key == "name") {
                    tf.name = val;
                } else if (key == "width") {
                    tf.block_width = parse_int(val, off);
                } else if (key == "blocks") {
                    tf.block_count = parse_int(val, off);
                } else if (key == "inputs") {
                    tf.input_names = parse_list(val, off);
                } else if (key == "free") {
                    tf.free_params = parse_list(val, off);
                } else if (key == "template") {
                    tf.matrix_template = val;
                } else if (key == "description") {
                    tf.description = val;
                } else if (key == "identity") {
                    tf.identity = val;
                } else {
                    throw SyntaxError(off, {"name", "width", "blocks", "inputs", "free", "template", "identity", "description"},
                                      "unknown key '" + key + "'");
                }
            }
        }
        line_start = nl + 1;
    }
    for (const char* k : {"name", "width", "blocks", "inputs", "free"})
        if (!seen_keys.count(k)) throw SyntaxError(src.size(), {std::string(k) + ":"}, "missing header key");
    if (tf.block_width < 1 || tf.block_width > 3) throw ArityMismatch("width must be 1, 2 or 3");
    if (tf.block_count < 1) throw ArityMismatch("blocks must be positive");
    std::size_t arity = static_cast<std::size_t>(tf.block_width * tf.block_count);
    if (tf.input_names.size() != arity)
        throw ArityMismatch(std::to_string(tf.input_names.size()) + " inputs declared, width*blocks = " + std::to_string(arity));
    std::set<std::string> declared;
    for (const auto& n : tf.input_names)
        if (!declared.insert(n).second) throw ArityMismatch("duplicate input name " + n);
    for (const auto& n : tf.free_params)
        if (!declared.insert(n).second) throw ArityMismatch("free name clashes with another name: " + n);
    if (outs.size() != arity)
        throw ArityMismatch(std::to_string(outs.size()) + " outputs for " + std::to_string(arity) + " inputs");
    int expect = 1;
    for (auto& [idx, ast] : outs) {
        if (idx != expect) throw ArityMismatch("output indices must run 1.." + std::to_string(arity));
        ++expect;
        std::set<std::string> used;
        collect_names(ast, used);
        for (const auto& n : used)
            if (!declared.count(n)) throw UnknownSymbol(n + " in out[" + std::to_string(idx) + "]");
        tf.outputs.push_back(std::move(ast));
    }
    return tf;
}

}  // namespace tetra
