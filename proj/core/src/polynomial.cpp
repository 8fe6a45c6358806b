#include <algorithm>
#include <map>
#include <sstream>

#include "tetra/exactalg.hpp"

namespace tetra {

std::string to_string(const BigRational& q) { return q.get_str(); }

// ---- Monomial -------------------------------------------------------------

Monomial Monomial::of(const std::string& var, unsigned exp) {
    Monomial m;
    if (exp) m.powers_.emplace_back(var, exp);
    return m;
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& p : powers_) d += p.second;
    return d;
}

unsigned Monomial::exponent(const std::string& var) const {
    auto it = std::lower_bound(powers_.begin(), powers_.end(), var,
                               [](const Power& p, const std::string& v) { return p.first < v; });
    return (it != powers_.end() && it->first == var) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.powers_.reserve(powers_.size() + o.powers_.size());
    auto i = powers_.begin();
    auto j = o.powers_.begin();
    while (i != powers_.end() && j != o.powers_.end()) {
        if (i->first == j->first) {
            r.powers_.emplace_back(i->first, i->second + j->second);
            ++i, ++j;
        } else if (i->first < j->first) {
            r.powers_.push_back(*i++);
        } else {
            r.powers_.push_back(*j++);
        }
    }
    r.powers_.insert(r.powers_.end(), i, powers_.end());
    r.powers_.insert(r.powers_.end(), j, o.powers_.end());
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    auto j = o.powers_.begin();
    for (const auto& p : powers_) {
        while (j != o.powers_.end() && j->first < p.first) ++j;
        if (j == o.powers_.end() || j->first != p.first || j->second < p.second) return false;
    }
    return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    auto j = o.powers_.begin();
    for (const auto& p : powers_) {
        while (j != o.powers_.end() && j->first < p.first) ++j;
        unsigned sub = (j != o.powers_.end() && j->first == p.first) ? j->second : 0;
        if (p.second > sub) r.powers_.emplace_back(p.first, p.second - sub);
    }
    return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto j = b.powers_.begin();
    for (const auto& p : a.powers_) {
        while (j != b.powers_.end() && j->first < p.first) ++j;
        if (j != b.powers_.end() && j->first == p.first)
            r.powers_.emplace_back(p.first, std::min(p.second, j->second));
    }
    return r;
}

Monomial Monomial::without(const std::string& var) const {
    Monomial r;
    for (const auto& p : powers_)
        if (p.first != var) r.powers_.push_back(p);
    return r;
}

std::string Monomial::render() const {
    std::string s;
    for (const auto& [v, e] : powers_) {
        if (!s.empty()) s += '*';
        s += v;
        if (e != 1) s += '^' + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    auto i = a.powers().begin();
    auto j = b.powers().begin();
    while (i != a.powers().end() && j != b.powers().end()) {
        if (i->first == j->first) {
            if (i->second != j->second) return i->second > j->second ? 1 : -1;
            ++i, ++j;
        } else {
            // the monomial holding the smaller name has a positive exponent
            // where the other has zero
            return i->first < j->first ? 1 : -1;
        }
    }
    if (i != a.powers().end()) return 1;
    if (j != b.powers().end()) return -1;
    return 0;
}

namespace {

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

using TermMap = std::map<Monomial, BigRational, GrlexGreater>;

std::vector<Term> flatten(TermMap& acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.push_back(Term{m, std::move(c)});
    return out;
}

}  // namespace

// ---- Polynomial -----------------------------------------------------------

Polynomial::Polynomial(const BigRational& c) {
    if (c != 0) terms_.push_back(Term{Monomial{}, c});
}

Polynomial Polynomial::variable(const std::string& name) {
    Polynomial p;
    p.terms_.push_back(Term{Monomial::of(name), BigRational(1)});
    return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const BigRational& c) {
    Polynomial p;
    if (c != 0) p.terms_.push_back(Term{m, c});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    TermMap acc;
    for (auto& t : terms) acc[t.mono] += t.coeff;
    Polynomial p;
    p.terms_ = flatten(acc);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

BigRational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
}

unsigned Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

unsigned Polynomial::degree_in(const std::string& var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
    return d;
}

std::set<std::string> Polynomial::variables() const {
    std::set<std::string> vs;
    for (const auto& t : terms_)
        for (const auto& p : t.mono.powers()) vs.insert(p.first);
    return vs;
}

bool Polynomial::contains(const std::string& var) const {
    for (const auto& t : terms_)
        if (t.mono.exponent(var)) return true;
    return false;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() && j != o.terms_.end()) {
        int c = grlex_compare(i->mono, j->mono);
        if (c > 0) {
            r.terms_.push_back(*i++);
        } else if (c < 0) {
            r.terms_.push_back(*j++);
        } else {
            BigRational s = i->coeff + j->coeff;
            if (s != 0) r.terms_.push_back(Term{i->mono, s});
            ++i, ++j;
        }
    }
    r.terms_.insert(r.terms_.end(), i, terms_.end());
    r.terms_.insert(r.terms_.end(), j, o.terms_.end());
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    if (o.terms_.size() == 1) return times(o.terms_[0].mono).scaled(o.terms_[0].coeff);
    if (terms_.size() == 1) return o.times(terms_[0].mono).scaled(terms_[0].coeff);
    TermMap acc;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) acc[a.mono * b.mono] += a.coeff * b.coeff;
    Polynomial r;
    r.terms_ = flatten(acc);
    return r;
}

Polynomial Polynomial::scaled(const BigRational& c) const {
    if (c == 0) return {};
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Polynomial Polynomial::times(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.mono = t.mono * m;  // order is preserved
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& o) const {
    if (o.is_zero()) return std::nullopt;
    if (is_zero()) return Polynomial{};
    const Term& lead = o.terms_.front();
    if (o.terms_.size() == 1) {
        Polynomial q;
        q.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!lead.mono.divides(t.mono)) return std::nullopt;
            q.terms_.push_back(Term{t.mono / lead.mono, t.coeff / lead.coeff});
        }
        return q;
    }
    if (total_degree() < o.total_degree()) return std::nullopt;
    std::vector<Term> quot;
    Polynomial rem = *this;
    while (!rem.is_zero()) {
        const Term& rt = rem.terms_.front();
        if (!lead.mono.divides(rt.mono)) return std::nullopt;
        Term qt{rt.mono / lead.mono, rt.coeff / lead.coeff};
        rem = rem - o.times(qt.mono).scaled(qt.coeff);
        quot.push_back(std::move(qt));
    }
    // quotient terms were produced in strictly decreasing order
    Polynomial q;
    q.terms_ = std::move(quot);
    return q;
}

Polynomial Polynomial::derivative(const std::string& var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = t.mono.exponent(var);
        if (!e) continue;
        Monomial m = t.mono.without(var) * Monomial::of(var, e - 1);
        out.push_back(Term{m, t.coeff * e});
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::coefficient_of(const std::string& var, unsigned k) const {
    std::vector<Term> out;
    for (const auto& t : terms_)
        if (t.mono.exponent(var) == k) out.push_back(Term{t.mono.without(var), t.coeff});
    return from_terms(std::move(out));
}

BigRational Polynomial::evaluate(const Point& point) const {
    BigRational sum = 0;
    for (const auto& t : terms_) {
        BigRational v = t.coeff;
        for (const auto& [name, e] : t.mono.powers()) {
            auto it = point.find(name);
            if (it == point.end()) throw UnboundVariable(name);
            BigRational b = it->second;
            for (unsigned k = 0; k < e; ++k) v *= b;
        }
        sum += v;
    }
    return sum;
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& b) const {
    Polynomial sum;
    for (const auto& t : terms_) {
        Polynomial v(t.coeff);
        Monomial keep;
        for (const auto& [name, e] : t.mono.powers()) {
            auto it = b.find(name);
            if (it == b.end())
                keep = keep * Monomial::of(name, e);
            else
                v = v * it->second.pow(e);
        }
        sum = sum + v.times(keep);
    }
    return sum;
}

Monomial Polynomial::monomial_content() const {
    if (terms_.empty()) return {};
    Monomial g = terms_.front().mono;
    for (const auto& t : terms_) {
        if (g.is_one()) break;
        g = Monomial::gcd(g, t.mono);
    }
    return g;
}

BigRational Polynomial::content() const {
    if (terms_.empty()) return 1;
    BigInteger num_gcd = 0, den_lcm = 1;
    for (const auto& t : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    BigRational c(num_gcd, den_lcm);
    c.canonicalize();
    if (terms_.front().coeff < 0) c = -c;
    return c;
}

int Polynomial::compare(const Polynomial& o) const {
    std::size_t n = std::min(terms_.size(), o.terms_.size());
    for (std::size_t k = 0; k < n; ++k) {
        int c = grlex_compare(terms_[k].mono, o.terms_[k].mono);
        if (c) return c;
        int d = cmp(terms_[k].coeff, o.terms_[k].coeff);
        if (d) return d > 0 ? 1 : -1;
    }
    if (terms_.size() != o.terms_.size()) return terms_.size() > o.terms_.size() ? 1 : -1;
    return 0;
}

std::string Polynomial::render() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        BigRational c = t.coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        if (t.mono.is_one()) {
            s += c.get_str();
        } else if (c == 1) {
            s += t.mono.render();
        } else {
            s += c.get_str() + "*" + t.mono.render();
        }
    }
    return s;
}

Polynomial poly_arith(const Polynomial& lhs, const Polynomial& rhs, PolyOp op) {
    switch (op) {
        case PolyOp::Add: return lhs + rhs;
        case PolyOp::Sub: return lhs - rhs;
        case PolyOp::Mul: return lhs * rhs;
    }
    return {};
}

}  // namespace tetra
