#include <algorithm>
#include <map>

#include "tetra/exactalg.hpp"

namespace tetra {

namespace {

BigRational qpow(const BigRational& b, int e) {
    BigRational r = 1;
    BigRational base = e < 0 ? BigRational(1) / b : b;
    for (int k = 0, n = e < 0 ? -e : e; k < n; ++k) r *= base;
    return r;
}

Polynomial expand(const std::vector<RationalFunction::Factor>& fs, bool positive, int shift_sign = 1) {
    Polynomial p(1);
    for (const auto& [f, e] : fs) {
        int ee = e * shift_sign;
        if (positive ? ee > 0 : ee < 0) p = p * f.pow(static_cast<unsigned>(ee > 0 ? ee : -ee));
    }
    return p;
}

Polynomial expand_powers(const std::vector<std::pair<const Polynomial*, int>>& fs) {
    Polynomial p(1);
    for (const auto& [f, e] : fs)
        if (e > 0) p = p * f->pow(static_cast<unsigned>(e));
    return p;
}

}  // namespace

RationalFunction::RationalFunction(const BigRational& c) : coeff_(c) {}

RationalFunction::RationalFunction(const Polynomial& p) {
    if (p.is_zero()) return;
    coeff_ = 1;
    absorb(p, 1);
}

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DivisionByZeroFunction("zero denominator polynomial");
    if (num.is_zero()) return;
    coeff_ = 1;
    absorb(num, 1);
    absorb(den, -1);
    cancel_pairs();
}

RationalFunction RationalFunction::variable(const std::string& name) {
    return RationalFunction(Polynomial::variable(name));
}

RationalFunction RationalFunction::ratio(const std::string& num_var, const std::string& den_var) {
    return variable(num_var) / variable(den_var);
}

void RationalFunction::insert_factor(const Polynomial& prim, int exp) {
    if (exp == 0) return;
    auto it = std::lower_bound(factors_.begin(), factors_.end(), prim,
                               [](const Factor& f, const Polynomial& p) { return f.first.compare(p) < 0; });
    if (it != factors_.end() && it->first == prim) {
        it->second += exp;
        if (it->second == 0) factors_.erase(it);
    } else {
        factors_.insert(it, Factor{prim, exp});
    }
}

void RationalFunction::absorb(const Polynomial& p0, int exp) {
    if (exp == 0) return;
    if (p0.is_constant()) {
        coeff_ *= qpow(p0.constant_term(), exp);
        return;
    }
    Polynomial p = p0;
    Monomial m = p.monomial_content();
    if (!m.is_one()) {
        for (const auto& [v, e] : m.powers()) insert_factor(Polynomial::variable(v), static_cast<int>(e) * exp);
        std::vector<Term> ts;
        ts.reserve(p.size());
        for (const auto& t : p.terms()) ts.push_back(Term{t.mono / m, t.coeff});
        p = Polynomial::from_terms(std::move(ts));
        if (p.is_constant()) {
            coeff_ *= qpow(p.constant_term(), exp);
            return;
        }
    }
    BigRational c = p.content();
    coeff_ *= qpow(c, exp);
    insert_factor(p.scaled(BigRational(1) / c), exp);
}

void RationalFunction::cancel_pairs() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < factors_.size() && !changed; ++i) {
            for (std::size_t j = 0; j < factors_.size() && !changed; ++j) {
                if (i == j) continue;
                int ei = factors_[i].second, ej = factors_[j].second;
                if (ei <= 0 || ej >= 0) continue;
                // numerator factor divisible by a denominator factor, or the reverse
                for (int dir = 0; dir < 2; ++dir) {
                    const Polynomial& big = factors_[dir ? j : i].first;
                    const Polynomial& small = factors_[dir ? i : j].first;
                    int big_exp = dir ? ej : ei;
                    if (big.size() < 2 || big.total_degree() <= small.total_degree()) continue;
                    if (auto q = big.divide_exact(small)) {
                        Polynomial b = big, s = small, quot = *q;
                        insert_factor(b, -big_exp);
                        insert_factor(s, big_exp);
                        absorb(quot, big_exp);
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
}

Polynomial RationalFunction::num() const {
    if (is_zero()) return {};
    return expand(factors_, true).scaled(BigRational(coeff_.get_num()));
}

Polynomial RationalFunction::den() const {
    if (is_zero()) return Polynomial(1);
    return expand(factors_, false).scaled(BigRational(coeff_.get_den()));
}

bool RationalFunction::is_polynomial() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.second > 0; });
}

std::set<std::string> RationalFunction::variables() const {
    std::set<std::string> vs;
    for (const auto& f : factors_) {
        auto s = f.first.variables();
        vs.insert(s.begin(), s.end());
    }
    return vs;
}

bool RationalFunction::contains(const std::string& var) const {
    return std::any_of(factors_.begin(), factors_.end(), [&](const Factor& f) { return f.first.contains(var); });
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (is_zero() || o.is_zero()) return {};
    RationalFunction r = *this;
    r.coeff_ *= o.coeff_;
    bool cross = false;
    for (const auto& [f, e] : o.factors_) {
        r.insert_factor(f, e);
        cross = true;
    }
    if (cross && !factors_.empty()) r.cancel_pairs();
    return r;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DivisionByZeroFunction("inverse of zero rational function");
    RationalFunction r = *this;
    r.coeff_ = BigRational(1) / coeff_;
    for (auto& f : r.factors_) f.second = -f.second;
    return r;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DivisionByZeroFunction("division by the zero rational function");
    return *this * o.inverse();
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.coeff_ = -coeff_;
    return r;
}

RationalFunction RationalFunction::pow(int e) const {
    if (e == 0) return RationalFunction(1);
    if (is_zero()) {
        if (e < 0) throw DivisionByZeroFunction("negative power of zero");
        return {};
    }
    RationalFunction r = *this;
    r.coeff_ = qpow(coeff_, e);
    for (auto& f : r.factors_) f.second *= e;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    // split x = G*X, y = G*Y with X, Y polynomials
    RationalFunction g;
    g.coeff_ = 1;
    std::vector<std::pair<const Polynomial*, int>> xs, ys;
    auto i = factors_.begin();
    auto j = o.factors_.begin();
    auto take = [&](const Polynomial& f, int ex, int ey) {
        int m = std::min(ex, ey);
        if (m) g.factors_.push_back(Factor{f, m});
        if (ex - m) xs.emplace_back(&f, ex - m);
        if (ey - m) ys.emplace_back(&f, ey - m);
    };
    while (i != factors_.end() || j != o.factors_.end()) {
        int c;
        if (i == factors_.end())
            c = 1;
        else if (j == o.factors_.end())
            c = -1;
        else
            c = i->first.compare(j->first);
        if (c == 0) {
            take(i->first, i->second, j->second);
            ++i, ++j;
        } else if (c < 0) {
            take(i->first, i->second, 0);
            ++i;
        } else {
            take(j->first, 0, j->second);
            ++j;
        }
    }
    Polynomial s = expand_powers(xs).scaled(coeff_) + expand_powers(ys).scaled(o.coeff_);
    if (s.is_zero()) return {};
    g.absorb(s, 1);
    g.cancel_pairs();
    return g;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::derivative(const std::string& var) const {
    if (is_zero()) return {};
    RationalFunction sum;
    for (const auto& [f, e] : factors_) {
        Polynomial df = f.derivative(var);
        if (df.is_zero()) continue;
        sum += RationalFunction(df.scaled(e), f);
    }
    return *this * sum;
}

std::string RationalFunction::render() const {
    Polynomial n = num();
    Polynomial d = den();
    if (d == Polynomial(1)) return n.render();
    std::string ns = n.render();
    if (n.size() > 1) ns = "(" + ns + ")";
    std::string ds = d.render();
    bool simple_den = d.is_constant() ||
                      (d.size() == 1 && d.leading().coeff == 1 && d.leading().mono.powers().size() == 1);
    if (!simple_den) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

RationalFunction rf_arith(const RationalFunction& lhs, const RationalFunction& rhs, RfOp op) {
    switch (op) {
        case RfOp::Add: return lhs + rhs;
        case RfOp::Sub: return lhs - rhs;
        case RfOp::Mul: return lhs * rhs;
        case RfOp::Div: return lhs / rhs;
    }
    return {};
}

bool rf_equal(const RationalFunction& lhs, const RationalFunction& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return lhs.is_zero() && rhs.is_zero();
    // lhs = G*X/D, rhs = G*Y/D after peeling the shared part; compare the
    // cross products X*Dy and Y*Dx
    std::vector<std::pair<const Polynomial*, int>> lx, rx;
    const auto& a = lhs.factors();
    const auto& b = rhs.factors();
    auto i = a.begin();
    auto j = b.begin();
    auto take = [&](const Polynomial& f, int ex, int ey) {
        int m = std::min(ex, ey);
        if (ex - m) lx.emplace_back(&f, ex - m);
        if (ey - m) rx.emplace_back(&f, ey - m);
    };
    while (i != a.end() || j != b.end()) {
        int c;
        if (i == a.end())
            c = 1;
        else if (j == b.end())
            c = -1;
        else
            c = i->first.compare(j->first);
        if (c == 0) {
            take(i->first, i->second, j->second);
            ++i, ++j;
        } else if (c < 0) {
            take(i->first, i->second, 0);
            ++i;
        } else {
            take(j->first, 0, j->second);
            ++j;
        }
    }
    if (lx.empty() && rx.empty()) return lhs.coefficient() == rhs.coefficient();
    return expand_powers(lx).scaled(lhs.coefficient()) == expand_powers(rx).scaled(rhs.coefficient());
}

RationalFunction substitute(const Polynomial& p, const Bindings& bindings) {
    // Homogenize over the binding denominators: p(N/D) = P'/prod D_v^deg_v.
    struct Bound {
        Polynomial num, den;
        RationalFunction den_rf;
        unsigned maxdeg = 0;
        std::map<unsigned, Polynomial> num_pows, den_pows;
    };
    std::map<std::string, Bound> used;
    for (const auto& v : p.variables()) {
        auto it = bindings.find(v);
        if (it == bindings.end()) continue;
        Bound b;
        b.num = it->second.num();
        b.den = it->second.den();
        b.maxdeg = p.degree_in(v);
        used.emplace(v, std::move(b));
    }
    if (used.empty()) return RationalFunction(p);
    auto power = [](std::map<unsigned, Polynomial>& cache, const Polynomial& base, unsigned e) -> const Polynomial& {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        return cache.emplace(e, base.pow(e)).first->second;
    };
    Polynomial numer;
    for (const auto& t : p.terms()) {
        Polynomial v(t.coeff);
        Monomial keep;
        std::map<std::string, unsigned> seen;
        for (const auto& [name, e] : t.mono.powers()) {
            auto it = used.find(name);
            if (it == used.end()) {
                keep = keep * Monomial::of(name, e);
                continue;
            }
            seen[name] = e;
        }
        for (auto& [name, b] : used) {
            unsigned e = seen.count(name) ? seen[name] : 0;
            if (e) v = v * power(b.num_pows, b.num, e);
            if (b.maxdeg - e) v = v * power(b.den_pows, b.den, b.maxdeg - e);
        }
        numer = numer + v.times(keep);
    }
    RationalFunction result(numer);
    if (result.is_zero()) return result;
    RationalFunction den(1);
    for (auto& [name, b] : used) {
        if (b.den == Polynomial(1) || b.maxdeg == 0) continue;
        den *= RationalFunction(b.den).pow(static_cast<int>(b.maxdeg));
    }
    return result / den;
}

RationalFunction substitute(const RationalFunction& expr, const Bindings& bindings) {
    if (expr.is_zero()) return expr;
    RationalFunction result(expr.coefficient());
    bool zero = false;
    for (const auto& [f, e] : expr.factors()) {
        RationalFunction v = substitute(f, bindings);
        if (v.is_zero()) {
            if (e < 0) throw DenominatorVanishes("factor " + f.render() + " vanishes after substitution");
            zero = true;
            continue;
        }
        if (!zero) result *= v.pow(e);
    }
    return zero ? RationalFunction() : result;
}

BigRational evaluate(const RationalFunction& expr, const Point& point) {
    if (expr.is_zero()) {
        return 0;
    }
    BigRational num = expr.coefficient(), den = 1;
    for (const auto& [f, e] : expr.factors()) {
        BigRational v = f.evaluate(point);
        if (e < 0) {
            if (v == 0) throw PoleAtPoint("denominator factor " + f.render() + " vanishes");
            den *= qpow(v, -e);
        } else {
            num *= qpow(v, e);
        }
    }
    return num / den;
}

}  // namespace tetra
