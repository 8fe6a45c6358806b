#include "tetra/wronskian.hpp"
#include <functional>
#include <map>

namespace tetra {

namespace {

using RF = RationalFunction;

BigRational factorial(unsigned k) {
    BigInteger f = 1;
    for (unsigned j = 2; j <= k; ++j) f *= j;
    return BigRational(f);
}

RF monomial(const std::string& var, unsigned k) { return RF::variable(var).pow(static_cast<int>(k)); }

void check_index(std::size_t i, std::size_t size) {
    if (i < 1 || i + 1 > size)
        throw IndexOutOfRange("A_i needs 1 <= i <= " + std::to_string(size - 1) + ", got " + std::to_string(i));
}

unsigned default_order(std::size_t r_plus_1, unsigned order) {
    return order ? order : static_cast<unsigned>(2 * r_plus_1);
}

}  // namespace

RF coefficient(const RF& f, const std::string& var, unsigned k) {
    if (f.den().contains(var)) return TruncatedSeries::from_rf(f, var, k)[k];
    return RF(f.num().coefficient_of(var, k)) / RF(f.den());
}

RF wronskian_det(const std::vector<RF>& us, const std::string& var) {
    if (us.empty()) return RF(1);
    std::size_t n = us.size();
    MatrixRF m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        RF d = us[j];
        for (std::size_t i = 0; i < n; ++i) {
            m(i, j) = d;
            if (i + 1 < n) d = d.derivative(var);
        }
    }
    return determinant(m);
}

TruncatedSeries wronskian_det(const std::vector<TruncatedSeries>& us) {
    if (us.empty()) throw ArityMismatch("Wronskian of an empty series list");
    std::size_t n = us.size();
    unsigned lowest = us.front().order();
    for (const auto& u : us) lowest = std::min(lowest, u.order());
    if (lowest + 1 < n)
        throw InsufficientTruncationOrder("Wronskian of " + std::to_string(n) + " series needs order >= " +
                                          std::to_string(n - 1) + ", got " + std::to_string(lowest));
    // rows[i][j] = u_j^(i)
    std::vector<std::vector<TruncatedSeries>> rows(n);
    for (std::size_t j = 0; j < n; ++j) {
        TruncatedSeries d = us[j];
        for (std::size_t i = 0; i < n; ++i) {
            rows[i].push_back(d);
            if (i + 1 < n) d = d.derivative();
        }
    }
    // Laplace expansion along the first column, memoized by used-column mask
    std::map<std::pair<std::size_t, unsigned>, TruncatedSeries> memo;
    std::function<TruncatedSeries(std::size_t, unsigned)> det = [&](std::size_t row, unsigned used) -> TruncatedSeries {
        if (row == n) return TruncatedSeries::constant(RF(1), us.front().var(), lowest);
        auto key = std::make_pair(row, used);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        TruncatedSeries acc(us.front().var(), lowest);
        int sign = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (used & (1u << j)) continue;
            auto term = rows[row][j] * det(row + 1, used | (1u << j));
            acc = sign > 0 ? acc + term : acc - term;
            sign = -sign;
        }
        memo.emplace(key, acc);
        return acc;
    };
    return det(0, 0).truncated(lowest + 1 - static_cast<unsigned>(n));
}

PolyTuple standard_collection(std::size_t r_plus_1, const std::vector<RF>& c, const std::string& var) {
    if (!c.empty() && c.size() != r_plus_1)
        throw ArityMismatch("expected " + std::to_string(r_plus_1) + " constants, got " + std::to_string(c.size()));
    PolyTuple u;
    u.var = var;
    for (std::size_t i = 0; i < r_plus_1; ++i) {
        RF ci = c.empty() ? RF(1) : c[i];
        u.polys.push_back(ci * monomial(var, static_cast<unsigned>(i)) / RF(factorial(static_cast<unsigned>(i))));
        u.params.push_back(ci);
    }
    return u;
}

PolyTuple normalize_collection(const std::vector<RF>& us, const std::vector<RF>& c, const std::string& var) {
    if (!c.empty() && c.size() != us.size())
        throw ArityMismatch("expected " + std::to_string(us.size()) + " constants, got " + std::to_string(c.size()));
    PolyTuple out;
    out.var = var;
    for (std::size_t i = 0; i < us.size(); ++i) {
        if (us[i].den().contains(var)) throw NotInGeneralPosition("u_" + std::to_string(i + 1) + " is not a polynomial");
        RF u = us[i];
        for (std::size_t j = 0; j < i; ++j) {
            // out.polys[j] = c_j x^j/j! + ..., kill the x^j term of u
            RF lead = coefficient(out.polys[j], var, static_cast<unsigned>(j));
            RF cu = coefficient(u, var, static_cast<unsigned>(j));
            if (!cu.is_zero()) u = u - cu / lead * out.polys[j];
        }
        RF cu = coefficient(u, var, static_cast<unsigned>(i));
        if (cu.is_zero())
            throw NotInGeneralPosition("u_" + std::to_string(i + 1) + " has no x^" + std::to_string(i) +
                                       " term after elimination");
        RF ci = c.empty() ? RF(1) : c[i];
        u = u * ci / (cu * RF(factorial(static_cast<unsigned>(i))));
        out.polys.push_back(u);
        out.params.push_back(ci);
    }
    return out;
}

PolyTuple a_on_collection(const PolyTuple& u, std::size_t i, const RF& a) {
    check_index(i, u.size());
    if (a.is_zero()) throw DivisionByZeroFunction("A_i(0)");
    PolyTuple out = u;
    out.polys[i - 1] = u.polys[i - 1] / a + u.polys[i];
    out.polys[i] = a * u.polys[i];
    out.params[i - 1] = u.params[i - 1] / a;
    out.params[i] = a * u.params[i];
    return out;
}

WrTuple wr_map(const PolyTuple& u, unsigned order) {
    order = default_order(u.size(), order);
    WrTuple f;
    RF prod(1);
    for (std::size_t i = 1; i <= u.size(); ++i) {
        std::vector<RF> prefix(u.polys.begin(), u.polys.begin() + static_cast<long>(i));
        RF w = wronskian_det(prefix, u.var);
        prod = prod * u.params[i - 1];
        auto s = TruncatedSeries::from_rf(w, u.var, order);
        if (!rf_equal(s[0], prod))
            throw NotInGeneralPosition("f_" + std::to_string(i) + "(0) = " + s[0].render() + ", expected " +
                                       prod.render());
        f.f.push_back(std::move(s));
        f.a.push_back(prod);
    }
    return f;
}

TruncatedSeries solve_evolution_ode(const TruncatedSeries& fi, const TruncatedSeries& rhs) {
    unsigned order = std::min(fi.order(), rhs.order() + 1);
    const RF& f0 = fi[0];
    if (f0.is_zero()) {
        if (!rhs[0].is_zero()) throw ODEInconsistent("f_i(0) = 0 but the right-hand side does not vanish at 0");
        throw ODEInconsistent("f_i(0) = 0: the solution is not determined");
    }
    std::vector<RF> g(order + 1, RF(0));
    // coefficient k: sum_j f[j](k-j+1) g[k-j+1] - sum_j (j+1) f[j+1] g[k-j] = rhs[k]
    for (unsigned k = 0; k + 1 <= order; ++k) {
        RF acc = rhs[k];
        for (unsigned j = 1; j <= k; ++j) acc -= fi[j] * RF(long(k - j + 1)) * g[k - j + 1];
        for (unsigned j = 0; j <= k && j + 1 <= fi.order(); ++j) acc += RF(long(j + 1)) * fi[j + 1] * g[k - j];
        g[k + 1] = acc / (f0 * RF(long(k + 1)));
    }
    return TruncatedSeries(fi.var(), order, std::move(g));
}

WrTuple a_on_wrtuple(const WrTuple& f, std::size_t i, const RF& a, WrMode mode) {
    check_index(i, f.f.size());
    if (a.is_zero()) throw DivisionByZeroFunction("A_i(0)");
    const auto& fi = f.f[i - 1];
    TruncatedSeries prev = i >= 2 ? f.f[i - 2] : TruncatedSeries::constant(RF(1), fi.var(), fi.order());
    TruncatedSeries hat = solve_evolution_ode(fi, prev * f.f[i]);
    WrTuple out = f;
    out.f[i - 1] = fi.scaled(a.inverse()) + hat;
    out.a[i - 1] = f.a[i - 1] / a;
    if (mode == WrMode::Literal) {
        out.f[i] = f.f[i].scaled(a);
        out.a[i] = f.a[i] * a;
    }
    return out;
}

CommutationReport check_commutation(const PolyTuple& u, const std::vector<Op>& ops, unsigned order, WrMode mode) {
    order = default_order(u.size(), order);
    CommutationReport rep;
    PolyTuple moved = u;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) moved = a_on_collection(moved, it->i, it->a);
    rep.lhs = wr_map(moved, order);
    rep.rhs = wr_map(u, order);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) rep.rhs = a_on_wrtuple(rep.rhs, it->i, it->a, mode);
    rep.equal = true;
    for (std::size_t k = 0; k < rep.lhs.f.size(); ++k) {
        if (!series_equal(rep.lhs.f[k], rep.rhs.f[k])) {
            rep.equal = false;
            rep.mismatch = "f_" + std::to_string(k + 1) + ": " + rep.lhs.f[k].render() + " vs " + rep.rhs.f[k].render();
            break;
        }
    }
    return rep;
}

std::vector<WronskianCoordinate> wronskian_coordinates(const ReducedWord& word,
                                                       const std::vector<std::vector<RF>>& blocks, Template t,
                                                       const std::vector<RF>& u0, const std::string& var) {
    auto n = static_cast<std::size_t>(word.n);
    std::vector<RF> u = u0.empty() ? standard_collection(n, {}, var).polys : u0;
    if (u.size() != n) throw ArityMismatch("expected " + std::to_string(n) + " polynomials, got " + std::to_string(u.size()));
    auto prefixes = product_along_word(word, blocks, t);
    MatrixRF column(n, 1);
    for (std::size_t i = 0; i < n; ++i) column(i, 0) = u[n - 1 - i];
    std::vector<WronskianCoordinate> out;
    std::size_t last = std::min(n, word.length());
    for (std::size_t k = 0; k <= last; ++k) {
        WronskianCoordinate c;
        c.k = k;
        c.sigma = permutation_factorization(prefixes[k], Side::Left);
        MatrixRF v = permutation_matrix(c.sigma) * prefixes[k] * column;
        for (std::size_t i = 0; i < k; ++i) c.v.push_back(v(i, 0));
        c.w = wronskian_det(c.v, var);
        c.e = coefficient(c.w, var, 0);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace tetra
