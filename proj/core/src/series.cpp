#include <algorithm>

#include "tetra/exactalg.hpp"

namespace tetra {

TruncatedSeries::TruncatedSeries(std::string var, unsigned order)
    : var_(std::move(var)), order_(order), coeffs_(order + 1) {}

TruncatedSeries::TruncatedSeries(std::string var, unsigned order, std::vector<RationalFunction> coeffs)
    : var_(std::move(var)), order_(order), coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
}

TruncatedSeries TruncatedSeries::from_polynomial(const Polynomial& p, const std::string& var, unsigned order) {
    TruncatedSeries s(var, order);
    for (unsigned k = 0; k <= order; ++k) s.coeffs_[k] = RationalFunction(p.coefficient_of(var, k));
    return s;
}

TruncatedSeries TruncatedSeries::from_rf(const RationalFunction& f, const std::string& var, unsigned order) {
    TruncatedSeries n = from_polynomial(f.num(), var, order);
    TruncatedSeries d = from_polynomial(f.den(), var, order);
    return n * d.inverse();
}

TruncatedSeries TruncatedSeries::constant(const RationalFunction& c, const std::string& var, unsigned order) {
    TruncatedSeries s(var, order);
    s.coeffs_[0] = c;
    return s;
}

namespace {
void same_var(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.var() != b.var()) throw MixedSeriesVariable(a.var() + " vs " + b.var());
}
}  // namespace

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    same_var(*this, o);
    unsigned t = std::min(order_, o.order_);
    TruncatedSeries r(var_, t);
    for (unsigned k = 0; k <= t; ++k) r.coeffs_[k] = coeffs_[k] + o.coeffs_[k];
    return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + (-o); }

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    same_var(*this, o);
    unsigned t = std::min(order_, o.order_);
    TruncatedSeries r(var_, t);
    for (unsigned i = 0; i <= t; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (unsigned j = 0; i + j <= t; ++j) {
            if (o.coeffs_[j].is_zero()) continue;
            r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const RationalFunction& c) const {
    TruncatedSeries r = *this;
    for (auto& x : r.coeffs_) x = x * c;
    return r;
}

TruncatedSeries TruncatedSeries::derivative() const {
    if (order_ == 0) throw InsufficientTruncationOrder("derivative of an order-0 series");
    TruncatedSeries r(var_, order_ - 1);
    for (unsigned k = 0; k + 1 <= order_; ++k) r.coeffs_[k] = coeffs_[k + 1] * RationalFunction(long(k + 1));
    return r;
}

TruncatedSeries TruncatedSeries::truncated(unsigned order) const {
    if (order > order_) throw InsufficientTruncationOrder("cannot raise truncation order");
    std::vector<RationalFunction> c(coeffs_.begin(), coeffs_.begin() + order + 1);
    return TruncatedSeries(var_, order, std::move(c));
}

TruncatedSeries TruncatedSeries::inverse() const {
    if (coeffs_[0].is_zero()) throw DivisionByZeroFunction("series with zero constant term");
    TruncatedSeries r(var_, order_);
    RationalFunction inv0 = coeffs_[0].inverse();
    r.coeffs_[0] = inv0;
    for (unsigned k = 1; k <= order_; ++k) {
        RationalFunction acc;
        for (unsigned j = 1; j <= k; ++j) acc += coeffs_[j] * r.coeffs_[k - j];
        r.coeffs_[k] = -acc * inv0;
    }
    return r;
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const RationalFunction& c) { return c.is_zero(); });
}

std::string TruncatedSeries::render() const {
    std::string s;
    for (unsigned k = 0; k <= order_; ++k) {
        if (coeffs_[k].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string c = coeffs_[k].render();
        bool wrap = c.find_first_of("+-/") != std::string::npos && k > 0;
        if (k == 0) {
            s += c;
        } else {
            std::string mono = var_ + (k > 1 ? "^" + std::to_string(k) : "");
            s += (c == "1") ? mono : (wrap ? "(" + c + ")" : c) + "*" + mono;
        }
    }
    if (s.empty()) s = "0";
    return s + " + O(" + var_ + "^" + std::to_string(order_ + 1) + ")";
}

TruncatedSeries series_arith(const TruncatedSeries& lhs, const TruncatedSeries& rhs, SeriesOp op) {
    return op == SeriesOp::Add ? lhs + rhs : lhs * rhs;
}

TruncatedSeries series_derivative(const TruncatedSeries& s) { return s.derivative(); }

bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.var() != b.var()) return false;
    unsigned t = std::min(a.order(), b.order());
    for (unsigned k = 0; k <= t; ++k)
        if (!rf_equal(a[k], b[k])) return false;
    return true;
}

}  // namespace tetra
