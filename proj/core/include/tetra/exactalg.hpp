#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tetra/errors.hpp"

namespace tetra {

using BigInteger = mpz_class;
using BigRational = mpq_class;

std::string to_string(const BigRational& q);

struct Variable {
    std::string name;
    Variable() = default;
    explicit Variable(std::string n) : name(std::move(n)) {}
    auto operator<=>(const Variable&) const = default;
};

// Sparse power product, variables kept sorted by name.
class Monomial {
public:
    using Power = std::pair<std::string, unsigned>;

    Monomial() = default;
    static Monomial of(const std::string& var, unsigned exp = 1);

    const std::vector<Power>& powers() const { return powers_; }
    bool is_one() const { return powers_.empty(); }
    unsigned degree() const;
    unsigned exponent(const std::string& var) const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;  // requires divides
    static Monomial gcd(const Monomial& a, const Monomial& b);
    Monomial without(const std::string& var) const;

    bool operator==(const Monomial&) const = default;
    std::string render() const;

private:
    std::vector<Power> powers_;
};

// Graded lexicographic comparison on variable-name order.
// Returns <0, 0, >0; a greater monomial comes first in canonical order.
int grlex_compare(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    BigRational coeff;
    bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
};

class RationalFunction;
using Bindings = std::map<std::string, RationalFunction>;
using Point = std::map<std::string, BigRational>;

// Multivariate polynomial over Q. Terms are sorted in descending grlex
// order and carry nonzero coefficients, so equal polynomials have equal
// term vectors.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const BigRational& c);  // NOLINT: implicit constant
    Polynomial(long c) : Polynomial(BigRational(c)) {}  // NOLINT
    static Polynomial variable(const std::string& name);
    static Polynomial variable(const Variable& v) { return variable(v.name); }
    static Polynomial monomial(const Monomial& m, const BigRational& c);
    static Polynomial from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BigRational constant_term() const;
    const Term& leading() const { return terms_.front(); }
    std::size_t size() const { return terms_.size(); }
    unsigned total_degree() const;
    unsigned degree_in(const std::string& var) const;
    std::set<std::string> variables() const;
    bool contains(const std::string& var) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const BigRational& c) const;
    Polynomial times(const Monomial& m) const;
    Polynomial pow(unsigned e) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    // Exact quotient if o divides *this, nothing otherwise.
    std::optional<Polynomial> divide_exact(const Polynomial& o) const;
    // Partial derivative.
    Polynomial derivative(const std::string& var) const;
    // Coefficient of var^k, as a polynomial in the other variables.
    Polynomial coefficient_of(const std::string& var, unsigned k) const;

    BigRational evaluate(const Point& point) const;
    Polynomial substitute(const std::map<std::string, Polynomial>& b) const;

    // Monomial gcd of all terms (1 for zero).
    Monomial monomial_content() const;
    // Positive rational c with *this / c having coprime integer
    // coefficients and a positive leading coefficient. Sign is carried.
    BigRational content() const;

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    // Total order used for sorting factor lists.
    int compare(const Polynomial& o) const;

    std::string render() const;

private:
    std::vector<Term> terms_;
};

enum class PolyOp { Add, Sub, Mul };
Polynomial poly_arith(const Polynomial& lhs, const Polynomial& rhs, PolyOp op);

// Element of Q(vars). Stored as coeff * prod f_i^{e_i} where each f_i is a
// primitive integer polynomial with positive leading coefficient and e_i is
// a nonzero integer. Factors are not guaranteed irreducible; num()/den()
// expand to the content-reduced pair with positive leading denominator.
class RationalFunction {
public:
    using Factor = std::pair<Polynomial, int>;

    RationalFunction() = default;
    RationalFunction(const BigRational& c);  // NOLINT
    RationalFunction(long c) : RationalFunction(BigRational(c)) {}  // NOLINT
    RationalFunction(const Polynomial& p);  // NOLINT
    RationalFunction(const Polynomial& num, const Polynomial& den);
    static RationalFunction variable(const std::string& name);
    static RationalFunction variable(const Variable& v) { return variable(v.name); }
    static RationalFunction ratio(const std::string& num_var, const std::string& den_var);

    Polynomial num() const;
    Polynomial den() const;
    const BigRational& coefficient() const { return coeff_; }
    const std::vector<Factor>& factors() const { return factors_; }

    bool is_zero() const { return coeff_ == 0; }
    bool is_constant() const { return factors_.empty(); }
    bool is_polynomial() const;
    std::set<std::string> variables() const;
    bool contains(const std::string& var) const;

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction pow(int e) const;
    RationalFunction inverse() const;
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    // Partial derivative.
    RationalFunction derivative(const std::string& var) const;

    std::string render() const;

private:
    BigRational coeff_{0};
    std::vector<Factor> factors_;

    void absorb(const Polynomial& p, int exp);
    void insert_factor(const Polynomial& prim, int exp);
    void cancel_pairs();
};

enum class RfOp { Add, Sub, Mul, Div };
RationalFunction rf_arith(const RationalFunction& lhs, const RationalFunction& rhs, RfOp op);

// Exact equality by cross-multiplication (shared factors are peeled first).
bool rf_equal(const RationalFunction& lhs, const RationalFunction& rhs);

RationalFunction substitute(const RationalFunction& expr, const Bindings& bindings);
RationalFunction substitute(const Polynomial& p, const Bindings& bindings);
BigRational evaluate(const RationalFunction& expr, const Point& point);

// Power series in one distinguished variable, truncated after x^order.
class TruncatedSeries {
public:
    TruncatedSeries(std::string var, unsigned order);
    TruncatedSeries(std::string var, unsigned order, std::vector<RationalFunction> coeffs);
    // Coefficients of a polynomial in var (other variables become part of
    // the coefficients). Terms above order are dropped.
    static TruncatedSeries from_polynomial(const Polynomial& p, const std::string& var, unsigned order);
    static TruncatedSeries from_rf(const RationalFunction& f, const std::string& var, unsigned order);
    static TruncatedSeries constant(const RationalFunction& c, const std::string& var, unsigned order);

    const std::string& var() const { return var_; }
    unsigned order() const { return order_; }
    const std::vector<RationalFunction>& coeffs() const { return coeffs_; }
    const RationalFunction& operator[](unsigned k) const { return coeffs_.at(k); }

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries operator-() const;
    TruncatedSeries scaled(const RationalFunction& c) const;
    TruncatedSeries derivative() const;
    TruncatedSeries truncated(unsigned order) const;
    // Multiplicative inverse; requires a nonzero constant term.
    TruncatedSeries inverse() const;

    bool is_zero() const;
    std::string render() const;

private:
    std::string var_;
    unsigned order_;
    std::vector<RationalFunction> coeffs_;
};

enum class SeriesOp { Add, Mul };
TruncatedSeries series_arith(const TruncatedSeries& lhs, const TruncatedSeries& rhs, SeriesOp op);
TruncatedSeries series_derivative(const TruncatedSeries& s);
// Coefficientwise rf_equal through the smaller of the two orders.
bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace tetra
