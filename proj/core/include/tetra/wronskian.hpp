#pragma once

#include <string>
#include <vector>

#include "tetra/evolve.hpp"
#include "tetra/exactalg.hpp"
#include "tetra/words.hpp"

namespace tetra {

// Normalized collection u_i = c_i x^(i-1)/(i-1)! + higher terms. The u_i
// are polynomials in `var` with rational-function coefficients.
struct PolyTuple {
    std::string var = "x";
    std::vector<RationalFunction> polys;
    std::vector<RationalFunction> params;  // c_1 .. c_{r+1}
    std::size_t size() const { return polys.size(); }
};

// f_i with f_i(0) = a_i.
struct WrTuple {
    std::vector<TruncatedSeries> f;
    std::vector<RationalFunction> a;
};

// Wronskian determinant, exact for polynomials in var.
RationalFunction wronskian_det(const std::vector<RationalFunction>& us, const std::string& var = "x");
// Series version; the result is valid through order min(order) - (i - 1).
// Throws InsufficientTruncationOrder when that is negative.
TruncatedSeries wronskian_det(const std::vector<TruncatedSeries>& us);

// Coefficient of var^k of a polynomial in var.
RationalFunction coefficient(const RationalFunction& f, const std::string& var, unsigned k);

// (1, x, x^2/2, ..., x^r/r!) scaled by c (all ones when c is empty).
PolyTuple standard_collection(std::size_t r_plus_1, const std::vector<RationalFunction>& c = {},
                              const std::string& var = "x");

// Triangular column operations giving the unique normalized collection with
// the same prefix spans. Throws NotInGeneralPosition.
PolyTuple normalize_collection(const std::vector<RationalFunction>& us, const std::vector<RationalFunction>& c = {},
                               const std::string& var = "x");

// u_i <- u_i/a + u_{i+1}, u_{i+1} <- a u_{i+1}. 1 <= i <= r. Throws
// IndexOutOfRange.
PolyTuple a_on_collection(const PolyTuple& u, std::size_t i, const RationalFunction& a);

// f_i = Wr(u_1..u_i) as series through `order` (default 2(r+1)). Checks
// f_i(0) = c_1...c_i and throws NotInGeneralPosition otherwise.
WrTuple wr_map(const PolyTuple& u, unsigned order = 0);

// Solution of f_i g' - f_i' g = rhs with g(0) = 0. Throws ODEInconsistent
// when f_i(0) = 0 but rhs(0) != 0.
TruncatedSeries solve_evolution_ode(const TruncatedSeries& fi, const TruncatedSeries& rhs);

// Literal: f_{i+1} <- a f_{i+1}, as printed. Corrected: f_{i+1} kept, which
// is what Wr(A_i(a) u) gives since det A(a) = 1.
enum class WrMode { Literal, Corrected };
WrTuple a_on_wrtuple(const WrTuple& f, std::size_t i, const RationalFunction& a, WrMode mode = WrMode::Corrected);

struct Op {
    std::size_t i;
    RationalFunction a;
};

struct CommutationReport {
    bool equal = false;
    std::string mismatch;  // first differing component, if any
    WrTuple lhs, rhs;      // Wr(A u) and A Wr(u)
};
// Applies ops right to left: {A1(b), A2(a)} means A1(b) A2(a).
CommutationReport check_commutation(const PolyTuple& u, const std::vector<Op>& ops, unsigned order = 0,
                                    WrMode mode = WrMode::Corrected);

struct WronskianCoordinate {
    std::size_t k = 0;
    Permutation sigma;  // iota(sigma) A_{<=k} is c-upper triangular
    std::vector<RationalFunction> v;
    RationalFunction w;  // Wr(v_1..v_k)
    RationalFunction e;  // w(0)
};
// k = 0 .. min(n, length); k = 0 has w = Wr() = 1. u0 defaults to the standard collection.
std::vector<WronskianCoordinate> wronskian_coordinates(const ReducedWord& word,
                                                       const std::vector<std::vector<RationalFunction>>& blocks,
                                                       Template t, const std::vector<RationalFunction>& u0 = {},
                                                       const std::string& var = "x");

}  // namespace tetra
