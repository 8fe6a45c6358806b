#pragma once

#include <string>
#include <vector>

#include "tetra/exactalg.hpp"
#include "tetra/report.hpp"
#include "tetra/words.hpp"

namespace tetra {

// Dense matrix over Q(vars); indices are 0-based.
class MatrixRF {
public:
    MatrixRF() = default;
    MatrixRF(std::size_t rows, std::size_t cols);
    static MatrixRF identity(std::size_t n);
    static MatrixRF from_rows(const std::vector<std::vector<RationalFunction>>& rows);
    static MatrixRF column(const std::vector<RationalFunction>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    RationalFunction& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
    const RationalFunction& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

    MatrixRF operator*(const MatrixRF& o) const;
    MatrixRF operator+(const MatrixRF& o) const;
    MatrixRF operator-(const MatrixRF& o) const;
    MatrixRF transpose() const;

    // Entrywise rf_equal.
    bool equals(const MatrixRF& o) const;
    bool is_zero() const;
    std::vector<std::vector<std::string>> render() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RationalFunction> data_;
};

MatrixRF substitute(const MatrixRF& m, const Bindings& b);

// Cofactor determinant, memoised over column subsets (n <= 12).
RationalFunction determinant(const MatrixRF& m);
// Adjugate over determinant; throws DivisionByZeroFunction when singular.
MatrixRF inverse(const MatrixRF& m);

// I(n): ones on the complementary diagonal.
MatrixRF anti_identity(std::size_t n);
// iota(w): column j has its 1 in row w(j).
MatrixRF permutation_matrix(const Permutation& w);

// Block models for one letter; each is a 2x2 matrix of the block parameters.
enum class Template {
    ABC,        // ((a,b),(c,0))
    AB,         // ((a,b),(1/b,0))
    A,          // ((a,1),(1,0))
    BZ,         // ((1/a,1),(0,a))
    Neg,        // ((a,-1),(1,0))
    Unipotent,  // ((1,a),(0,1))
    Diag,       // ((1/a,0),(0,a))
    Flacon,     // ((1/a,x),(0,a)), block (a,x)
};

std::size_t template_width(Template t);
std::string template_name(Template t);
// Accepts abc, ab, a, bz, neg, unipotent, diag, flacon.
Template parse_template(const std::string& name);
MatrixRF template_matrix(Template t, const std::vector<RationalFunction>& block);
// Symbolic blocks a1,b1,c1,a2,... for `count` letters.
std::vector<std::vector<RationalFunction>> symbolic_blocks(Template t, std::size_t count);

// phi_i(A): acts as A on rows/columns i, i+1 (1-based).
MatrixRF phi_embed(const MatrixRF& a, int i, std::size_t n);
// Acts as A on rows/columns p < q (1-based), identity elsewhere.
MatrixRF pair_embed(const MatrixRF& a, int p, int q, std::size_t n);
// M_13 in n = 3.
MatrixRF m13_embed(const MatrixRF& a, std::size_t n = 3);

// Prefix products B_0 = I, B_1, .., B_k. Letters need not form a reduced word.
std::vector<MatrixRF> product_along_word(std::size_t n, const std::vector<int>& letters,
                                         const std::vector<std::vector<RationalFunction>>& blocks, Template t);
std::vector<MatrixRF> product_along_word(const ReducedWord& w, const std::vector<std::vector<RationalFunction>>& blocks,
                                         Template t);

enum class TriangularityClass { cUpperN, cLowerN, cUpperB, cLowerB, UpperN, LowerN, UpperB, LowerB, None };
std::string to_string(TriangularityClass c);
bool in_class(const MatrixRF& m, TriangularityClass c);
// Most specific class in the enum order above.
TriangularityClass classify_triangularity(const MatrixRF& m);

// B- or N-quaternity around the square for symbolic matrices of size n.
// Throws QuaternityFails.
CheckReport quaternity_check(std::size_t n, bool n_variant);
// I(n) A reverses rows, A I(n) reverses columns, I(n)^2 = I_n.
CheckReport reversal_identities(std::size_t n);

// e^a_ij = I + a E_ij (1-based).
MatrixRF elementary(std::size_t n, int i, int j, const RationalFunction& a);
// Inverses and commutators for all admissible index triples. Throws IdentityFails.
CheckReport elementary_identities(std::size_t n);
// Triple and quadruple products with the Neg template and their action on
// the reversed polynomial column. Throws IdentityFails.
CheckReport triple_quadruple_evolution();
// A1(c)A2(b)A1(a) = A2(c')A1(b')A2(a') for the BZ template. Throws IdentityFails.
CheckReport bz_braid_check();

// Product of symbolic ABC blocks along the word; throws TheoremViolated
// unless it is c-upper triangular.
MatrixRF long_product_triangularity(const ReducedWord& w);

enum class Side { Left, Right };
// The unique sigma in S(n) with iota(sigma) M (left) or M iota(sigma)
// (right) in B+^c. Throws NoPermutation, NonUniquePermutation.
Permutation permutation_factorization(const MatrixRF& prefix, Side side);

struct FactorizationRow {
    std::size_t k = 0;
    Permutation found;
    Permutation prefix;  // w_k
    Permutation suffix;  // w'_k
};
// Brute-force factorization of every prefix product of symbolic ABC blocks.
std::vector<FactorizationRow> factorization_table(const ReducedWord& w, Side side);

// det(prod) = prod det over random block products, n <= 4.
CheckReport determinant_multiplicativity(std::size_t n);

}  // namespace tetra
