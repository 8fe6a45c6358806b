#pragma once

#include <map>
#include <string>
#include <vector>

#include "tetra/exactalg.hpp"

namespace tetra {

struct ExprAst {
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow };

    Kind kind = Kind::Const;
    BigRational value;      // Const
    std::string name;       // Var
    unsigned exponent = 0;  // Pow
    std::vector<ExprAst> children;

    static ExprAst constant(const BigRational& v);
    static ExprAst var(std::string n);
    static ExprAst binary(Kind k, ExprAst l, ExprAst r);
    static ExprAst neg(ExprAst x);
    static ExprAst pow(ExprAst base, unsigned e);

    std::size_t depth() const;
    bool operator==(const ExprAst& o) const;
};

// Grammar:
//   expr     := term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := '-' factor | atom ('^' nat)?
//   atom     := rational | ident | '(' expr ')'
//   ident    := letter (letter|digit|'_')*
//   rational := nat ('/' nat)?
// The rational production is greedy: "a/2/3" reads as a / (2/3).
ExprAst parse_expr(const std::string& src);

// Text that parses back to a structurally equal tree.
std::string render_expr(const ExprAst& ast);

RationalFunction ast_to_rf(const ExprAst& ast, const std::map<std::string, Variable>& universe);
// Variables are replaced by their bound values.
RationalFunction ast_to_rf(const ExprAst& ast, const Bindings& values);
// Every identifier becomes a free variable.
RationalFunction parse_rational_function(const std::string& src);

struct TransformFile {
    std::string name;
    int block_width = 1;
    int block_count = 3;
    std::vector<std::string> input_names;
    std::vector<std::string> free_params;
    std::vector<ExprAst> outputs;
    // Optional keys beyond the required header.
    std::string matrix_template;  // "template:" line, empty if absent
    std::string identity;         // "identity:" slot layout, e.g. "1 2 1 = 2 1 2"
    std::string description;      // "description:" line
};

// Line-oriented format:
//   name: lusztig
//   width: 1
//   blocks: 3
//   inputs: a, b, c
//   free:
//   out[1] = b*c/(a+c)
// Output indices are 1-based. '#' starts a comment.
TransformFile parse_transform_file(const std::string& src);

}  // namespace tetra
