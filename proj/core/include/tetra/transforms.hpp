#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tetra/evolve.hpp"
#include "tetra/exactalg.hpp"
#include "tetra/formulas.hpp"
#include "tetra/report.hpp"

namespace tetra {

// One side of a defining identity: letters (phi embedding) or pair slots.
struct Slot {
    int p = 0, q = 0;  // rows/columns acted on, 1-based, p < q
};

// A braid-local rational map or correspondence. Outputs are written in the
// declared input and free names.
struct Transform {
    std::string name;
    std::string description;
    std::size_t width = 1;
    std::size_t block_count = 3;
    std::vector<std::string> inputs;
    std::vector<std::string> frees;
    std::vector<RationalFunction> outputs;
    std::optional<Template> model;
    std::vector<Slot> lhs, rhs;
    std::size_t matrix_size = 3;

    std::size_t arity() const { return width * block_count; }
    std::size_t free_count() const { return frees.size(); }
    bool pair_labelled() const;
};

Transform transform_from_file(const TransformFile& tf);
Transform load_transform(const std::string& source);
Transform load_transform_file(const std::string& path);  // throws IoError

// Generated from core/transforms/*.tf: (file stem, file text).
const std::vector<std::pair<std::string, std::string>>& builtin_transform_sources();
std::vector<std::string> builtin_names();
// Throws UnknownTransform.
const Transform& builtin(const std::string& name);

// Fresh variables t1, t2, ...; never reuses a name.
class FreeSupply {
public:
    explicit FreeSupply(std::string prefix = "t") : prefix_(std::move(prefix)) {}
    std::string fresh() { return prefix_ + std::to_string(next_++); }
    std::size_t issued() const { return next_ - 1; }

private:
    std::string prefix_;
    std::size_t next_ = 1;
};

struct FreeRecord {
    std::string var;         // fresh variable actually used
    std::string paper_name;  // e.g. a3pp
    std::string origin;      // transform free it instantiates
};

using Block = std::vector<RationalFunction>;

struct Applied {
    std::vector<Block> blocks;
    std::vector<FreeRecord> frees;
};

// paper_names, when given, label the introduced frees in order.
Applied apply(const Transform& t, const std::vector<Block>& blocks, FreeSupply& fresh,
              const std::vector<std::string>& paper_names = {});

// Both sides of the matrix identity with outputs substituted for the primed
// block. Throws IdentityFails with the offending entry.
CheckReport verify_defining_identity(const Transform& t);
// The two matrix products of the identity (inputs on the left, outputs on
// the right), before comparison.
std::pair<MatrixRF, MatrixRF> identity_sides(const Transform& t);

// Composite checks: very_small pair, smaller2 pair, triple13 twice.
// compose_special throws IdentityFails; the report form never throws.
CheckReport compose_special(const Transform& first, const Transform& second);
CheckReport compose_special_report(const Transform& first, const Transform& second);

// `second` after `first` in the input names of `first`. Frees keep their
// declared names in `first` and get an extra "p" in `second`.
std::vector<RationalFunction> compose_outputs(const Transform& first, const Transform& second);

// Solve lhs = rhs for var when var sits on one side only, as a single
// factor with exponent +-1.
std::optional<RationalFunction> isolate(const RationalFunction& lhs, const RationalFunction& rhs,
                                        const std::string& var);

// Rank of d(funcs)/d(vars) at a seeded random rational point (exact),
// which is the generic rank with high probability.
std::size_t jacobian_rank(const std::vector<RationalFunction>& funcs, const std::vector<std::string>& vars,
                          unsigned long long seed = 1);

// Generic rank of the Jacobian of (inputs, frees) -> (inputs, outputs),
// i.e. the dimension of the graph, from an exact evaluation at a seeded
// random point.
std::size_t graph_dimension(const Transform& t, unsigned long long seed = 1);

// Entrywise equations of the identity with unknown primed blocks named
// <input>' (e.g. a2'). Entries that vanish on both sides are skipped.
std::vector<std::pair<RationalFunction, RationalFunction>> defining_equations(const Transform& t);

// Specializations of flacon_full against the printed formulas.
CheckReport flacon_specializations();

// b -> 1 in smaller2_quasiinverse (with the free forced by b3' = 1)
// against very_small_inverse.
CheckReport quasiinverse_b1_specialization();

}  // namespace tetra
