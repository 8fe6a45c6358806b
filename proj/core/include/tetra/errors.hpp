#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tetra {

// Base of every error the library throws. kind() is a stable identifier
// used by the CLI and by tests.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define TETRA_ERROR(Name)                                                   \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    };

// exactalg
TETRA_ERROR(DivisionByZeroFunction)
TETRA_ERROR(DenominatorVanishes)
TETRA_ERROR(PoleAtPoint)
TETRA_ERROR(UnboundVariable)
TETRA_ERROR(MixedSeriesVariable)

// formulas
TETRA_ERROR(ArityMismatch)
TETRA_ERROR(UnknownSymbol)

// words
TETRA_ERROR(LetterOutOfRange)
TETRA_ERROR(MoveNotApplicable)
TETRA_ERROR(NotReduced)

// transforms / verify
TETRA_ERROR(UnknownTransform)
TETRA_ERROR(IdentityFails)
TETRA_ERROR(ComparisonFailed)
TETRA_ERROR(SolveStuck)
TETRA_ERROR(CertificationFailed)

// evolve
TETRA_ERROR(IndexOutOfRange)
TETRA_ERROR(QuaternityFails)
TETRA_ERROR(TheoremViolated)
TETRA_ERROR(NoPermutation)
TETRA_ERROR(NonUniquePermutation)

// wronskian
TETRA_ERROR(InsufficientTruncationOrder)
TETRA_ERROR(NotInGeneralPosition)
TETRA_ERROR(ODEInconsistent)

TETRA_ERROR(IoError)

#undef TETRA_ERROR

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
        : Error("SyntaxError", format(offset, expected, detail)),
          offset_(offset), expected_(std::move(expected)) {}
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                              const std::string& detail) {
        std::string s = "at byte " + std::to_string(offset);
        if (!detail.empty()) s += ": " + detail;
        if (!expected.empty()) {
            s += "; expected one of {";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) s += ", ";
                s += expected[i];
            }
            s += "}";
        }
        return s;
    }
    std::size_t offset_;
    std::vector<std::string> expected_;
};

}  // namespace tetra
