// errors.hpp: exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace geophase {

// Bad input: out-of-range parameters, contradictory regimes, malformed config.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
public:
    enum class Kind {
        DegenerateTrace,          // Gamma vanishes on a stretch of the grid
        DegenerateEvolution,      // state maximally mixed on the whole interval
        EigenvalueCrossing,       // eps+ == eps- inside the interval, branches exchange
        BranchTracking,           // overlap tracking lost a branch, refine the grid
        QuadratureNonConvergence, // step halving did not settle
        UndefinedDerivative       // d(arg Gamma)/dt at a zero of Gamma
    };

    NumericalError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

const char* to_string(NumericalError::Kind kind) noexcept;

}  // namespace geophase
