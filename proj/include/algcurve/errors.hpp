#ifndef ALGCURVE_ERRORS_HPP
#define ALGCURVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace algcurve {

// Base class for all library errors. Subclasses carry the failure kind in
// the type so callers can catch selectively; what() carries diagnostics.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

struct IndeterminateError : Error {
    explicit IndeterminateError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroFunction : Error {
    explicit DivisionByZeroFunction(const std::string& msg) : Error(msg) {}
};

struct BackendUnsupported : Error {
    explicit BackendUnsupported(const std::string& msg) : Error(msg) {}
};

struct BackendMismatch : Error {
    explicit BackendMismatch(const std::string& msg) : Error(msg) {}
};

struct DegreeTooLow : Error {
    explicit DegreeTooLow(const std::string& msg) : Error(msg) {}
};

struct ZeroFunctionError : Error {
    explicit ZeroFunctionError(const std::string& msg) : Error(msg) {}
};

struct NotInvertible : Error {
    explicit NotInvertible(const std::string& msg) : Error(msg) {}
};

struct RootFindingFailure : Error {
    explicit RootFindingFailure(const std::string& msg) : Error(msg) {}
};

struct NearCritical : Error {
    explicit NearCritical(const std::string& msg) : Error(msg) {}
};

struct PoleAtBase : Error {
    explicit PoleAtBase(const std::string& msg) : Error(msg) {}
};

struct StepCollapse : Error {
    explicit StepCollapse(const std::string& msg) : Error(msg) {}
};

struct SheetCollision : Error {
    explicit SheetCollision(const std::string& msg) : Error(msg) {}
};

struct LoopContainsOtherBranchPoints : Error {
    explicit LoopContainsOtherBranchPoints(const std::string& msg) : Error(msg) {}
};

struct ExpansionDiverged : Error {
    explicit ExpansionDiverged(const std::string& msg) : Error(msg) {}
};

struct Inconclusive : Error {
    explicit Inconclusive(const std::string& msg) : Error(msg) {}
};

struct PathCrossesBranchSet : Error {
    explicit PathCrossesBranchSet(const std::string& msg) : Error(msg) {}
};

struct TargetDegenerate : Error {
    explicit TargetDegenerate(const std::string& msg) : Error(msg) {}
};

struct QuadratureBudgetExceeded : Error {
    explicit QuadratureBudgetExceeded(const std::string& msg) : Error(msg) {}
};

struct BoundaryHitsDivisor : Error {
    explicit BoundaryHitsDivisor(const std::string& msg) : Error(msg) {}
};

struct DivisorPointAtOrigin : Error {
    explicit DivisorPointAtOrigin(const std::string& msg) : Error(msg) {}
};

struct DegenerateTargets : Error {
    explicit DegenerateTargets(const std::string& msg) : Error(msg) {}
};

struct NotTranscendentalEnough : Error {
    explicit NotTranscendentalEnough(const std::string& msg) : Error(msg) {}
};

struct SolverFailure : Error {
    explicit SolverFailure(const std::string& msg) : Error(msg) {}
};

struct NonParabolicityViolated : Error {
    explicit NonParabolicityViolated(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace algcurve

#endif
