#ifndef HULLSEP_ERRORS_HPP
#define HULLSEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hullsep {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& w) : Error(w) {}
};

struct DegenerateSegment : Error {
    explicit DegenerateSegment(const std::string& w) : Error(w) {}
};

struct DegeneratePair : Error {
    explicit DegeneratePair(const std::string& w) : Error(w) {}
};

struct ZeroNormal : Error {
    explicit ZeroNormal(const std::string& w) : Error(w) {}
};

struct ZeroDirection : Error {
    explicit ZeroDirection(const std::string& w) : Error(w) {}
};

struct EmptyBody : Error {
    explicit EmptyBody(const std::string& w) : Error(w) {}
};

struct UnboundedBody : Error {
    explicit UnboundedBody(const std::string& w) : Error(w) {}
};

struct InfeasibleBody : Error {
    explicit InfeasibleBody(const std::string& w) : Error(w) {}
};

struct NumericalBreakdown : Error {
    explicit NumericalBreakdown(const std::string& w) : Error(w) {}
};

struct StartNotInBody : Error {
    explicit StartNotInBody(const std::string& w) : Error(w) {}
};

struct NotAWitness : Error {
    explicit NotAWitness(const std::string& w) : Error(w) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& w) : Error(w) {}
};

struct StaleCache : Error {
    explicit StaleCache(const std::string& w) : Error(w) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& w) : Error(w) {}
};

struct TooManyVertices : Error {
    explicit TooManyVertices(const std::string& w) : Error(w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(w) {}
};

struct VerificationFailed : Error {
    explicit VerificationFailed(const std::string& w) : Error(w) {}
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& w) : Error(w) {}
};

struct UnboundedFeasibleSet : Error {
    explicit UnboundedFeasibleSet(const std::string& w) : Error(w) {}
};

}  // namespace hullsep

#endif
