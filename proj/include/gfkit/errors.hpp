#pragma once

#include <stdexcept>
#include <string>

namespace gfkit {

/** Base class for all library errors. */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A stated operation precondition does not hold; the message names the failed condition. */
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& condition)
        : Error("precondition violated: " + condition) {}
};

/** Series division requires the divisor to have a nonzero constant term. */
struct DivisorNotUnit : Error {
    DivisorNotUnit() : Error("series divisor has zero constant term") {}
};

/** Functional inversion requires s(0) = 0 and a first-order coefficient of exactly 1. */
struct NotReversible : Error {
    NotReversible() : Error("series is not reversible: need s(0) = 0 and [z^1] s = 1") {}
};

/** A linear system admits no usable solution (e.g. every Pade denominator vanishes at 0). */
struct NoSolution : Error {
    NoSolution() : Error("no solution") {}
    explicit NoSolution(const std::string& what) : Error(what) {}
};

/** Lattice reduction received linearly dependent rows. */
struct DependentRows : Error {
    DependentRows() : Error("lattice basis rows are linearly dependent") {}
};

/** The truncated series cannot reach the requested decimal accuracy at this point. */
struct TailTooLarge : Error {
    TailTooLarge() : Error("series tail exceeds the requested decimal accuracy") {}
};

/** Expansion of an expression is undefined (pole at 0, bad valuation, non-series branch...). */
struct ExpansionUndefined : Error {
    ExpansionUndefined() : Error("expression expansion undefined") {}
    explicit ExpansionUndefined(const std::string& what) : Error(what) {}
};

/** Euler product machinery requires the sequence to start with 1. */
struct LeadingTermNotOne : Error {
    LeadingTermNotOne() : Error("sequence must start with a_0 = 1") {}
};

/** Recurrence extension hit a vanishing leading coefficient at index n. */
struct SingularLeadingCoefficient : Error {
    long index;
    explicit SingularLeadingCoefficient(long n)
        : Error("leading coefficient vanishes at index " + std::to_string(n)), index(n) {}
};

/** Recurrence extension of an integer sequence produced a non-integer term at index n. */
struct NonIntegerTerm : Error {
    long index;
    explicit NonIntegerTerm(long n)
        : Error("non-integer term generated at index " + std::to_string(n)), index(n) {}
};

/** Text input could not be parsed; position is a 0-based character offset when known. */
struct ParseError : Error {
    std::size_t position;
    explicit ParseError(const std::string& what, std::size_t pos = 0)
        : Error(what), position(pos) {}
};

/** File could not be read or written. */
struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace gfkit
