// Exception types shared across the library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace primsync {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad file, bad entries, bad arguments).
struct InputError : Error {
    using Error::Error;
};

struct DimensionMismatchError : InputError {
    DimensionMismatchError(int lhs, int rhs)
        : InputError("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

struct NotCompleteError : Error {
    NotCompleteError() : Error("automaton has undefined transitions") {}
};

struct NoTotalSupportError : Error {
    NoTotalSupportError() : Error("matrix does not have total support") {}
};

struct NoSinkError : Error {
    NoSinkError() : Error("automaton has no sink state") {}
};

struct NotSynchronizingError : Error {
    NotSynchronizingError() : Error("automaton is not synchronizing") {}
};

struct NotPrimitiveError : Error {
    NotPrimitiveError() : Error("matrix set is not primitive") {}
};

struct NotClassCError : Error {
    NotClassCError() : Error("partition fails the alphabet-partition conditions") {}
};

struct NotNzError : Error {
    NotNzError() : Error("matrix set has a zero row or zero column") {}
};

struct PreconditionError : Error {
    using Error::Error;
};

/// A word was applied to a state where a transition is undefined.
struct UndefinedTransitionError : Error {
    int state;
    std::size_t position;
    UndefinedTransitionError(int state_, std::size_t position_)
        : Error("letter at position " + std::to_string(position_) + " undefined on state "
                + std::to_string(state_)),
          state(state_),
          position(position_) {}
};

/// The iterative word construction could not make progress.
struct ProcedureStuckError : Error {
    using Error::Error;
};

/// A configured enumeration limit was hit before the computation resolved.
struct CapExceededError : Error {
    std::int64_t required;  // saturated; how much would have been needed, if known
    explicit CapExceededError(std::string what, std::int64_t required_ = -1)
        : Error(std::move(what)), required(required_) {}
};

struct LetterCapExceededError : CapExceededError {
    explicit LetterCapExceededError(std::int64_t required_)
        : CapExceededError("selection-function enumeration exceeds letter cap (needs "
                               + std::to_string(required_) + ")",
                           required_) {}
};

}  // namespace primsync
