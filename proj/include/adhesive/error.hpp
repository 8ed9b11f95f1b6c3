#pragma once

#include <stdexcept>
#include <string>

namespace adhesive {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configurable size guard (node count, outcome count, dimension) was exceeded.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// Input data is malformed or mutually inconsistent (overlapping marginals
/// disagree, unknown labels, overlapping node sets, cyclic DAG, ...).
class InconsistentInput : public Error {
public:
    using Error::Error;
};

/// Marginal-scenario and causal constraints may not be combined (third case of
/// the distinguishability classification).
class CaseIiiRejected : public Error {
public:
    using Error::Error;
};

/// Process exit codes used by the command line tool.
enum class ExitCode : int {
    ok = 0,
    failure = 1,
    guard_exceeded = 2,
    case_iii_rejected = 3,
    inconsistent_input = 4,
};

} // namespace adhesive
