#pragma once

#include <stdexcept>
#include <string>

namespace germforge {

// Exit-code map shared with the command line front end.
enum class ErrorCode {
    Parse = 2,
    Validation = 3,
    Inconclusive = 4,
    Internal = 5,
};

struct Error : std::runtime_error {
    ErrorCode code;
    Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

/// Violated precondition on exact data (mismatched truncation bounds,
/// malformed inputs). Programmer-facing, maps to internal failure.
struct ContractError : Error {
    explicit ContractError(const std::string& msg) : Error(ErrorCode::Internal, msg) {}
};

/// A computation that would need higher jets than the input carries.
struct InconclusiveError : Error {
    int jet;
    InconclusiveError(int jetOrder, const std::string& msg)
        : Error(ErrorCode::Inconclusive, msg), jet(jetOrder) {}
};

/// Two independent routes to the same invariant disagreed. A test that
/// sees this must fail; the CLI maps it to exit code 5.
struct InternalConsistencyError : Error {
    explicit InternalConsistencyError(const std::string& msg)
        : Error(ErrorCode::Internal, msg) {}
};

} // namespace germforge
