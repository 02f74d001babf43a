#pragma once

#include <stdexcept>
#include <string>

namespace carver {

enum class ErrorKind {
    InvalidInput,          // malformed file or argument
    Domain,                // argument outside the operation's domain
    Precondition,          // mathematical precondition violated (e.g. not spanning)
    Degeneracy,            // a continuum collapsed to a single cell
    Resolution,            // grid too coarse for the requested construction
    Config,                // shape/config parameters inconsistent
    UnsupportedDimension,
    BudgetDivergence,      // length budget with s >= 1
    InsufficientData,
    Internal,              // an invariant that must hold by construction failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::Internal, "invariant violated: " + what);
}

const char* to_string(ErrorKind kind);

/// Process exit code used by the command-line tool for each error kind.
int exit_code_for(ErrorKind kind);

}  // namespace carver
