#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swf
{

enum class ErrorKind {
    configuration,         // incompatible series metadata, kind mismatch, bad options
    singular_division,     // reciprocal of a series with zero constant term
    domain,                // evaluation on the wrong side of the surface
    input,                 // malformed mathematical input (degree overflow, a = 0, ...)
    characteristic,        // 1 - |grad psi|^2 vanishes at the base point
    condition,             // pseudo-Eikonal / higher-order compatibility failure
    time_reversal,         // f2 not symmetric under tau -> -tau
    branch_selection,      // double root in the pseudo-Eikonal solve
    no_solution,           // no real root in the pseudo-Eikonal solve
    triangularity,         // a slice evaluator asked for a coefficient it may not read
    internal,
    schema,                // problem / solution document does not validate
    numerical              // residual criteria not met
};

std::string_view to_string(ErrorKind kind) noexcept;

// Process exit status used by the command line tool.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), m_kind(kind) {}

    ErrorKind kind() const noexcept
    {
        return m_kind;
    }

private:
    ErrorKind m_kind;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
{
    throw Error(kind, what);
}

} // namespace swf
