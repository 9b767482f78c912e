#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <swf/io.hpp>

namespace swf
{

struct PipelineOptions {
    std::filesystem::path out_dir; // empty: $SWF_OUT_DIR, then the working directory
    std::optional<int> order;
    std::optional<Arithmetic> arithmetic;
    std::optional<std::string> branch;
    std::optional<std::string> grid;
};

// Applies the command-line overrides to a parsed problem.
ProblemSpec apply_overrides(ProblemSpec p, const PipelineOptions &opt);

struct ConditionReport {
    bool passed = true;
    double characteristic = 0; // Psi at the base point
    std::optional<double> pseudo_eikonal;
    std::optional<double> higher_top;
    std::optional<double> higher_sub;
    std::optional<bool> time_reversal;
    std::string failure;
};

template <class S>
ConditionReport check_problem(const ProblemSpec &p);

// The surface: given coefficients, the eikonal solve, or zero.
template <class S>
XSeries<S> resolve_psi(const ProblemSpec &p, const FramePtr<S> &frame);

template <class S>
ReducedEquation<S> build_equation(const ProblemSpec &p, const FramePtr<S> &frame, const XSeries<S> &psi);

template <class S>
StoredSolution<S> solve_problem(const ProblemSpec &p);

template <class S>
Nonlinearity<S> stored_nonlinearity(const StoredSolution<S> &s);

template <class S>
struct Verification {
    ResidualSlices<S> slices;
    ResidualReport report;
    bool symbolic_ok = false;
    bool numeric_ok = false;
    double tolerance = 0;

    bool passed() const noexcept
    {
        return symbolic_ok && numeric_ok;
    }
};

// Symbolic slices vanish and the numeric residual is at the noise floor or
// decays at least like T^(through_order / den - 1/2).
template <class S>
Verification<S> verify_solution(const StoredSolution<S> &s, const std::optional<GridOptions> &grid = std::nullopt);

enum class Command { check, eikonal, solve, verify, all };

Command parse_command(std::string_view name);

// Runs one command on a problem (or, for verify, a solution) file. Prints a
// JSON summary on `out`; on failure writes failure.json and prints the error
// as JSON on `err`. Returns the process exit status.
int run_command(Command cmd, const std::filesystem::path &input, const PipelineOptions &opt, std::ostream &out,
                std::ostream &err);

} // namespace swf
