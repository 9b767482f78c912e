#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include <swf/verify.hpp>

namespace swf
{


std::string_view to_string(Arithmetic a) noexcept;
Arithmetic parse_arithmetic(std::string_view text);

// A numeral kept both exactly and as the correctly rounded double.
struct Number {
    Rational exact{0};
    double value = 0;

    static Number parse(std::string_view text);
    static Number from_double(double x);
    static Number from_rational(const Rational &q);
};

// Polynomial term c (x - base)^x.
struct PolyTerm {
    Exponent x;
    Number c;
};

// (sum_j c_j t^t_j (x - base)^x_j) tau^tau xi^xi
struct FTerm {
    std::vector<std::tuple<int, Exponent, Number>> coeff;
    int tau = 0;
    Exponent xi;
};

struct EikonalDirective {
    std::vector<PolyTerm> init; // on x' = (x_2, ..., x_n)
    std::string branch = "+";
    std::optional<Number> slope;
    std::optional<std::vector<FTerm>> f2;
};

struct GridOptions {
    bool standard = true;
    std::vector<double> T_values;
    std::vector<std::vector<double>> x_points;
    double trust_region = 0.5;
};

// Problem document. In the elliptic mode base_point, psi (= phi) and v0 live
// on x' = (x_2, ..., x_n) and f is not given.
struct ProblemSpec {
    int n = 0;
    Regime mode = Regime::log;
    int m = 1;
    Number a{Rational(1), 1.0};
    std::vector<Number> base_point;
    int D = 8;
    int K = default_order;
    int max_t_degree = default_max_t_degree;
    std::vector<FTerm> f;
    std::variant<std::vector<PolyTerm>, EikonalDirective> psi;
    std::vector<PolyTerm> v0;
    bool has_v0 = false;
    GridOptions verify;
    Arithmetic arithmetic = Arithmetic::floating;

    // Variables of the series frame: n, or n - 1 in the elliptic mode.
    int frame_variables() const noexcept
    {
        return mode == Regime::elliptic ? n - 1 : n;
    }
};

// Schema errors carry the JSON path of the offending field.
ProblemSpec parse_problem(std::string_view json_text);
ProblemSpec load_problem(const std::filesystem::path &path);

// "default" or comma-separated T values.
GridOptions parse_grid_option(std::string_view spec, const GridOptions &base);

template <class S>
FramePtr<S> problem_frame(const ProblemSpec &p);
template <class S>
XSeries<S> to_series(const FramePtr<S> &frame, const std::vector<PolyTerm> &terms);
template <class S>
Nonlinearity<S> to_nonlinearity(const FramePtr<S> &frame, const std::vector<FTerm> &terms, int m, int max_t_degree);
// The equation's nonlinearity: f, or a^{-1}(tau^2 + |xi|^2) in the elliptic mode.
template <class S>
Nonlinearity<S> problem_nonlinearity(const ProblemSpec &p, const FramePtr<S> &frame);
GridSpec problem_grid(const ProblemSpec &p);

template <class S>
S to_scalar(const Number &x);

// A solution together with what is needed to verify it on its own.
template <class S>
struct StoredSolution {
    SingularSolution<S> solution;
    std::vector<FTerm> f;
    int max_t_degree = default_max_t_degree;
    GridOptions grid;
};

template <class S>
std::string write_solution_json(const StoredSolution<S> &s);
template <class S>
StoredSolution<S> read_solution_json(std::string_view text);
// Arithmetic recorded in a solution document.
Arithmetic solution_arithmetic(std::string_view text);

template <class S>
std::string write_series_json(const XSeries<S> &x, std::string_view name);

std::string write_residual_csv(const ResidualReport &r, int variables);
std::string write_fit_json(const ResidualReport &r, bool symbolic_ok, bool numeric_ok, int through_order);

std::string read_text(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, std::string_view text);

} // namespace swf
