#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <swf/fuchsian.hpp>

namespace swf
{

// Slices of u_tt - signature Lap u - f(t, x; u_t, grad u) as a series in sigma.
// slices[j] is the coefficient of sigma^(lowest + j).
template <class S>
struct ResidualSlices {
    int lowest = -2;
    int through_order = 0;
    bool log_free = true;
    std::vector<XSeries<S>> slices;

    const XSeries<S> &at(int power) const
    {
        return slices.at(static_cast<std::size_t>(power - lowest));
    }
    // Every stored coefficient of every slice in [lowest, through_order] is zero.
    bool vanishes(double tol = 0.0) const;
    // Smallest reliable degree among the slices (D for exact slices).
    int reliable_degree() const;
};

// Substitutes the assembled u into the original equation with a pole-tracking
// sigma window, independently of the reduction's bookkeeping. through_order
// defaults to K - 2 (log regimes) or K - m (fractional).
template <class S>
ResidualSlices<S> symbolic_residual(const SingularSolution<S> &sol, const Nonlinearity<S> &f,
                                    std::optional<int> through_order = std::nullopt);

// Zero for exact arithmetic; otherwise scaled by the coefficient size and D.
template <class S>
double residual_tolerance(const SingularSolution<S> &sol);

struct GridSpec {
    std::vector<double> T_values;
    // Absolute spatial points (x' in the elliptic regime).
    std::vector<std::vector<double>> x_points;
    double trust_region = 0.5;

    // T = 10^-3, 10^-2.5, ..., 10^-0.5 and five points within radius 0.2 of the base point.
    static GridSpec standard(std::span<const double> base_point);
};

struct Sample {
    double T = 0;
    std::vector<double> x;
    double residual = 0;
    double u = 0;
    double du_dt = 0;
    double noise_floor = 0;
};

struct Fit {
    double slope = 0;
    double intercept = 0;
    double stderr_slope = 0;
    int points = 0;
    bool valid = false;
};

// Ordinary least squares of log|y| against log T.
Fit fit_loglog(const std::vector<std::pair<double, double>> &points);

struct ResidualReport {
    std::vector<std::pair<int, double>> symbolic_orders;
    std::vector<Sample> samples;
    Fit residual_fit;       // |residual| ~ C T^slope, base-point samples above the noise floor
    Fit blowup_fit;         // |du_dt| ~ C T^-exponent, all samples
    double fitted_slope = 0;
    double fitted_blowup_exponent = 0;
    double max_residual = 0;
    bool all_at_noise_floor = false;
};

template <class S>
ResidualReport numeric_residual(const SingularSolution<S> &sol, const Nonlinearity<S> &f, const GridSpec &grid);

} // namespace swf
