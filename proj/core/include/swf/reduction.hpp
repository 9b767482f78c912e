#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <swf/geometry.hpp>
#include <swf/nonlinearity.hpp>
#include <swf/series.hpp>

namespace swf
{

enum class Regime { log, fractional, elliptic, negative_side };

std::string_view to_string(Regime r) noexcept;
Regime parse_regime(std::string_view text);

inline constexpr int default_order = 8;

// The principal part in (T, X) coordinates, T = t - psi(x):
//   coeff_TT d_T^2 + sum_i coeff_iT[i] d_i d_T + coeff_T d_T + laplacian_sign Lap_X.
template <class S>
struct TransformedOperator {
    XSeries<S> coeff_TT;
    std::vector<XSeries<S>> coeff_iT;
    XSeries<S> coeff_T;
    int laplacian_sign = -1;
};

// Wave operator d_t^2 - Lap for signature +1; d_t^2 + Lap for signature -1.
template <class S>
TransformedOperator<S> transform_operator(const Hypersurface<S> &h);

// Read access to v_0 ... v_{k-1}; anything at or beyond k is a triangularity violation.
template <class S>
class CoefficientView
{
public:
    CoefficientView(std::span<const XSeries<S>> coeffs, int limit) : m_coeffs(coeffs), m_limit(limit)
    {
        if (limit < 0 || static_cast<std::size_t>(limit) > coeffs.size()) {
            fail(ErrorKind::configuration, "coefficient view limit out of range");
        }
    }

    int size() const noexcept
    {
        return m_limit;
    }
    const XSeries<S> &operator[](int j) const
    {
        if (j < 0 || j >= m_limit) {
            fail(ErrorKind::triangularity, "slice evaluator read coefficient " + std::to_string(j)
                                               + " while computing order " + std::to_string(m_limit));
        }
        return m_coeffs[static_cast<std::size_t>(j)];
    }

private:
    std::span<const XSeries<S>> m_coeffs;
    int m_limit;
};

// The reduced Fuchsian equation d(theta) v = N[v] in slice-evaluator form.
//
// Log regimes: T v_TT + 2 v_T = N / Psi, so k(k+1) v_k = rhs_slice(k) for k >= 1.
// Fractional:  (theta + m)(theta + m + 1) v = N(s, X), theta = s d_s, k >= 0.
template <class S>
class ReducedEquation
{
public:
    struct Impl;

    explicit ReducedEquation(std::shared_ptr<const Impl> impl) : m_impl(std::move(impl)) {}

    Regime regime() const;
    int m() const;
    const S &a() const;
    // +1 when the solution lives on t > psi, -1 for t < psi.
    int time_sign() const;
    int signature() const;
    // Denominator of the expansion variable: 1 (sigma = T) or m (sigma = T^(1/m)).
    int denominator() const;
    int first_order() const;
    int max_order() const;
    // Surface and nonlinearity of the problem actually reduced (time-reversed for the negative side).
    const Hypersurface<S> &surface() const;
    const Nonlinearity<S> &nonlinearity() const;
    const TransformedOperator<S> &op() const;
    // The surface in the original variables.
    const XSeries<S> &original_psi() const;
    const Nonlinearity<S> &original_nonlinearity() const;

    S divisor(int k) const;
    // Right side at order k, reading only v_0 ... v_{k-1}.
    XSeries<S> rhs_slice(int k, const CoefficientView<S> &v) const;
    // The v-independent part of the right side, through `order`.
    SigmaSeries<S> inhomogeneous_data(int order) const;
    // Leading pole coefficient of the substituted equation; the zero series when the
    // surface conditions hold.
    XSeries<S> cancellation_certificate() const;

    // Equation for w = v - v0: slices see v0 + w.
    ReducedEquation with_trace(const XSeries<S> &v0) const;
    const std::optional<XSeries<S>> &trace_offset() const noexcept
    {
        return m_offset;
    }

private:
    std::shared_ptr<const Impl> m_impl;
    std::optional<XSeries<S>> m_offset;
};

template <class S>
ReducedEquation<S> build_log_reduction(const Nonlinearity<S> &f, const Hypersurface<S> &h, const S &a,
                                       int order = default_order);

template <class S>
ReducedEquation<S> build_fractional_reduction(const Nonlinearity<S> &f, const Hypersurface<S> &h, const S &a, int m,
                                              int order = default_order);

template <class S>
ReducedEquation<S> build_negative_side(const Nonlinearity<S> &f, const Hypersurface<S> &h, const S &a,
                                       int order = default_order);

// Lap u = a^{-1} |grad u|^2 near x_1 = phi(x_2, ..., x_n). phi lives on the
// (n-1)-variable frame; x_1 plays the role of t.
template <class S>
ReducedEquation<S> build_elliptic_reduction(const XSeries<S> &phi, const S &a, int order = default_order);

// The nonlinearity a^{-1}(tau^2 + |xi|^2) used by the elliptic builder.
template <class S>
Nonlinearity<S> elliptic_nonlinearity(const FramePtr<S> &frame, const S &a);

// "residual = c at x^e" for the largest coefficient of a failed condition.
template <class S>
std::string describe_residual(const XSeries<S> &r);

} // namespace swf
