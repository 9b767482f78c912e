#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include <swf/reduction.hpp>

namespace swf
{

template <class S>
struct RecursionSpec {
    ReducedEquation<S> equation;
    std::optional<XSeries<S>> v0; // trace on the surface; log regimes only
    int order = default_order;
};

// Equivalent spec for w = v - v0 with zero trace.
template <class S>
RecursionSpec<S> shift_initial_data(const RecursionSpec<S> &spec);

// v_k = rhs_slice(k, v_0 .. v_{k-1}) / divisor(k), k = first_order .. K.
template <class S>
SigmaSeries<S> solve_recursion(const RecursionSpec<S> &spec);

template <class S>
struct SingularSolution {
    Regime regime = Regime::log;
    S a{};
    int m = 1;
    int time_sign = 1;
    int signature = 1;
    XSeries<S> psi;
    SigmaSeries<S> v;
    std::optional<XSeries<S>> v0;

    int denominator() const noexcept
    {
        return regime == Regime::fractional ? m : 1;
    }
    int order() const noexcept
    {
        return v.order();
    }
    const FramePtr<S> &frame() const noexcept
    {
        return psi.frame();
    }
};

// v is the solution of spec (of w = v - v0 when the spec carries a trace offset).
template <class S>
SingularSolution<S> assemble_solution(const RecursionSpec<S> &spec, const SigmaSeries<S> &v);

// Shift, solve and assemble in one step.
template <class S>
SingularSolution<S> solve(const ReducedEquation<S> &equation, const std::optional<XSeries<S>> &v0, int order);

template <class S>
SingularSolution<S> solve(const ReducedEquation<S> &equation, const XSeries<S> &v0, int order)
{
    return solve(equation, std::optional<XSeries<S>>(v0), order);
}

// Zero trace.
template <class S>
SingularSolution<S> solve(const ReducedEquation<S> &equation, int order)
{
    return solve(equation, std::optional<XSeries<S>>(), order);
}

// u and its first and second derivatives at a point.
template <class R>
struct PointJet {
    R T;
    R u, u_t, u_tt;
    std::vector<R> u_x, u_xx;
};

// Pointwise evaluation of u from closed-form derivatives of the singular
// part and series derivatives of v.
template <class S>
class SolutionEvaluator
{
public:
    explicit SolutionEvaluator(const SingularSolution<S> &sol);

    const SingularSolution<S> &solution() const noexcept
    {
        return m_sol;
    }

    // t is the transverse coordinate (x_1 in the elliptic regime); x is absolute.
    template <class R>
    PointJet<R> jet(const R &t, std::span<const R> x) const;

private:
    SingularSolution<S> m_sol;
    std::vector<XSeries<S>> m_psi_i, m_psi_ii;
    std::vector<std::vector<XSeries<S>>> m_v_i, m_v_ii; // [k][i]
};

template <class S>
template <class R>
PointJet<R> SolutionEvaluator<S>::jet(const R &t, std::span<const R> x) const
{
    using std::log;
    using std::pow;
    const int n = m_sol.psi.variables();
    const R sign(m_sol.time_sign);
    const R T = sign * (t - m_sol.psi.template evaluate<R>(x));
    if (!(T > 0)) {
        fail(ErrorKind::domain, "evaluation on the wrong side of the singular surface");
    }
    PointJet<R> J{T, R(0), R(0), R(0), std::vector<R>(static_cast<std::size_t>(n), R(0)),
                  std::vector<R>(static_cast<std::size_t>(n), R(0))};
    std::vector<R> gi(static_cast<std::size_t>(n)), gii(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        gi[static_cast<std::size_t>(i)] = -sign * m_psi_i[static_cast<std::size_t>(i)].template evaluate<R>(x);
        gii[static_cast<std::size_t>(i)] = -sign * m_psi_ii[static_cast<std::size_t>(i)].template evaluate<R>(x);
    }
    const R gt = sign;

    // c(x) T^e with c_i, c_ii given
    auto add_power = [&](const R &c, const std::vector<R> &ci, const std::vector<R> &cii, const R &e) {
        const R Te = pow(T, e), Te1 = Te / T, Te2 = Te1 / T;
        J.u += c * Te;
        J.u_t += c * e * gt * Te1;
        J.u_tt += c * e * (e - 1) * gt * gt * Te2;
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            J.u_x[i] += ci[i] * Te + c * e * gi[i] * Te1;
            J.u_xx[i] += cii[i] * Te + R(2) * ci[i] * e * gi[i] * Te1 + c * e * gii[i] * Te1
                         + c * e * (e - 1) * gi[i] * gi[i] * Te2;
        }
    };

    const R a = convert<R>(m_sol.a);
    const std::vector<R> zeros(static_cast<std::size_t>(n), R(0));
    if (m_sol.regime == Regime::fractional) {
        const int m = m_sol.m;
        add_power(a, zeros, zeros, R(m - 1) / R(m));
    } else {
        J.u += -a * log(T);
        J.u_t += -a * gt / T;
        J.u_tt += a * gt * gt / (T * T);
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            J.u_x[i] += -a * gi[i] / T;
            J.u_xx[i] += -a * gii[i] / T + a * gi[i] * gi[i] / (T * T);
        }
    }

    const int den = m_sol.denominator();
    std::vector<R> ci(static_cast<std::size_t>(n)), cii(static_cast<std::size_t>(n));
    for (int k = 0; k < m_sol.v.stored(); ++k) {
        const auto &vk = m_sol.v[k];
        if (vk.dense().empty()) {
            continue;
        }
        const R c = vk.template evaluate<R>(x);
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            ci[i] = m_v_i[static_cast<std::size_t>(k)][i].template evaluate<R>(x);
            cii[i] = m_v_ii[static_cast<std::size_t>(k)][i].template evaluate<R>(x);
        }
        const R e = den == 1 ? R(k) : R(1) + R(k) / R(den);
        add_power(c, ci, cii, e);
    }
    return J;
}

extern template class SolutionEvaluator<double>;
extern template class SolutionEvaluator<Rational>;

} // namespace swf
