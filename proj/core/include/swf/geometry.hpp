#pragma once

#include <optional>
#include <vector>

#include <swf/nonlinearity.hpp>
#include <swf/series.hpp>

namespace swf
{

// Tolerance for identities checked in floating point.
inline constexpr double condition_tolerance = 1e-10;

// Zero test for condition residuals: exact in rational mode.
template <class S>
bool vanishes(const XSeries<S> &r, double tol = condition_tolerance)
{
    return r.is_zero(tol);
}

// The surface t = psi(x). signature is +1 for the wave operator and -1 for
// the Laplacian (where t plays the role of x_1); Psi = 1 - signature |grad psi|^2.
template <class S>
struct Hypersurface {
    XSeries<S> psi;
    std::vector<XSeries<S>> grad;
    XSeries<S> lap;
    XSeries<S> Psi;
    int signature = 1;

    const FramePtr<S> &frame() const noexcept
    {
        return psi.frame();
    }
};

template <class S>
Hypersurface<S> make_hypersurface(const XSeries<S> &psi, int signature = 1);

// Psi - a f2(psi, x; -1, grad psi).
template <class S>
XSeries<S> check_pseudo_eikonal(const Hypersurface<S> &h, const Part<S> &f2, const S &a);

template <class S>
struct HigherResiduals {
    XSeries<S> top; // Psi - ((1-m)^m a^m / m^(m-1)) f_{m+1}(Sigma)
    XSeries<S> sub; // f_m(Sigma)
};

template <class S>
HigherResiduals<S> check_higher_conditions(const Hypersurface<S> &h, const Nonlinearity<S> &f, const S &a, int m);

// True iff every monomial of f2 has an even power of tau.
template <class S>
bool check_time_reversal(const Part<S> &f2);

template <class S>
struct Branch {
    enum class Kind { plus, minus, slope };
    Kind kind = Kind::plus;
    S slope{};

    static Branch sign(bool plus)
    {
        return {plus ? Kind::plus : Kind::minus, S(0)};
    }
    static Branch from_slope(S s)
    {
        return {Kind::slope, std::move(s)};
    }
};

// psi with psi(base_1, x') = init(x') solving 1 - |grad psi|^2 = a f2(psi, x; -1, grad psi),
// developed in x_1. The result lives on f2's frame; init on the frame of x' = (x_2, ..., x_n).
template <class S>
XSeries<S> solve_pseudo_eikonal(const Part<S> &f2, const S &a, const XSeries<S> &init, const Branch<S> &branch,
                                const FramePtr<S> &frame);

} // namespace swf
