#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include <swf/verify.hpp>

namespace swf::test
{

using Q = Rational;

inline Exponent zeros(int n)
{
    return Exponent(static_cast<std::size_t>(n), 0);
}

inline Exponent unit(int n, int i, int p = 1)
{
    Exponent e = zeros(n);
    e[static_cast<std::size_t>(i)] = p;
    return e;
}

// c t^t_power x^x tau^tau xi^xi
template <class S>
RawMonomial<S> term(S c, int t_power, Exponent x, int tau, Exponent xi)
{
    return {{{t_power, std::move(x), c}}, tau, std::move(xi)};
}

template <class S>
RawMonomial<S> term(int n, S c, int tau, Exponent xi = {})
{
    return term(c, 0, zeros(n), tau, xi.empty() ? zeros(n) : std::move(xi));
}

// inv_a (tau^2 - |xi|^2)
template <class S>
std::vector<RawMonomial<S>> wave_terms(int n, const S &inv_a)
{
    std::vector<RawMonomial<S>> raw{term(n, inv_a, 2)};
    for (int i = 0; i < n; ++i) {
        raw.push_back(term(n, S(-inv_a), 0, unit(n, i, 2)));
    }
    return raw;
}

template <class S>
std::optional<XSeries<S>> no_trace()
{
    return std::nullopt;
}

template <class S>
double max_coefficient(const SigmaSeries<S> &v)
{
    return v.max_abs();
}

template <class S>
bool all_zero(const ResidualSlices<S> &r)
{
    return r.vanishes(0.0);
}

} // namespace swf::test
