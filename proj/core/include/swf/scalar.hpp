#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace swf
{

// Exact coefficients for oracle-grade runs.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

// Working precision for pointwise residual sampling. Residuals of a
// truncated singular expansion are many orders below the size of the
// individual 1/T^2 terms, so double precision is not enough there.
using HighPrecision = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;

enum class Arithmetic { floating, rational };

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
inline constexpr Arithmetic arithmetic_of_v = is_exact_v<S> ? Arithmetic::rational : Arithmetic::floating;

inline double to_double(double x)
{
    return x;
}

inline double to_double(const Rational &x)
{
    return x.convert_to<double>();
}

inline double to_double(const HighPrecision &x)
{
    return x.convert_to<double>();
}

inline double magnitude(double x)
{
    return std::fabs(x);
}

inline double magnitude(const Rational &x)
{
    return std::fabs(to_double(x));
}

// Converts a coefficient into the evaluation type R.
template <class R, class S>
R convert(const S &x)
{
    if constexpr (std::is_same_v<R, S>) {
        return x;
    } else if constexpr (std::is_same_v<S, Rational>) {
        if constexpr (std::is_same_v<R, double>) {
            return x.template convert_to<double>();
        } else {
            return R(numerator(x).str()) / R(denominator(x).str());
        }
    } else if constexpr (std::is_same_v<S, double>) {
        return R(x);
    } else {
        return x.template convert_to<R>();
    }
}

// Zero test used for identities: exact in rational arithmetic, |x| <= tol otherwise.
template <class S>
bool is_negligible(const S &x, double tol)
{
    if constexpr (is_exact_v<S>) {
        return x == 0;
    } else {
        return magnitude(x) <= tol;
    }
}

template <class S>
S ratio(long num, long den = 1)
{
    if constexpr (is_exact_v<S>) {
        return Rational(num, den);
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

// Square root when it exists in S: any non-negative double, perfect squares only for rationals.
std::optional<double> exact_sqrt(double x);
std::optional<Rational> exact_sqrt(const Rational &x);

// Numerals are decimal ("0.25", "-1e-3"), fractions ("3/8") or integers.
// Rational parsing is exact; a decimal numeral denotes its exact decimal value.
template <class S>
S parse_numeral(std::string_view text);

// Shortest round-trip decimal for doubles; "p/q" for rationals.
std::string format_numeral(double x);
std::string format_numeral(const Rational &x);

} // namespace swf
