#include <swf/errors.hpp>
#include <swf/scalar.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

namespace swf
{

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::configuration:
            return "configuration";
        case ErrorKind::singular_division:
            return "singular_division";
        case ErrorKind::domain:
            return "domain";
        case ErrorKind::input:
            return "input";
        case ErrorKind::characteristic:
            return "characteristic_surface";
        case ErrorKind::condition:
            return "condition";
        case ErrorKind::time_reversal:
            return "time_reversal";
        case ErrorKind::branch_selection:
            return "branch_selection";
        case ErrorKind::no_solution:
            return "no_solution";
        case ErrorKind::triangularity:
            return "triangularity";
        case ErrorKind::internal:
            return "internal";
        case ErrorKind::schema:
            return "schema";
        case ErrorKind::numerical:
            return "numerical";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::schema:
        case ErrorKind::input:
        case ErrorKind::configuration:
            return 2;
        case ErrorKind::characteristic:
        case ErrorKind::condition:
        case ErrorKind::time_reversal:
        case ErrorKind::branch_selection:
        case ErrorKind::no_solution:
            return 3;
        default:
            return 4;
    }
}

std::optional<double> exact_sqrt(double x)
{
    if (!(x >= 0)) {
        return std::nullopt;
    }
    return std::sqrt(x);
}

std::optional<Rational> exact_sqrt(const Rational &x)
{
    if (x < 0) {
        return std::nullopt;
    }
    using boost::multiprecision::mpz_int;
    const mpz_int num = numerator(x), den = denominator(x);
    const mpz_int rn = sqrt(num), rd = sqrt(den);
    if (rn * rn != num || rd * rd != den) {
        return std::nullopt;
    }
    return Rational(rn, rd);
}

namespace
{

[[noreturn]] void bad_numeral(std::string_view text)
{
    fail(ErrorKind::schema, "malformed numeral '" + std::string(text) + "'");
}

Rational parse_decimal(std::string_view text)
{
    using boost::multiprecision::mpz_int;
    std::string digits;
    bool negative = false;
    long exponent = 0;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    bool seen_digit = false, seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) {
                --exponent;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c == 'e' || c == 'E') {
            long e = 0;
            const auto *first = text.data() + i + 1;
            const auto *last = text.data() + text.size();
            if (first != last && *first == '+') {
                ++first;
            }
            auto [ptr, ec] = std::from_chars(first, last, e);
            if (ec != std::errc{} || ptr != last) {
                bad_numeral(text);
            }
            exponent += e;
            i = text.size();
            break;
        } else {
            bad_numeral(text);
        }
    }
    if (!seen_digit) {
        bad_numeral(text);
    }
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational value{mpz_int(digits)};
    if (exponent != 0) {
        mpz_int scale = pow(mpz_int(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
        value = exponent < 0 ? value / Rational(scale) : value * Rational(scale);
    }
    return negative ? Rational(-value) : value;
}

} // namespace

template <>
Rational parse_numeral<Rational>(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        bad_numeral(text);
    }
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const Rational num = parse_decimal(text.substr(0, slash));
        const Rational den = parse_decimal(text.substr(slash + 1));
        if (den == 0) {
            bad_numeral(text);
        }
        return num / den;
    }
    return parse_decimal(text);
}

template <>
double parse_numeral<double>(std::string_view text)
{
    if (text.find('/') != std::string_view::npos) {
        return to_double(parse_numeral<Rational>(text));
    }
    const std::string s(text);
    char *end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        bad_numeral(text);
    }
    return value;
}

std::string format_numeral(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::string format_numeral(const Rational &x)
{
    return numerator(x).str() + "/" + denominator(x).str();
}

} // namespace swf
