#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include <swf/errors.hpp>
#include <swf/scalar.hpp>

namespace swf
{

// Powers of (x - base_point), one entry per spatial variable.
using Exponent = std::vector<int>;

inline int total_degree(std::span<const int> e)
{
    int d = 0;
    for (int p : e) {
        d += p;
    }
    return d;
}

// Graded monomial basis in n variables up to total degree D. Monomials are
// ordered by degree, and lexicographically descending inside a degree, so
// that "all monomials of degree <= d" is always a prefix.
class MonomialBasis
{
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Shared, immutable instance for (n, D).
    static std::shared_ptr<const MonomialBasis> get(int variables, int max_degree);

    MonomialBasis(int variables, int max_degree);

    int variables() const noexcept
    {
        return m_n;
    }
    int max_degree() const noexcept
    {
        return m_max_degree;
    }
    std::size_t size() const noexcept
    {
        return m_degree.size();
    }
    // Number of monomials with total degree <= d (0 for d < 0).
    std::size_t count_up_to(int d) const noexcept
    {
        if (d < 0) {
            return 0;
        }
        return m_prefix[static_cast<std::size_t>(std::min(d, m_max_degree))];
    }
    std::span<const int> exponent(std::size_t i) const noexcept
    {
        return {m_powers.data() + i * static_cast<std::size_t>(m_n), static_cast<std::size_t>(m_n)};
    }
    int degree(std::size_t i) const noexcept
    {
        return m_degree[i];
    }
    // Position of an exponent, npos when its degree exceeds D.
    std::size_t index(std::span<const int> e) const;
    // Index of e_i + e_j; the caller guarantees the degree fits.
    std::size_t product_index(std::size_t i, std::size_t j) const;
    // Index of e_i - unit(k), npos when the power of x_k is zero.
    std::size_t lower_index(std::size_t i, int k) const noexcept
    {
        return m_lower[i * static_cast<std::size_t>(m_n) + static_cast<std::size_t>(k)];
    }

private:
    std::uint64_t binomial(int n, int k) const noexcept;

    int m_n;
    int m_max_degree;
    std::vector<int> m_powers;
    std::vector<int> m_degree;
    std::vector<std::size_t> m_prefix;
    std::vector<std::size_t> m_lower;
    std::vector<std::uint64_t> m_binomials;
    int m_binomial_rows;
    std::vector<std::uint32_t> m_product; // dense product table for small bases
};

// Shared metadata for a family of compatible series.
template <class S>
struct Frame {
    int variables;
    int max_degree;
    std::vector<S> base_point;
    std::shared_ptr<const MonomialBasis> basis;
};

template <class S>
using FramePtr = std::shared_ptr<const Frame<S>>;

template <class S>
FramePtr<S> make_frame(int variables, int max_degree, std::vector<S> base_point)
{
    if (variables < 0 || max_degree < 0) {
        fail(ErrorKind::configuration, "series frame needs n >= 0 and D >= 0");
    }
    if (base_point.size() != static_cast<std::size_t>(variables)) {
        fail(ErrorKind::configuration, "base point length does not match the number of variables");
    }
    return std::make_shared<const Frame<S>>(
        Frame<S>{variables, max_degree, std::move(base_point), MonomialBasis::get(variables, max_degree)});
}

template <class S>
bool compatible(const FramePtr<S> &a, const FramePtr<S> &b)
{
    return a == b
           || (a->variables == b->variables && a->max_degree == b->max_degree && a->base_point == b->base_point);
}

// Truncated power series in the spatial variables around a base point.
//
// Coefficients are stored densely in basis order up to the highest degree that
// is known exactly. Two pieces of bookkeeping travel with every value:
//   - exact():    the stored polynomial is the whole function (no truncation
//                 has ever discarded a nonzero term);
//   - reliable(): for inexact series, the total degree through which the stored
//                 coefficients are correct. Nothing above it is stored.
// Arithmetic truncates silently at D and propagates reliability, e.g. a partial
// derivative of an inexact series is reliable one degree less.
template <class S>
class XSeries
{
public:
    static constexpr int unbounded = INT_MAX / 4;

    explicit XSeries(FramePtr<S> frame) : m_frame(std::move(frame)), m_reliable(m_frame->max_degree), m_exact(true) {}

    static XSeries constant(FramePtr<S> frame, S c);
    // The coordinate (x_i - base_i), i zero-based.
    static XSeries variable(FramePtr<S> frame, int i);
    // Exact polynomial from (exponent, coefficient) terms; terms above D make it inexact.
    static XSeries from_terms(FramePtr<S> frame, const std::vector<std::pair<Exponent, S>> &terms);
    // Dense coefficients in basis order, known through degree `reliable`.
    static XSeries from_dense(FramePtr<S> frame, std::vector<S> coeffs, int reliable, bool exact);

    const FramePtr<S> &frame() const noexcept
    {
        return m_frame;
    }
    int variables() const noexcept
    {
        return m_frame->variables;
    }
    int max_degree() const noexcept
    {
        return m_frame->max_degree;
    }
    const MonomialBasis &basis() const noexcept
    {
        return *m_frame->basis;
    }
    bool exact() const noexcept
    {
        return m_exact;
    }
    // Degree through which coefficients are known (D for exact series, -1 if none).
    int reliable() const noexcept
    {
        return m_exact ? m_frame->max_degree : m_reliable;
    }
    std::span<const S> dense() const noexcept
    {
        return m_c;
    }

    S coeff(std::span<const int> e) const;
    S constant_term() const;
    // Lowest degree that may carry a nonzero coefficient: the first stored
    // nonzero, capped by reliable() + 1 for inexact series, unbounded for exact zero.
    int valuation() const;
    // Highest degree with a nonzero coefficient (-1 for the zero series).
    int degree() const;
    bool is_zero(double tol = 0.0) const;
    double max_abs() const;

    XSeries operator-() const;
    XSeries &operator+=(const XSeries &other);
    XSeries &operator-=(const XSeries &other);
    XSeries &operator*=(const S &c);

    friend XSeries operator+(XSeries a, const XSeries &b)
    {
        return a += b;
    }
    friend XSeries operator-(XSeries a, const XSeries &b)
    {
        return a -= b;
    }
    friend XSeries operator*(XSeries a, const S &c)
    {
        return a *= c;
    }
    friend XSeries operator*(const S &c, XSeries a)
    {
        return a *= c;
    }
    friend XSeries operator*(const XSeries &a, const XSeries &b)
    {
        return multiply(a, b);
    }

    static XSeries multiply(const XSeries &a, const XSeries &b);

    // 1/a, requires a nonzero constant term.
    XSeries reciprocal() const;
    // d/dx_i, i zero-based.
    XSeries partial(int i) const;
    // Drop everything above total degree d.
    XSeries truncated(int d) const;
    // Forget exactness; coefficients above `reliable` are discarded.
    XSeries as_jet(int reliable) const;

    // Value of the truncated polynomial at `point` (absolute coordinates).
    template <class R>
    R evaluate(std::span<const R> point) const;

    void require_compatible(const XSeries &other) const;

private:
    std::size_t stored_limit() const noexcept
    {
        return basis().count_up_to(reliable());
    }
    void trim();

    FramePtr<S> m_frame;
    std::vector<S> m_c;
    int m_reliable;
    bool m_exact;
};

// Rebuild a series in n-1 variables as a series in n variables that does not
// depend on variable `position`.
template <class S>
XSeries<S> insert_variable(const XSeries<S> &a, int position, FramePtr<S> target);

// Coefficient of (x_var - base_var)^power, as a series in the remaining variables.
template <class S>
XSeries<S> variable_slice(const XSeries<S> &a, int var, int power, FramePtr<S> target);

// Truncated series in the transverse variable sigma with XSeries coefficients.
//
// denominator() == 1 means sigma = T; denominator() == m means sigma = s = T^(1/m).
// Coefficients with index <= reliable_order() are exact as series in sigma.
template <class S>
class SigmaSeries
{
public:
    SigmaSeries(FramePtr<S> frame, int denominator, int order);
    SigmaSeries(FramePtr<S> frame, int denominator, int order, std::vector<XSeries<S>> coeffs);
    SigmaSeries(FramePtr<S> frame, int denominator, int order, std::vector<XSeries<S>> coeffs, int reliable_order);

    static SigmaSeries constant(const XSeries<S> &c, int denominator, int order);
    // c * sigma^power.
    static SigmaSeries monomial(const XSeries<S> &c, int power, int denominator, int order);

    const FramePtr<S> &frame() const noexcept
    {
        return m_frame;
    }
    int denominator() const noexcept
    {
        return m_den;
    }
    int order() const noexcept
    {
        return m_order;
    }
    int reliable_order() const noexcept
    {
        return m_reliable;
    }
    int stored() const noexcept
    {
        return static_cast<int>(m_c.size());
    }
    // Coefficient of sigma^k (the zero series when nothing is stored there).
    const XSeries<S> &operator[](int k) const;
    // Lowest index with a nonzero coefficient (unbounded when zero).
    int valuation() const;
    double max_abs() const;

    SigmaSeries operator-() const;
    SigmaSeries &operator+=(const SigmaSeries &other);
    SigmaSeries &operator-=(const SigmaSeries &other);
    SigmaSeries &operator*=(const S &c);
    SigmaSeries &operator*=(const XSeries<S> &c);

    friend SigmaSeries operator+(SigmaSeries a, const SigmaSeries &b)
    {
        return a += b;
    }
    friend SigmaSeries operator-(SigmaSeries a, const SigmaSeries &b)
    {
        return a -= b;
    }
    friend SigmaSeries operator*(SigmaSeries a, const S &c)
    {
        return a *= c;
    }
    friend SigmaSeries operator*(const S &c, SigmaSeries a)
    {
        return a *= c;
    }
    friend SigmaSeries operator*(SigmaSeries a, const XSeries<S> &c)
    {
        return a *= c;
    }
    friend SigmaSeries operator*(const XSeries<S> &c, SigmaSeries a)
    {
        return a *= c;
    }
    friend SigmaSeries operator*(const SigmaSeries &a, const SigmaSeries &b)
    {
        return multiply(a, b);
    }

    // Truncated convolution in sigma.
    static SigmaSeries multiply(const SigmaSeries &a, const SigmaSeries &b);

    // sigma^j * a for j >= 0. For j < 0 the |j| lowest coefficients are
    // discarded; callers use this only where those coefficients vanish identically.
    SigmaSeries shifted(int j) const;
    // Euler operator sigma d/dsigma: multiplies coefficient k by k.
    SigmaSeries euler() const;
    // d/dsigma.
    SigmaSeries derivative() const;
    // Coefficientwise d/dx_i.
    SigmaSeries partial(int i) const;
    SigmaSeries truncated(int order) const;
    // Re-express a T-series in s = T^(1/m): T^j becomes s^(m j).
    SigmaSeries in_fractional_variable(int m, int order) const;
    // Integer power by repeated multiplication.
    SigmaSeries power(int e) const;

    // Value at T = T_value > 0 (sigma = T^(1/m), positive root) and spatial point x.
    template <class R>
    R evaluate(const R &T_value, std::span<const R> x) const;

    void require_compatible(const SigmaSeries &other) const;

private:
    FramePtr<S> m_frame;
    int m_den;
    int m_order;
    int m_reliable;
    std::vector<XSeries<S>> m_c;
    XSeries<S> m_zero;
};

// ---------------------------------------------------------------------------
// Inline template members used with arbitrary evaluation types.

template <class S>
template <class R>
R XSeries<S>::evaluate(std::span<const R> point) const
{
    const int n = variables();
    if (point.size() != static_cast<std::size_t>(n)) {
        fail(ErrorKind::configuration, "evaluation point has the wrong dimension");
    }
    if (m_c.empty()) {
        return R(0);
    }
    const MonomialBasis &b = basis();
    const int top = b.degree(m_c.size() - 1);
    // powers[i * (top + 1) + p] = (x_i - base_i)^p
    std::vector<R> powers(static_cast<std::size_t>(n) * static_cast<std::size_t>(top + 1));
    for (int i = 0; i < n; ++i) {
        const R d = point[static_cast<std::size_t>(i)] - convert<R>(m_frame->base_point[static_cast<std::size_t>(i)]);
        R acc(1);
        for (int p = 0; p <= top; ++p) {
            powers[static_cast<std::size_t>(i * (top + 1) + p)] = acc;
            acc *= d;
        }
    }
    R sum(0);
    for (std::size_t k = 0; k < m_c.size(); ++k) {
        if (m_c[k] == 0) {
            continue;
        }
        R term = convert<R>(m_c[k]);
        const auto e = b.exponent(k);
        for (int i = 0; i < n; ++i) {
            if (e[static_cast<std::size_t>(i)] != 0) {
                term *= powers[static_cast<std::size_t>(i * (top + 1) + e[static_cast<std::size_t>(i)])];
            }
        }
        sum += term;
    }
    return sum;
}

template <class S>
template <class R>
R SigmaSeries<S>::evaluate(const R &T_value, std::span<const R> x) const
{
    using std::pow;
    if (!(T_value > 0)) {
        fail(ErrorKind::domain, "sigma series evaluated at T <= 0");
    }
    const R sigma = m_den == 1 ? T_value : R(pow(T_value, R(1) / R(m_den)));
    R sum(0);
    for (int k = static_cast<int>(m_c.size()) - 1; k >= 0; --k) {
        sum = sum * sigma + m_c[static_cast<std::size_t>(k)].template evaluate<R>(x);
    }
    return sum;
}

extern template class XSeries<double>;
extern template class XSeries<Rational>;
extern template class SigmaSeries<double>;
extern template class SigmaSeries<Rational>;

} // namespace swf
