#pragma once

#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include <swf/series.hpp>

namespace swf
{

// One term c(t, x) tau^j xi^alpha. The coefficient is a polynomial in t with
// XSeries coefficients: coeff[p] multiplies t^p (raw t, not t - psi).
template <class S>
struct NMonomial {
    std::vector<XSeries<S>> coeff;
    int tau_power = 0;
    Exponent xi_powers;

    int degree() const
    {
        return tau_power + total_degree(xi_powers);
    }
};

// Homogeneous part f_l: all monomials have degree l in (tau, xi).
template <class S>
struct Part {
    int degree = 0;
    std::vector<NMonomial<S>> monomials;

    bool empty() const noexcept
    {
        return monomials.empty();
    }
};

// A raw input term: coefficient sum_{(p, e, c)} c t^p (x - base)^e.
template <class S>
struct RawMonomial {
    std::vector<std::tuple<int, Exponent, S>> coeff;
    int tau_power = 0;
    Exponent xi_powers;
};

inline constexpr int default_max_t_degree = 4;

// f = f_0 + ... + f_top with top = m + 1.
template <class S>
class Nonlinearity
{
public:
    Nonlinearity(FramePtr<S> frame, int top_degree);

    const FramePtr<S> &frame() const noexcept
    {
        return m_frame;
    }
    int variables() const noexcept
    {
        return m_frame->variables;
    }
    int top_degree() const noexcept
    {
        return static_cast<int>(m_parts.size()) - 1;
    }
    // Part l; an empty part for l above the top degree.
    const Part<S> &part(int l) const;
    std::span<const Part<S>> parts() const noexcept
    {
        return m_parts;
    }
    // Adds a monomial to the part of its degree, merging equal (j, alpha).
    void add(NMonomial<S> mono);
    // Highest power of t in any coefficient.
    int t_degree() const;

    // f(-s, x; -tau, xi), the time-reversed nonlinearity.
    Nonlinearity time_reversed() const;
    // f with every monomial's coefficient scaled by c.
    Nonlinearity scaled(const S &c) const;

    // Pointwise value at (t, x; tau, xi); x absolute. `scale`, when given,
    // receives the sum of the absolute values of the individual terms.
    template <class R>
    R evaluate(const R &t, std::span<const R> x, const R &tau, std::span<const R> xi, R *scale = nullptr) const;

private:
    FramePtr<S> m_frame;
    std::vector<Part<S>> m_parts;
    Part<S> m_empty;
};

// Routes raw monomials to their homogeneous parts.
template <class S>
Nonlinearity<S> decompose_homogeneous(const FramePtr<S> &frame, const std::vector<RawMonomial<S>> &raw, int m,
                                      int max_t_degree = default_max_t_degree);

// c(t, x) with t replaced by a series.
template <class S>
XSeries<S> coefficient_at(const NMonomial<S> &mono, const XSeries<S> &t);
template <class S>
SigmaSeries<S> coefficient_at(const NMonomial<S> &mono, const SigmaSeries<S> &t);

// f_l(psi(x), x; -1, grad psi(x)).
template <class S>
XSeries<S> eval_part_on_sigma(const Part<S> &part, const XSeries<S> &psi);

// f_l(psi + T, x; -1, grad psi) = on_sigma + T tilde, tilde to order K in T.
template <class S>
struct SplitRemainder {
    XSeries<S> on_sigma;
    SigmaSeries<S> tilde;
};

template <class S>
SplitRemainder<S> split_remainder(const Part<S> &part, const XSeries<S> &psi, int order);

// (tau, xi_1, ..., xi_n) as sigma series.
template <class S>
using Covector = std::vector<SigmaSeries<S>>;

// A part with its coefficients already evaluated along a t-series.
template <class S>
struct BoundPart {
    int degree = 0;
    std::vector<SigmaSeries<S>> coeffs;
    std::vector<std::vector<int>> powers; // (j, alpha_1, ..., alpha_n)
};

template <class S>
BoundPart<S> bind(const Part<S> &part, const SigmaSeries<S> &t);

// f_l(t; y) for a covector jet y = (tau, xi).
template <class S>
SigmaSeries<S> eval_on_jet(const BoundPart<S> &part, const Covector<S> &y);
template <class S>
SigmaSeries<S> eval_on_jet(const Part<S> &part, const SigmaSeries<S> &t, const Covector<S> &y);
template <class S>
SigmaSeries<S> eval_on_jet(const Nonlinearity<S> &f, const SigmaSeries<S> &t, const Covector<S> &y);

// d/de f_l(y + e q) at e = 0.
template <class S>
SigmaSeries<S> eval_directional(const BoundPart<S> &part, const Covector<S> &y, const Covector<S> &q);

// f_l(y + e) - f_l(y), expanded so that every term carries a factor of e.
template <class S>
SigmaSeries<S> eval_increment(const BoundPart<S> &part, const Covector<S> &y, const Covector<S> &e);

// ---------------------------------------------------------------------------

template <class S>
template <class R>
R Nonlinearity<S>::evaluate(const R &t, std::span<const R> x, const R &tau, std::span<const R> xi, R *scale) const
{
    using std::abs;
    R sum(0), size(0);
    for (const auto &part : m_parts) {
        for (const auto &mono : part.monomials) {
            R c(0);
            for (int p = static_cast<int>(mono.coeff.size()) - 1; p >= 0; --p) {
                c = c * t + mono.coeff[static_cast<std::size_t>(p)].template evaluate<R>(x);
            }
            R term = c;
            for (int j = 0; j < mono.tau_power; ++j) {
                term *= tau;
            }
            for (std::size_t i = 0; i < mono.xi_powers.size(); ++i) {
                for (int j = 0; j < mono.xi_powers[i]; ++j) {
                    term *= xi[i];
                }
            }
            sum += term;
            size += abs(term);
        }
    }
    if (scale != nullptr) {
        *scale = size;
    }
    return sum;
}

extern template class Nonlinearity<double>;
extern template class Nonlinearity<Rational>;

} // namespace swf
