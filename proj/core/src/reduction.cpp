#include <swf/reduction.hpp>

#include <sstream>

namespace swf
{

std::string_view to_string(Regime r) noexcept
{
    switch (r) {
        case Regime::log:
            return "log";
        case Regime::fractional:
            return "fractional";
        case Regime::elliptic:
            return "elliptic";
        case Regime::negative_side:
            return "negative_side";
    }
    return "log";
}

Regime parse_regime(std::string_view text)
{
    if (text == "log") {
        return Regime::log;
    }
    if (text == "fractional") {
        return Regime::fractional;
    }
    if (text == "elliptic") {
        return Regime::elliptic;
    }
    if (text == "negative_side") {
        return Regime::negative_side;
    }
    fail(ErrorKind::schema, "unknown mode '" + std::string(text) + "'");
}

template <class S>
TransformedOperator<S> transform_operator(const Hypersurface<S> &h)
{
    const S eps(h.signature);
    TransformedOperator<S> op{h.Psi, {}, h.lap * eps, -h.signature};
    for (const auto &g : h.grad) {
        op.coeff_iT.push_back(g * (S(2) * eps));
    }
    return op;
}

template <class S>
std::string describe_residual(const XSeries<S> &r)
{
    const auto c = r.dense();
    std::size_t best = 0;
    double size = -1;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (magnitude(c[k]) > size) {
            size = magnitude(c[k]);
            best = k;
        }
    }
    if (c.empty()) {
        return "condition residual = 0";
    }
    std::ostringstream os;
    os << "condition residual = " << format_numeral(c[best]);
    const auto e = r.basis().exponent(best);
    if (total_degree(e) == 0) {
        os << " (constant term)";
    } else {
        os << " at x^(";
        for (std::size_t i = 0; i < e.size(); ++i) {
            os << (i ? "," : "") << e[i];
        }
        os << ")";
    }
    return os.str();
}

template <class S>
struct ReducedEquation<S>::Impl {
    Regime regime = Regime::log;
    int m = 1;
    S a{};
    int time_sign = 1;
    int order = default_order;
    Hypersurface<S> h;
    Nonlinearity<S> f;
    Nonlinearity<S> original_f;
    XSeries<S> original_psi;
    TransformedOperator<S> op;
    XSeries<S> psi_inv;
    SigmaSeries<S> t_series;
    std::vector<BoundPart<S>> bound;
    Covector<S> p; // (-1, grad psi) for log, (1, -grad psi) for fractional
    // log: f2(Sigma), its T-remainder, f1(p), f0 along t = psi + T
    XSeries<S> f2_sigma;
    SigmaSeries<S> f2_tilde;
    SigmaSeries<S> f1_p;
    SigmaSeries<S> f0;
    // fractional: (-1)^{m+1} f_{m+1}(Sigma) and its remainder in s
    XSeries<S> F_sigma;
    SigmaSeries<S> F_tilde;

    Impl(const Hypersurface<S> &surface, const Nonlinearity<S> &nl)
        : h(surface), f(nl), original_f(nl), original_psi(surface.psi), op(transform_operator(surface)),
          psi_inv(surface.Psi.reciprocal()), t_series(surface.frame(), 1, 0), f2_sigma(surface.frame()),
          f2_tilde(surface.frame(), 1, 0), f1_p(surface.frame(), 1, 0), f0(surface.frame(), 1, 0),
          F_sigma(surface.frame()), F_tilde(surface.frame(), 1, 0)
    {
    }

    const FramePtr<S> &frame() const
    {
        return h.frame();
    }

    SigmaSeries<S> constant(const XSeries<S> &c, int den, int ord) const
    {
        return SigmaSeries<S>::constant(c, den, ord);
    }

    SigmaSeries<S> laplacian(const SigmaSeries<S> &v) const
    {
        SigmaSeries<S> r(frame(), v.denominator(), v.order());
        for (int i = 0; i < frame()->variables; ++i) {
            r += v.partial(i).partial(i);
        }
        return r;
    }

    // N / Psi through `ord`, with v given by its first coefficients.
    SigmaSeries<S> assemble_log(std::vector<XSeries<S>> coeffs, int ord) const
    {
        const int n = frame()->variables;
        const SigmaSeries<S> V(frame(), 1, ord, std::move(coeffs));
        const auto VT = V.derivative();
        const SigmaSeries<S> zero(frame(), 1, ord);

        Covector<S> tangential{zero}, w{VT};
        for (int i = 0; i < n; ++i) {
            const auto di = V.partial(i);
            tangential.push_back(di);
            w.push_back(di - VT * h.grad[static_cast<std::size_t>(i)]);
        }

        SigmaSeries<S> N = constant(op.coeff_T * a, 1, ord);
        N += f2_tilde * (a * a);
        N -= (f2_tilde * VT).shifted(1) * (S(2) * a);
        N += eval_directional(bound[2], p, tangential) * a;
        N += f1_p * a;
        SigmaSeries<S> body = eval_on_jet(bound[2], w) + eval_on_jet(bound[1], w) + f0;
        SigmaSeries<S> linear = VT * op.coeff_T + laplacian(V) * S(op.laplacian_sign);
        for (int i = 0; i < n; ++i) {
            linear += VT.partial(i) * op.coeff_iT[static_cast<std::size_t>(i)];
        }
        N += (body - linear).shifted(1);
        return N * psi_inv;
    }

    // Right side of the s-equation through `ord` (already divided by Psi).
    SigmaSeries<S> assemble_fractional(std::vector<XSeries<S>> coeffs, int ord) const
    {
        const int n = frame()->variables;
        const SigmaSeries<S> V(frame(), m, ord, std::move(coeffs));
        const S A = a * S(m - 1);
        const S ms(m);
        const auto one = XSeries<S>::constant(frame(), S(1));

        const auto W = V.euler() + V * ms;
        const auto sW = W.shifted(1);
        const auto G = constant(one * A, m, ord) + sW;
        const auto Gm = G * (S(1) / ms);

        Covector<S> gq{Gm}, e{SigmaSeries<S>(frame(), m, ord)}, H{Gm};
        for (int i = 0; i < n; ++i) {
            const auto comp = Gm * (-h.grad[static_cast<std::size_t>(i)]);
            gq.push_back(comp);
            e.push_back(V.partial(i).shifted(m + 1));
            H.push_back(comp + e.back());
        }

        // binomial tail of G^{m+1} beyond the linear term
        SigmaSeries<S> B(frame(), m, ord);
        {
            SigmaSeries<S> pw = sW * sW;
            S binom = S((m + 1) * m / 2);
            for (int j = 2; j <= m + 1; ++j) {
                S apow(1);
                for (int r = 0; r < m + 1 - j; ++r) {
                    apow *= A;
                }
                B += pw * (binom * apow);
                binom = binom * S(m + 1 - j) / S(j + 1);
                if (j < m + 1) {
                    pw = pw * sW;
                }
            }
        }
        const S m_pow = [&] {
            S r(1);
            for (int i = 0; i < m - 1; ++i) {
                r /= ms;
            }
            return r;
        }();
        SigmaSeries<S> term1 = B.shifted(-1) * F_sigma + (F_tilde * G.power(m + 1)).shifted(m - 1);
        term1 = term1 * (psi_inv * m_pow);

        const S m2 = ms * ms;
        SigmaSeries<S> rest = eval_increment(bound[static_cast<std::size_t>(m + 1)], gq, e).shifted(-1);
        for (int l = 0; l <= m; ++l) {
            if (!bound[static_cast<std::size_t>(l)].coeffs.empty()) {
                rest += eval_on_jet(bound[static_cast<std::size_t>(l)], H).shifted(m - l);
            }
        }
        rest = rest * (psi_inv * m2);

        SigmaSeries<S> cross(frame(), m, ord);
        for (int i = 0; i < n; ++i) {
            const auto di = V.partial(i);
            cross += (di.euler() + di * ms) * op.coeff_iT[static_cast<std::size_t>(i)];
        }
        SigmaSeries<S> L = cross.shifted(m) * (psi_inv * ms);
        L += (G * op.coeff_T).shifted(m - 1) * (psi_inv * ms);
        L += laplacian(V).shifted(2 * m) * (psi_inv * (m2 * S(op.laplacian_sign)));

        return term1 + rest - L;
    }
};

template <class S>
Regime ReducedEquation<S>::regime() const
{
    return m_impl->regime;
}

template <class S>
int ReducedEquation<S>::m() const
{
    return m_impl->m;
}

template <class S>
const S &ReducedEquation<S>::a() const
{
    return m_impl->a;
}

template <class S>
int ReducedEquation<S>::time_sign() const
{
    return m_impl->time_sign;
}

template <class S>
int ReducedEquation<S>::signature() const
{
    return m_impl->h.signature;
}

template <class S>
int ReducedEquation<S>::denominator() const
{
    return m_impl->regime == Regime::fractional ? m_impl->m : 1;
}

template <class S>
int ReducedEquation<S>::first_order() const
{
    return m_impl->regime == Regime::fractional ? 0 : 1;
}

template <class S>
int ReducedEquation<S>::max_order() const
{
    return m_impl->order;
}

template <class S>
const Hypersurface<S> &ReducedEquation<S>::surface() const
{
    return m_impl->h;
}

template <class S>
const Nonlinearity<S> &ReducedEquation<S>::nonlinearity() const
{
    return m_impl->f;
}

template <class S>
const TransformedOperator<S> &ReducedEquation<S>::op() const
{
    return m_impl->op;
}

template <class S>
const XSeries<S> &ReducedEquation<S>::original_psi() const
{
    return m_impl->original_psi;
}

template <class S>
const Nonlinearity<S> &ReducedEquation<S>::original_nonlinearity() const
{
    return m_impl->original_f;
}

template <class S>
S ReducedEquation<S>::divisor(int k) const
{
    const int shift = m_impl->regime == Regime::fractional ? m_impl->m : 0;
    return S(static_cast<long>(k + shift) * static_cast<long>(k + shift + 1));
}

template <class S>
XSeries<S> ReducedEquation<S>::rhs_slice(int k, const CoefficientView<S> &v) const
{
    const Impl &I = *m_impl;
    if (k < first_order() || k > I.order) {
        fail(ErrorKind::configuration, "slice order " + std::to_string(k) + " outside the prepared range");
    }
    if (v.size() != k) {
        fail(ErrorKind::configuration, "slice evaluator needs exactly the coefficients below the requested order");
    }
    std::vector<XSeries<S>> coeffs;
    for (int j = 0; j < k; ++j) {
        coeffs.push_back(v[j]);
    }
    if (m_offset) {
        if (coeffs.empty()) {
            coeffs.push_back(*m_offset);
        } else {
            coeffs[0] += *m_offset;
        }
    }
    if (I.regime == Regime::fractional) {
        return I.assemble_fractional(std::move(coeffs), k + 1)[k];
    }
    return I.assemble_log(std::move(coeffs), k)[k - 1];
}

template <class S>
SigmaSeries<S> ReducedEquation<S>::inhomogeneous_data(int order) const
{
    const Impl &I = *m_impl;
    if (order < 0 || order > I.order) {
        fail(ErrorKind::configuration, "order outside the prepared range");
    }
    std::vector<XSeries<S>> coeffs;
    if (m_offset) {
        coeffs.push_back(*m_offset);
    }
    if (I.regime == Regime::fractional) {
        return I.assemble_fractional(std::move(coeffs), order + 1).truncated(order);
    }
    return I.assemble_log(std::move(coeffs), order + 1).truncated(order);
}

template <class S>
XSeries<S> ReducedEquation<S>::cancellation_certificate() const
{
    const Impl &I = *m_impl;
    if (I.regime == Regime::fractional) {
        const S A = I.a * S(I.m - 1);
        S lead = A / S(I.m);
        S pw(1);
        for (int i = 0; i <= I.m; ++i) {
            pw *= lead;
        }
        return I.h.Psi * (-A / S(I.m * I.m)) - I.F_sigma * pw;
    }
    return I.h.Psi * I.a - I.f2_sigma * (I.a * I.a);
}

template <class S>
ReducedEquation<S> ReducedEquation<S>::with_trace(const XSeries<S> &v0) const
{
    if (m_impl->regime == Regime::fractional) {
        fail(ErrorKind::configuration, "the fractional regime has no free trace");
    }
    v0.require_compatible(XSeries<S>(m_impl->frame()));
    ReducedEquation r(*this);
    r.m_offset = m_offset ? *m_offset + v0 : v0;
    return r;
}

namespace
{

template <class S>
void require_degree(const Nonlinearity<S> &f, int top, const char *what)
{
    for (int l = top + 1; l <= f.top_degree(); ++l) {
        if (!f.part(l).empty()) {
            fail(ErrorKind::configuration, std::string(what) + ": nonlinearity has terms of degree "
                                               + std::to_string(l));
        }
    }
}

template <class S>
std::shared_ptr<typename ReducedEquation<S>::Impl>
make_log_impl(const Nonlinearity<S> &f, const Hypersurface<S> &h, const S &a, int order, Regime regime)
{
    if (order < 1) {
        fail(ErrorKind::configuration, "order must be at least 1");
    }
    require_degree(f, 2, "logarithmic reduction");
    const auto residual = check_pseudo_eikonal(h, f.part(2), a);
    if (!vanishes(residual)) {
        fail(ErrorKind::condition, "pseudo-Eikonal condition fails: " + describe_residual(residual));
    }
    auto impl = std::make_shared<typename ReducedEquation<S>::Impl>(h, f);
    auto &I = *impl;
    I.regime = regime;
    I.a = a;
    I.order = order;
    const auto &frame = h.frame();
    const int K = order + 1;
    I.t_series = SigmaSeries<S>(frame, 1, K, {h.psi, XSeries<S>::constant(frame, S(1))});
    for (int l = 0; l <= 2; ++l) {
        I.bound.push_back(bind(f.part(l), I.t_series));
    }
    I.p.push_back(SigmaSeries<S>::constant(XSeries<S>::constant(frame, S(-1)), 1, K));
    for (const auto &g : h.grad) {
        I.p.push_back(SigmaSeries<S>::constant(g, 1, K));
    }
    const auto split = split_remainder(f.part(2), h.psi, K);
    I.f2_sigma = split.on_sigma;
    I.f2_tilde = split.tilde;
    I.f1_p = eval_on_jet(I.bound[1], I.p);
    I.f0 = eval_on_jet(I.bound[0], I.p);
    return impl;
}

} // namespace

template <class S>
ReducedEquation<S> build_log_reduction(const Nonlinearity<S> &f, const Hypersurface<S> &h, const S &a, int order)
{
    if (h.signature != 1) {
        fail(ErrorKind::configuration, "logarithmic wave reduction needs a wave-signature surface");
    }
    return ReducedEquation<S>(make_log_impl(f, h, a, order, Regime::log));
}

template <class S>
ReducedEquation<S> build_negative_side(const Nonlinearity<S> &f, const Hypersurface<S> &h, const S &a, int order)
{
    if (h.signature != 1) {
        fail(ErrorKind::configuration, "negative-side reduction needs a wave-signature surface");
    }
    if (!check_time_reversal(f.part(2))) {
        fail(ErrorKind::time_reversal, "f2 is not symmetric under tau -> -tau (it has odd powers of tau)");
    }
    const auto reversed = f.time_reversed();
    const auto flipped = make_hypersurface(-h.psi);
    auto impl = make_log_impl(reversed, flipped, a, order, Regime::negative_side);
    impl->time_sign = -1;
    impl->original_psi = h.psi;
    impl->original_f = f;
    return ReducedEquation<S>(impl);
}

template <class S>
Nonlinearity<S> elliptic_nonlinearity(const FramePtr<S> &frame, const S &a)
{
    if (a == 0) {
        fail(ErrorKind::input, "the blowup coefficient a must be nonzero");
    }
    const int n = frame->variables;
    const S inv = S(1) / a;
    const Exponent zero(static_cast<std::size_t>(n), 0);
    std::vector<RawMonomial<S>> raw{{{{0, zero, inv}}, 2, zero}};
    for (int i = 0; i < n; ++i) {
        Exponent xi = zero;
        xi[static_cast<std::size_t>(i)] = 2;
        raw.push_back({{{0, zero, inv}}, 0, xi});
    }
    return decompose_homogeneous(frame, raw, 1);
}

template <class S>
ReducedEquation<S> build_elliptic_reduction(const XSeries<S> &phi, const S &a, int order)
{
    const auto f = elliptic_nonlinearity(phi.frame(), a);
    const auto h = make_hypersurface(phi, -1);
    return ReducedEquation<S>(make_log_impl(f, h, a, order, Regime::elliptic));
}

template <class S>
ReducedEquation<S> build_fractional_reduction(const Nonlinearity<S> &f, const Hypersurface<S> &h, const S &a, int m,
                                              int order)
{
    if (h.signature != 1) {
        fail(ErrorKind::configuration, "fractional reduction needs a wave-signature surface");
    }
    if (order < 0) {
        fail(ErrorKind::configuration, "order must be non-negative");
    }
    require_degree(f, m + 1, "fractional reduction");
    const auto res = check_higher_conditions(h, f, a, m);
    if (!vanishes(res.top)) {
        fail(ErrorKind::condition, "top-degree condition fails: " + describe_residual(res.top));
    }
    if (!vanishes(res.sub)) {
        fail(ErrorKind::condition, "f_m must vanish on the surface: " + describe_residual(res.sub));
    }
    auto impl = std::make_shared<typename ReducedEquation<S>::Impl>(h, f);
    auto &I = *impl;
    I.regime = Regime::fractional;
    I.m = m;
    I.a = a;
    I.order = order;
    const auto &frame = h.frame();
    const int K = order + 2;
    std::vector<XSeries<S>> t(static_cast<std::size_t>(m + 1), XSeries<S>(frame));
    t[0] = h.psi;
    t[static_cast<std::size_t>(m)] = XSeries<S>::constant(frame, S(1));
    I.t_series = SigmaSeries<S>(frame, m, K, t);
    for (int l = 0; l <= m + 1; ++l) {
        I.bound.push_back(bind(f.part(l), I.t_series));
    }
    const S sign = (m + 1) % 2 == 0 ? S(1) : S(-1);
    const auto split = split_remainder(f.part(m + 1), h.psi, K);
    I.F_sigma = split.on_sigma * sign;
    I.F_tilde = split.tilde.in_fractional_variable(m, K) * sign;
    return ReducedEquation<S>(impl);
}

template class ReducedEquation<double>;
template class ReducedEquation<Rational>;

#define SWF_INSTANTIATE(S)                                                                                             \
    template TransformedOperator<S> transform_operator(const Hypersurface<S> &);                                       \
    template std::string describe_residual(const XSeries<S> &);                                                        \
    template ReducedEquation<S> build_log_reduction(const Nonlinearity<S> &, const Hypersurface<S> &, const S &, int); \
    template ReducedEquation<S> build_negative_side(const Nonlinearity<S> &, const Hypersurface<S> &, const S &, int); \
    template ReducedEquation<S> build_fractional_reduction(const Nonlinearity<S> &, const Hypersurface<S> &,           \
                                                           const S &, int, int);                                       \
    template Nonlinearity<S> elliptic_nonlinearity(const FramePtr<S> &, const S &);                                    \
    template ReducedEquation<S> build_elliptic_reduction(const XSeries<S> &, const S &, int);

SWF_INSTANTIATE(double)
SWF_INSTANTIATE(Rational)

#undef SWF_INSTANTIATE

} // namespace swf
