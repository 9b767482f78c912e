#include <swf/geometry.hpp>

#include <cmath>
#include <string>

namespace swf
{

template <class S>
Hypersurface<S> make_hypersurface(const XSeries<S> &psi, int signature)
{
    if (signature != 1 && signature != -1) {
        fail(ErrorKind::configuration, "signature must be +1 or -1");
    }
    const auto &frame = psi.frame();
    Hypersurface<S> h{psi, {}, XSeries<S>(frame), XSeries<S>(frame), signature};
    XSeries<S> norm(frame);
    for (int i = 0; i < psi.variables(); ++i) {
        h.grad.push_back(psi.partial(i));
        h.lap += h.grad.back().partial(i);
        norm += h.grad.back() * h.grad.back();
    }
    h.Psi = XSeries<S>::constant(frame, S(1)) - norm * S(signature);
    if (is_negligible(h.Psi.constant_term(), 1e-12)) {
        fail(ErrorKind::characteristic, "characteristic surface: 1 - |grad psi|^2 vanishes at the base point");
    }
    return h;
}

template <class S>
XSeries<S> check_pseudo_eikonal(const Hypersurface<S> &h, const Part<S> &f2, const S &a)
{
    if (a == 0) {
        fail(ErrorKind::input, "the blowup coefficient a must be nonzero");
    }
    return h.Psi - eval_part_on_sigma(f2, h.psi) * a;
}

template <class S>
HigherResiduals<S> check_higher_conditions(const Hypersurface<S> &h, const Nonlinearity<S> &f, const S &a, int m)
{
    if (m < 2) {
        fail(ErrorKind::configuration, "higher-order conditions need m >= 2; use the logarithmic case for m = 1");
    }
    if (a == 0) {
        fail(ErrorKind::input, "the blowup coefficient a must be nonzero");
    }
    S factor(1);
    for (int i = 0; i < m; ++i) {
        factor *= S(1 - m) * a;
    }
    for (int i = 0; i < m - 1; ++i) {
        factor /= S(m);
    }
    return {h.Psi - eval_part_on_sigma(f.part(m + 1), h.psi) * factor, eval_part_on_sigma(f.part(m), h.psi)};
}

template <class S>
bool check_time_reversal(const Part<S> &f2)
{
    for (const auto &mono : f2.monomials) {
        if (mono.tau_power % 2 == 0) {
            continue;
        }
        for (const auto &c : mono.coeff) {
            if (!c.is_zero()) {
                return false;
            }
        }
    }
    return true;
}

namespace
{

template <class S>
XSeries<S> eikonal_residual(const Part<S> &f2, const S &a, const XSeries<S> &psi)
{
    XSeries<S> norm(psi.frame());
    for (int i = 0; i < psi.variables(); ++i) {
        const auto g = psi.partial(i);
        norm += g * g;
    }
    return XSeries<S>::constant(psi.frame(), S(1)) - norm - eval_part_on_sigma(f2, psi) * a;
}

// Same coefficients, but treated as an exact polynomial.
template <class S>
XSeries<S> as_polynomial(const XSeries<S> &p)
{
    return XSeries<S>::from_dense(p.frame(), std::vector<S>(p.dense().begin(), p.dense().end()), 0, true);
}

template <class S>
XSeries<S> x1_power_times(const XSeries<S> &c, int power, const FramePtr<S> &frame)
{
    auto r = as_polynomial(insert_variable(c, 0, frame));
    const auto x1 = XSeries<S>::variable(frame, 0);
    for (int k = 0; k < power; ++k) {
        r = r * x1;
    }
    return r;
}

template <class S>
bool near_zero(const S &x, const S &scale)
{
    if constexpr (is_exact_v<S>) {
        return x == 0;
    } else {
        return std::fabs(x) <= 1e-12 * std::max(1.0, std::fabs(scale));
    }
}

} // namespace

template <class S>
XSeries<S> solve_pseudo_eikonal(const Part<S> &f2, const S &a, const XSeries<S> &init, const Branch<S> &branch,
                                const FramePtr<S> &frame)
{
    if (a == 0) {
        fail(ErrorKind::input, "the blowup coefficient a must be nonzero");
    }
    const int n = frame->variables;
    if (n < 1) {
        fail(ErrorKind::configuration, "the pseudo-Eikonal solve needs at least one spatial variable");
    }
    const auto &sub = init.frame();
    if (sub->variables != n - 1 || sub->max_degree != frame->max_degree
        || !std::equal(sub->base_point.begin(), sub->base_point.end(), frame->base_point.begin() + 1)) {
        fail(ErrorKind::configuration, "initial data must live on (x_2, ..., x_n) around the same base point");
    }
    const int D = frame->max_degree;
    const auto lifted = as_polynomial(insert_variable(init, 0, frame));
    const auto x1 = XSeries<S>::variable(frame, 0);

    // G restricted to x_1 = base_1, as a quadratic in p_1 = d_1 psi there.
    auto q_at = [&](const S &c) { return variable_slice(eikonal_residual(f2, a, lifted + x1 * c), 0, 0, sub); };
    const auto g0 = q_at(S(0)), gp = q_at(S(1)), gm = q_at(S(-1));
    const auto beta = (gp - gm) * ratio<S>(1, 2);
    const auto alpha = (gp + gm) * ratio<S>(1, 2) - g0;
    const auto &gamma = g0;

    const S A = alpha.constant_term(), B = beta.constant_term(), C = gamma.constant_term();
    const S scale = S(1) + (A < 0 ? S(-A) : A) + (B < 0 ? S(-B) : B) + (C < 0 ? S(-C) : C);
    S root{};
    if (near_zero(A, scale) && near_zero(B, scale)) {
        if (!near_zero(C, scale)) {
            fail(ErrorKind::no_solution, "pseudo-Eikonal equation has no root for d_1 psi at the base point");
        }
        if (vanishes(alpha) && vanishes(beta) && vanishes(gamma)) {
            // condition holds for every slope
            if (branch.kind != Branch<S>::Kind::slope) {
                fail(ErrorKind::branch_selection,
                     "pseudo-Eikonal equation is satisfied for every slope; give a numeric initial slope");
            }
            return lifted + x1 * branch.slope;
        }
        fail(ErrorKind::branch_selection, "degenerate root of the pseudo-Eikonal equation at the base point");
    }
    if (near_zero(A, scale)) {
        root = -C / B;
    } else {
        const S disc = B * B - S(4) * A * C;
        if (near_zero(disc, scale * scale)) {
            fail(ErrorKind::branch_selection, "double root of the pseudo-Eikonal equation at the base point");
        }
        if (disc < 0) {
            fail(ErrorKind::no_solution, "pseudo-Eikonal equation has no real root for d_1 psi at the base point");
        }
        const auto sq = exact_sqrt(disc);
        if (!sq) {
            fail(ErrorKind::input, "pseudo-Eikonal root is irrational; use floating-point arithmetic");
        }
        const S r1 = (-B + *sq) / (S(2) * A), r2 = (-B - *sq) / (S(2) * A);
        const S hi = r1 > r2 ? r1 : r2, lo = r1 > r2 ? r2 : r1;
        switch (branch.kind) {
            case Branch<S>::Kind::plus:
                root = hi;
                break;
            case Branch<S>::Kind::minus:
                root = lo;
                break;
            case Branch<S>::Kind::slope: {
                const S dh = hi - branch.slope, dl = lo - branch.slope;
                root = (dh < 0 ? S(-dh) : dh) <= (dl < 0 ? S(-dl) : dl) ? hi : lo;
                break;
            }
        }
    }

    // p_1(x') on the surface slice: Newton on alpha p^2 + beta p + gamma.
    auto p1 = XSeries<S>::constant(sub, root);
    for (int it = 0; it < D + 3; ++it) {
        const auto value = alpha * p1 * p1 + beta * p1 + gamma;
        if (value.is_zero()) {
            break;
        }
        const auto slope = alpha * p1 * S(2) + beta;
        p1 = as_polynomial(p1 - value * slope.reciprocal());
    }
    const auto dG = (alpha * p1 * S(2) + beta).reciprocal();

    auto psi = lifted + x1_power_times(p1, 1, frame);
    for (int j = 1; j < D; ++j) {
        const auto g = variable_slice(eikonal_residual(f2, a, as_polynomial(psi)), 0, j, sub);
        const auto next = g * dG * (S(-1) / S(j + 1));
        psi = as_polynomial(psi + x1_power_times(next, j + 1, frame));
    }
    return psi.as_jet(D);
}

#define SWF_INSTANTIATE(S)                                                                                             \
    template Hypersurface<S> make_hypersurface(const XSeries<S> &, int);                                               \
    template XSeries<S> check_pseudo_eikonal(const Hypersurface<S> &, const Part<S> &, const S &);                     \
    template HigherResiduals<S> check_higher_conditions(const Hypersurface<S> &, const Nonlinearity<S> &, const S &,   \
                                                        int);                                                          \
    template bool check_time_reversal(const Part<S> &);                                                                \
    template XSeries<S> solve_pseudo_eikonal(const Part<S> &, const S &, const XSeries<S> &, const Branch<S> &,        \
                                             const FramePtr<S> &);

SWF_INSTANTIATE(double)
SWF_INSTANTIATE(Rational)

#undef SWF_INSTANTIATE

} // namespace swf
