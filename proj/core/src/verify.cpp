#include <swf/verify.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace swf
{

namespace
{

// sum_j c[j] sigma^(low + j) + log_c log T, known through sigma^top.
template <class S>
struct Laurent {
    int low = 0;
    int top = 0;
    std::vector<XSeries<S>> c;
    XSeries<S> log_c;

    XSeries<S> at(int power) const
    {
        const int j = power - low;
        if (j < 0 || j >= static_cast<int>(c.size())) {
            return XSeries<S>(log_c.frame());
        }
        return c[static_cast<std::size_t>(j)];
    }
};

template <class S>
Laurent<S> window(const FramePtr<S> &frame, int low, int top)
{
    Laurent<S> out{low, top, {}, XSeries<S>(frame)};
    out.c.assign(static_cast<std::size_t>(std::max(0, top - low + 1)), XSeries<S>(frame));
    return out;
}

template <class S>
Laurent<S> add(const Laurent<S> &a, const Laurent<S> &b, const S &sb = S(1))
{
    Laurent<S> out = window(a.log_c.frame(), std::min(a.low, b.low), std::min(a.top, b.top));
    for (int p = out.low; p <= out.top; ++p) {
        out.c[static_cast<std::size_t>(p - out.low)] = a.at(p) + b.at(p) * sb;
    }
    out.log_c = a.log_c + b.log_c * sb;
    return out;
}

template <class S>
Laurent<S> times(const Laurent<S> &a, const XSeries<S> &x)
{
    Laurent<S> out = a;
    for (auto &c : out.c) {
        c = c * x;
    }
    out.log_c = out.log_c * x;
    return out;
}

// d/dT with T = sigma^den; d_T (c log T) = c sigma^-den for sigma-independent c.
template <class S>
Laurent<S> d_T(const Laurent<S> &a, int den)
{
    Laurent<S> out = window(a.log_c.frame(), std::min(a.low, 0) - den, a.top - den);
    for (int p = a.low; p <= a.top; ++p) {
        if (p - den >= out.low && p != 0) {
            out.c[static_cast<std::size_t>(p - den - out.low)] = a.at(p) * (S(p) / S(den));
        }
    }
    out.c[static_cast<std::size_t>(-den - out.low)] += a.log_c;
    return out;
}

template <class S>
Laurent<S> d_hat(const Laurent<S> &a, int i)
{
    Laurent<S> out = a;
    for (auto &c : out.c) {
        c = c.partial(i);
    }
    out.log_c = out.log_c.partial(i);
    return out;
}

template <class S>
Laurent<S> shift(Laurent<S> a, int j)
{
    a.low += j;
    a.top += j;
    return a;
}

template <class S>
SigmaSeries<S> regular_part(const Laurent<S> &a, int den)
{
    if (!a.log_c.is_zero()) {
        fail(ErrorKind::internal, "log term reached the nonlinearity");
    }
    std::vector<XSeries<S>> c;
    for (int p = 0; p <= a.top; ++p) {
        if (p < a.low) {
            c.push_back(XSeries<S>(a.log_c.frame()));
        } else {
            c.push_back(a.at(p));
        }
    }
    for (int p = a.low; p < 0; ++p) {
        if (!a.at(p).is_zero()) {
            fail(ErrorKind::internal, "pole survived in a covector body");
        }
    }
    return SigmaSeries<S>(a.log_c.frame(), den, a.top, std::move(c), a.top);
}

template <class S>
Laurent<S> from_sigma(const SigmaSeries<S> &s)
{
    const int top = s.reliable_order();
    Laurent<S> out = window(s.frame(), 0, top);
    for (int p = 0; p <= top; ++p) {
        out.c[static_cast<std::size_t>(p)] = s[p];
    }
    return out;
}

} // namespace

template <class S>
bool ResidualSlices<S>::vanishes(double tol) const
{
    return log_free && std::all_of(slices.begin(), slices.end(), [&](const XSeries<S> &s) { return s.is_zero(tol); });
}

template <class S>
int ResidualSlices<S>::reliable_degree() const
{
    int r = std::numeric_limits<int>::max();
    for (const auto &s : slices) {
        r = std::min(r, s.reliable());
    }
    return slices.empty() ? 0 : r;
}

template <class S>
ResidualSlices<S> symbolic_residual(const SingularSolution<S> &sol, const Nonlinearity<S> &f,
                                    std::optional<int> through_order)
{
    const auto &frame = sol.frame();
    const int n = frame->variables;
    const int den = sol.denominator();
    const bool frac = sol.regime == Regime::fractional;
    const int K = sol.order();

    // u in sigma powers
    Laurent<S> u = window(frame, 0, frac ? K + sol.m : K);
    if (frac) {
        u.c[static_cast<std::size_t>(sol.m - 1)] = XSeries<S>::constant(frame, sol.a);
        for (int k = 0; k <= K; ++k) {
            u.c[static_cast<std::size_t>(k + sol.m)] += sol.v[k];
        }
    } else {
        u.log_c = XSeries<S>::constant(frame, -sol.a);
        for (int k = 0; k <= K; ++k) {
            u.c[static_cast<std::size_t>(k)] = sol.v[k];
        }
    }
    u.top = frac ? std::min(u.top, sol.v.reliable_order() + sol.m) : std::min(u.top, sol.v.reliable_order());

    const S sign(sol.time_sign);
    std::vector<XSeries<S>> psi_i;
    for (int i = 0; i < n; ++i) {
        psi_i.push_back(sol.psi.partial(i));
    }
    auto D_t = [&](const Laurent<S> &w) { return times(d_T(w, den), XSeries<S>::constant(frame, sign)); };
    auto D_i = [&](const Laurent<S> &w, int i) {
        return add(d_hat(w, i), times(d_T(w, den), psi_i[static_cast<std::size_t>(i)]), -sign);
    };

    const Laurent<S> u_t = D_t(u);
    Laurent<S> R = D_t(u_t);
    std::vector<Laurent<S>> u_x;
    for (int i = 0; i < n; ++i) {
        u_x.push_back(D_i(u, i));
        R = add(R, D_i(u_x.back(), i), -S(sol.signature));
    }

    const int body_top = u_t.top + 1;
    Covector<S> y{regular_part(shift(u_t, 1), den)};
    for (const auto &ux : u_x) {
        y.push_back(regular_part(shift(ux, 1), den));
    }
    for (auto &yi : y) {
        yi = yi.truncated(body_top);
    }
    const SigmaSeries<S> t = SigmaSeries<S>::constant(sol.psi, den, body_top)
                             + SigmaSeries<S>::monomial(XSeries<S>::constant(frame, sign), den, den, body_top);
    for (const auto &part : f.parts()) {
        if (part.monomials.empty()) {
            continue;
        }
        R = add(R, shift(from_sigma(eval_on_jet(part, t, y)), -part.degree), S(-1));
    }

    ResidualSlices<S> out;
    out.lowest = -(den + 1);
    const int default_top = frac ? K - sol.m : K - 2;
    out.through_order = std::min(through_order.value_or(default_top), R.top);
    out.log_free = R.log_c.is_zero();
    for (int p = out.lowest; p <= out.through_order; ++p) {
        out.slices.push_back(R.at(p));
    }
    for (int p = R.low; p < out.lowest; ++p) {
        if (!R.at(p).is_zero()) {
            fail(ErrorKind::internal, "residual has a pole below the expected order");
        }
    }
    return out;
}

template <class S>
double residual_tolerance(const SingularSolution<S> &sol)
{
    if constexpr (is_exact_v<S>) {
        return 0.0;
    } else {
        const double D = sol.frame()->max_degree + 1;
        return 1e-12 * (1 + sol.v.max_abs() + std::abs(to_double(sol.a))) * D * D;
    }
}

GridSpec GridSpec::standard(std::span<const double> base_point)
{
    GridSpec g;
    for (int k = 0; k < 6; ++k) {
        g.T_values.push_back(std::pow(10.0, -3.0 + 0.5 * k));
    }
    const std::vector<double> base(base_point.begin(), base_point.end());
    g.x_points.push_back(base);
    const std::size_t n = base.size();
    if (n == 1) {
        for (double d : {0.2, -0.2, 0.1, -0.1}) {
            g.x_points.push_back({base[0] + d});
        }
    } else if (n >= 2) {
        const double r = 0.2 / std::sqrt(2.0);
        for (auto [d0, d1] : {std::pair{r, r}, {-r, r}, {-r, -r}, {r, -r}}) {
            auto p = base;
            p[0] += d0;
            p[1] += d1;
            g.x_points.push_back(std::move(p));
        }
    }
    return g;
}

Fit fit_loglog(const std::vector<std::pair<double, double>> &points)
{
    Fit fit;
    std::vector<std::pair<double, double>> xy;
    for (auto [T, y] : points) {
        if (T > 0 && std::isfinite(y) && y != 0) {
            xy.emplace_back(std::log(T), std::log(std::abs(y)));
        }
    }
    fit.points = static_cast<int>(xy.size());
    if (xy.size() < 2) {
        fit.slope = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }
    double mx = 0, my = 0;
    for (auto [x, y] : xy) {
        mx += x;
        my += y;
    }
    const double N = static_cast<double>(xy.size());
    mx /= N;
    my /= N;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) {
        fit.slope = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (xy.size() > 2) {
        double ss = 0;
        for (auto [x, y] : xy) {
            const double e = y - fit.intercept - fit.slope * x;
            ss += e * e;
        }
        fit.stderr_slope = std::sqrt(ss / (N - 2) / sxx);
    }
    fit.valid = true;
    return fit;
}

template <class S>
ResidualReport numeric_residual(const SingularSolution<S> &sol, const Nonlinearity<S> &f, const GridSpec &grid)
{
    using R = HighPrecision;
    const SolutionEvaluator<S> eval(sol);
    const auto &frame = sol.frame();
    const std::size_t n = static_cast<std::size_t>(frame->variables);
    const double eps = is_exact_v<S> ? 1e-45 : 1e-16;
    const R sign(sol.time_sign);

    if (grid.T_values.empty() || grid.x_points.empty()) {
        fail(ErrorKind::configuration, "empty verification grid");
    }
    for (double Td : grid.T_values) {
        if (!(Td > 0)) {
            fail(ErrorKind::domain, "grid T values must be positive");
        }
        if (Td > grid.trust_region) {
            fail(ErrorKind::configuration, "grid T value outside the trust region");
        }
    }

    ResidualReport rep;
    rep.all_at_noise_floor = true;
    std::vector<std::pair<double, double>> base_column, blowup;
    for (std::size_t xi = 0; xi < grid.x_points.size(); ++xi) {
        const auto &xd = grid.x_points[xi];
        if (xd.size() != n) {
            fail(ErrorKind::configuration, "grid point has the wrong dimension");
        }
        std::vector<R> x(xd.begin(), xd.end());
        const R psi = sol.psi.template evaluate<R>(std::span<const R>(x));
        for (double Td : grid.T_values) {
            const R t = psi + sign * R(Td);
            const auto J = eval.template jet<R>(t, std::span<const R>(x));
            R lap(0), lap_size(0);
            for (std::size_t i = 0; i < n; ++i) {
                lap += J.u_xx[i];
                lap_size += abs(J.u_xx[i]);
            }
            R fscale(0);
            const R fv = f.template evaluate<R>(t, std::span<const R>(x), J.u_t, std::span<const R>(J.u_x), &fscale);
            const R res = J.u_tt - R(sol.signature) * lap - fv;
            const double scale = to_double(abs(J.u_tt) + lap_size + fscale);

            Sample s;
            s.T = Td;
            s.x = xd;
            s.residual = to_double(res);
            s.u = to_double(J.u);
            s.du_dt = to_double(J.u_t);
            s.noise_floor = 64 * eps * scale;
            const bool above = std::abs(s.residual) > s.noise_floor;
            if (above) {
                rep.all_at_noise_floor = false;
                if (xi == 0) {
                    base_column.emplace_back(Td, s.residual);
                }
            }
            rep.max_residual = std::max(rep.max_residual, std::abs(s.residual));
            blowup.emplace_back(Td, s.du_dt);
            rep.samples.push_back(std::move(s));
        }
    }
    rep.residual_fit = fit_loglog(base_column);
    rep.blowup_fit = fit_loglog(blowup);
    rep.fitted_slope = rep.residual_fit.slope;
    rep.fitted_blowup_exponent = rep.blowup_fit.valid ? -rep.blowup_fit.slope : std::numeric_limits<double>::quiet_NaN();

    const auto slices = symbolic_residual(sol, f);
    for (int p = slices.lowest; p <= slices.through_order; ++p) {
        rep.symbolic_orders.emplace_back(p, slices.at(p).max_abs());
    }
    return rep;
}

#define SWF_INSTANTIATE(S)                                                                                             \
    template struct ResidualSlices<S>;                                                                                 \
    template ResidualSlices<S> symbolic_residual(const SingularSolution<S> &, const Nonlinearity<S> &,                 \
                                                 std::optional<int>);                                                  \
    template double residual_tolerance(const SingularSolution<S> &);                                                   \
    template ResidualReport numeric_residual(const SingularSolution<S> &, const Nonlinearity<S> &, const GridSpec &);

SWF_INSTANTIATE(double)
SWF_INSTANTIATE(Rational)

#undef SWF_INSTANTIATE

} // namespace swf
