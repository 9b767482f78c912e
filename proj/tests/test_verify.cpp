#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace swf;
using namespace swf::test;

namespace
{

template <class S>
SingularSolution<S> log_solution(const FramePtr<S> &f, std::vector<XSeries<S>> v, int order)
{
    SingularSolution<S> sol{Regime::log, S(1), 1, 1, 1, XSeries<S>(f), SigmaSeries<S>(f, 1, order, std::move(v)),
                            std::nullopt};
    sol.v0 = sol.v[0];
    return sol;
}

SingularSolution<double> generic_log(int K)
{
    auto f = make_frame<double>(2, 10, {0.1, -0.2});
    const auto nl = decompose_homogeneous(
        f,
        {term(2, 1.0, 2), term(2, -1.0, 0, unit(2, 0, 2)), term(2, -1.0, 0, unit(2, 1, 2)),
         term(1.0, 0, unit(2, 0), 1, zeros(2)), term(0.5, 1, zeros(2), 1, zeros(2)), term(1.0, 0, unit(2, 1), 0, zeros(2)),
         term(1.0, 2, zeros(2), 0, zeros(2))},
        1);
    return solve(build_log_reduction(nl, make_hypersurface(XSeries<double>(f)), 1.0, K), XSeries<double>::variable(f, 0),
                 K);
}

Nonlinearity<double> generic_f(const FramePtr<double> &f)
{
    return decompose_homogeneous(
        f,
        {term(2, 1.0, 2), term(2, -1.0, 0, unit(2, 0, 2)), term(2, -1.0, 0, unit(2, 1, 2)),
         term(1.0, 0, unit(2, 0), 1, zeros(2)), term(0.5, 1, zeros(2), 1, zeros(2)), term(1.0, 0, unit(2, 1), 0, zeros(2)),
         term(1.0, 2, zeros(2), 0, zeros(2))},
        1);
}

} // namespace

TEST_CASE("symbolic residual: ODE examples")
{
    auto f = make_frame<Q>(0, 0, {});
    const auto pure = decompose_homogeneous(f, {term(0, Q(1), 2)}, 1);
    const auto forced = decompose_homogeneous(f, {term(0, Q(1), 2), term(0, Q(1), 0)}, 1);
    const auto zero = XSeries<Q>(f);
    auto c = [&](Q x) { return XSeries<Q>::constant(f, x); };

    // u = -log t for f = tau^2
    const auto bare = log_solution(f, {zero, zero, zero, zero, zero, zero, zero, zero, zero}, 8);
    auto r = symbolic_residual(bare, pure);
    CHECK(r.lowest == -2);
    CHECK(r.through_order == 6);
    CHECK(r.log_free);
    CHECK(r.vanishes());

    // u = -log t + t^2/6 + t^4/180 for f = tau^2 + 1, v_5 = 0
    const auto trunc = log_solution(f, {zero, zero, c(Q(1, 6)), zero, c(Q(1, 180)), zero}, 5);
    r = symbolic_residual(trunc, forced, 3);
    CHECK(r.through_order == 3);
    CHECK(r.vanishes());

    // wrong v: the constant f_0 survives at sigma^0
    r = symbolic_residual(bare, forced);
    CHECK(r.at(-2).is_zero());
    CHECK(r.at(-1).is_zero());
    CHECK(r.at(0).constant_term() == -1);
    CHECK(!r.vanishes());
}

TEST_CASE("symbolic residual: pole slices encode the surface conditions")
{
    auto f = make_frame<Q>(1, 4, {Q(0)});
    const auto nl = decompose_homogeneous(f, wave_terms(1, Q(1)), 1);
    // a = 1 but psi with |grad psi|^2 != 0 fails the pseudo-Eikonal condition only if a f2 != Psi
    SingularSolution<Q> sol{Regime::log, Q(2), 1, 1, 1, XSeries<Q>::variable(f, 0) * Q(1, 2),
                            SigmaSeries<Q>(f, 1, 4), std::nullopt};
    const auto r = symbolic_residual(sol, nl);
    // a Psi - a^2 f2(Sigma) = 2 (3/4) - 4 (3/4)
    CHECK(r.at(-2).constant_term() == Q(-3, 2));
}

TEST_CASE("symbolic residual: random log problems")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 4);
    auto q = [&] { return Q(num(rng), den(rng)); };
    for (int trial = 0; trial < 6; ++trial) {
        auto f = make_frame<Q>(2, 6, {Q(0), Q(0)});
        const Q a(1);
        auto raw = wave_terms(2, Q(1));
        raw.push_back(term(q(), 1, zeros(2), 0, zeros(2)));
        raw.push_back(term(q(), 0, unit(2, trial % 2), 1, zeros(2)));
        raw.push_back(term(q(), 0, zeros(2), 0, unit(2, 1)));
        raw.push_back(term(q(), 0, unit(2, 0, 2), 0, zeros(2)));
        const auto nl = decompose_homogeneous(f, raw, 1);
        const auto psi = XSeries<Q>::from_terms(f, {{{1, 0}, q() / Q(4)}, {{0, 1}, q() / Q(4)}});
        const auto v0 = XSeries<Q>::from_terms(f, {{{0, 0}, q()}, {{1, 1}, q()}});
        const auto sol = solve(build_log_reduction(nl, make_hypersurface(psi), a, 6), v0, 6);
        const auto r = symbolic_residual(sol, nl);
        CHECK(r.through_order == 4);
        CHECK(r.vanishes());
    }
}

TEST_CASE("monotone improvement in K")
{
    auto f = make_frame<Q>(0, 0, {});
    const auto nl = decompose_homogeneous(f, {term(0, Q(1), 2), term(0, Q(1), 0), term(Q(1), 1, {}, 0, {})}, 1);
    const auto eq = build_log_reduction(nl, make_hypersurface(XSeries<Q>(f)), Q(1), 10);
    int previous = -1;
    for (int K : {4, 6, 8, 10}) {
        const auto sol = solve(eq, no_trace<Q>(), K);
        // count vanishing slices in a fixed window through order 8
        auto padded = sol;
        std::vector<XSeries<Q>> c;
        for (int k = 0; k <= 10; ++k) {
            c.push_back(sol.v[k]);
        }
        padded.v = SigmaSeries<Q>(f, 1, 10, c);
        const auto r = symbolic_residual(padded, nl, 8);
        int count = 0;
        for (const auto &s : r.slices) {
            count += s.is_zero() ? 1 : 0;
        }
        CHECK(count >= previous);
        previous = count;
    }
}

TEST_CASE("log-log fit")
{
    std::vector<std::pair<double, double>> pts;
    for (double T : {1e-3, 1e-2, 1e-1}) {
        pts.emplace_back(T, 3.0 * std::pow(T, 2.5));
    }
    const auto fit = fit_loglog(pts);
    CHECK(fit.valid);
    CHECK(fit.slope == doctest::Approx(2.5));
    CHECK(fit.stderr_slope < 1e-10);
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.0));
    CHECK(!fit_loglog({{1e-3, 1.0}}).valid);
}

TEST_CASE("numeric residual")
{
    SUBCASE("plane wave is exact")
    {
        auto f = make_frame<double>(2, 4, {0.0, 0.0});
        const auto nl = decompose_homogeneous(f, wave_terms(2, 0.5), 1);
        const auto psi = XSeries<double>::from_terms(f, {{{1, 0}, 0.3}, {{0, 1}, 0.4}});
        const auto sol = solve(build_log_reduction(nl, make_hypersurface(psi), 2.0, 6), XSeries<double>::constant(f, 1.5), 6);
        const std::vector<double> base{0.0, 0.0};
        const auto rep = numeric_residual(sol, nl, GridSpec::standard(base));
        CHECK(rep.samples.size() == 30);
        CHECK(rep.max_residual < 1e-12);
        CHECK(rep.fitted_blowup_exponent == doctest::Approx(1.0).epsilon(0.05));
        for (const auto &s : rep.samples) {
            CHECK(s.T > 0);
        }
    }
    SUBCASE("fractional blowup exponent")
    {
        auto f = make_frame<double>(0, 0, {});
        const auto nl = decompose_homogeneous(f, {term(0, -1.0, 3)}, 2);
        const auto sol = solve(build_fractional_reduction(nl, make_hypersurface(XSeries<double>(f)), std::sqrt(2.0), 2, 8),
                               no_trace<double>(), 8);
        const auto rep = numeric_residual(sol, nl, GridSpec::standard(std::vector<double>{}));
        CHECK(rep.fitted_blowup_exponent == doctest::Approx(0.5).epsilon(0.05));
        CHECK(rep.all_at_noise_floor);
    }
    SUBCASE("truncation order sets the slope")
    {
        const auto s6 = generic_log(6);
        const auto s8 = generic_log(8);
        const auto nl = generic_f(s6.frame());
        const std::vector<double> base{0.1, -0.2};
        const auto r6 = numeric_residual(s6, nl, GridSpec::standard(base));
        const auto r8 = numeric_residual(s8, generic_f(s8.frame()), GridSpec::standard(base));
        CHECK(r6.fitted_slope >= 6 - 2 - 0.5);
        CHECK(r8.fitted_slope >= 8 - 2 - 0.5);
        CHECK(r8.fitted_slope - r6.fitted_slope == doctest::Approx(2.0).epsilon(0.25));
        CHECK(symbolic_residual(s8, nl).vanishes(residual_tolerance(s8)));
    }
    SUBCASE("grid errors")
    {
        auto f = make_frame<double>(0, 0, {});
        const auto nl = decompose_homogeneous(f, {term(0, 1.0, 2)}, 1);
        const auto sol = solve(build_log_reduction(nl, make_hypersurface(XSeries<double>(f)), 1.0, 4), no_trace<double>(), 4);
        GridSpec g;
        CHECK_THROWS_AS((void)numeric_residual(sol, nl, g), Error);
        g.x_points = {{}};
        g.T_values = {0.1, -0.1};
        try {
            (void)numeric_residual(sol, nl, g);
            FAIL("expected a domain error");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::domain);
        }
        g.T_values = {0.9};
        CHECK_THROWS_AS((void)numeric_residual(sol, nl, g), Error);
    }
}
