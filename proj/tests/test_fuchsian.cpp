#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace swf;
using namespace swf::test;

namespace
{

// Coefficients of u = -log t + sum c_k t^k solving u'' = (u')^2 + 1, found by
// plain coefficient matching on polynomials in t (no series library).
std::vector<Q> ode_oracle(int K)
{
    std::vector<Q> c(static_cast<std::size_t>(K + 1), Q(0));
    // w = t u' = -1 + sum k c_k t^k;  t^2 u'' = 1 + sum k(k-1) c_k t^k
    // t^2 u'' - (t u')^2 - t^2 = 0, coefficient of t^k
    for (int k = 1; k <= K; ++k) {
        // unknown c_k enters linearly: k(k-1) c_k + 2k c_k
        Q known(0);
        for (int i = 1; i < k; ++i) {
            const int j = k - i;
            if (j >= 1 && j < k) {
                known += Q(i * j) * c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)];
            }
        }
        if (k == 2) {
            known += 1;
        }
        c[static_cast<std::size_t>(k)] = known / Q(k * (k - 1) + 2 * k);
    }
    return c;
}

Q ode_defect(const std::vector<Q> &c, int k)
{
    // coefficient of t^k in t^2 u'' - (t u')^2 - t^2
    Q r = Q(k * (k - 1)) * c[static_cast<std::size_t>(k)] + Q(2 * k) * c[static_cast<std::size_t>(k)];
    for (int i = 1; i < k; ++i) {
        r -= Q(i * (k - i)) * c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k - i)];
    }
    if (k == 2) {
        r -= 1;
    }
    return r;
}

template <class S>
Nonlinearity<S> two_d_problem(const FramePtr<S> &f)
{
    return decompose_homogeneous(f,
                                 {term(2, S(1), 2), term(2, S(-1), 0, unit(2, 0, 2)), term(2, S(-1), 0, unit(2, 1, 2)),
                                  term(S(1), 0, unit(2, 0), 1, zeros(2)), term(S(1, 2), 1, zeros(2), 1, zeros(2)),
                                  term(S(1), 0, unit(2, 1), 0, zeros(2)), term(S(1), 2, zeros(2), 0, zeros(2))},
                                 1);
}

} // namespace

TEST_CASE("forced ODE matches coefficient matching")
{
    auto f = make_frame<Q>(0, 0, {});
    const auto nl = decompose_homogeneous(f, {term(0, Q(1), 2), term(0, Q(1), 0)}, 1);
    const auto sol = solve(build_log_reduction(nl, make_hypersurface(XSeries<Q>(f)), Q(1), 8), no_trace<Q>(), 8);
    const auto oracle = ode_oracle(8);
    for (int k = 1; k <= 8; ++k) {
        CHECK(ode_defect(oracle, k) == 0);
        CHECK(sol.v[k].constant_term() == oracle[static_cast<std::size_t>(k)]);
    }
    CHECK(oracle[2] == Q(1, 6));
    CHECK(oracle[3] == 0);
    CHECK(oracle[4] == Q(1, 180));
    // -log(sin t) = -log t + t^2/6 + t^4/180 + t^6/2835 + t^8/37800 + ...
    CHECK(sol.v[8].constant_term() == Q(1, 37800));
}

TEST_CASE("shift of the initial trace")
{
    auto f = make_frame<Q>(0, 0, {});
    const auto nl = decompose_homogeneous(f, {term(0, Q(1), 2), term(0, Q(1), 0)}, 1);
    const auto eq = build_log_reduction(nl, make_hypersurface(XSeries<Q>(f)), Q(1), 6);

    const RecursionSpec<Q> plain{eq, std::nullopt, 6};
    CHECK(!shift_initial_data(plain).equation.trace_offset());

    // v enters the ODE only through derivatives
    const auto five = XSeries<Q>::constant(f, Q(5));
    const RecursionSpec<Q> traced{eq, five, 6};
    const auto shifted = shift_initial_data(traced);
    CHECK(!shifted.v0);
    const auto w = solve_recursion(shifted);
    const auto w0 = solve_recursion(plain);
    for (int k = 0; k <= 6; ++k) {
        CHECK((w[k] - w0[k]).is_zero());
    }
    const auto sol = solve(eq, five, 6);
    CHECK(sol.v[0].constant_term() == 5);
    CHECK(sol.v[2].constant_term() == Q(1, 6));

    // x-dependent trace: direct recursion from v0 equals shift + solve + add back
    auto f2 = make_frame<Q>(2, 5, {Q(0), Q(0)});
    const auto nl2 = two_d_problem(f2);
    const auto eq2 = build_log_reduction(nl2, make_hypersurface(XSeries<Q>(f2)), Q(1), 5);
    const auto v0 = XSeries<Q>::from_terms(f2, {{{1, 0}, Q(1)}, {{0, 2}, Q(-1, 3)}, {{0, 0}, Q(2)}});
    const auto direct = solve_recursion(RecursionSpec<Q>{eq2, v0, 5});
    const auto via_shift = solve(eq2, v0, 5);
    for (int k = 0; k <= 5; ++k) {
        CHECK((direct[k] - via_shift.v[k]).is_zero());
    }
    CHECK(symbolic_residual(via_shift, nl2).vanishes());

    // fractional regime: no trace
    auto f0 = make_frame<double>(0, 0, {});
    const auto frac = build_fractional_reduction(decompose_homogeneous(f0, {term(0, -1.0, 3)}, 2),
                                                 make_hypersurface(XSeries<double>(f0)), std::sqrt(2.0), 2, 4);
    CHECK_THROWS_AS((void)solve(frac, XSeries<double>::constant(f0, 1.0), 4), Error);
}

TEST_CASE("determinism and uniqueness at fixed trace")
{
    auto f = make_frame<Q>(2, 5, {Q(0), Q(0)});
    const auto nl = two_d_problem(f);
    const auto eq = build_log_reduction(nl, make_hypersurface(XSeries<Q>(f)), Q(1), 5);
    const auto v0 = XSeries<Q>::variable(f, 1);
    const auto a = solve(eq, v0, 5);
    const auto b = solve(eq, v0, 5);
    // same problem with the monomials listed in reverse
    std::vector<RawMonomial<Q>> raw{term(Q(1), 2, zeros(2), 0, zeros(2)), term(Q(1), 0, unit(2, 1), 0, zeros(2)),
                                    term(Q(1, 2), 1, zeros(2), 1, zeros(2)), term(Q(1), 0, unit(2, 0), 1, zeros(2)),
                                    term(2, Q(-1), 0, unit(2, 1, 2)), term(2, Q(-1), 0, unit(2, 0, 2)),
                                    term(2, Q(1), 2)};
    const auto c = solve(build_log_reduction(decompose_homogeneous(f, raw, 1), make_hypersurface(XSeries<Q>(f)), Q(1), 5),
                         v0, 5);
    const auto other = solve(eq, XSeries<Q>::variable(f, 0), 5);
    bool differs = false;
    for (int k = 0; k <= 5; ++k) {
        const auto da = a.v[k].dense(), db = b.v[k].dense(), dc = c.v[k].dense();
        CHECK(std::equal(da.begin(), da.end(), db.begin(), db.end()));
        CHECK(std::equal(da.begin(), da.end(), dc.begin(), dc.end()));
        differs = differs || !(a.v[k] - other.v[k]).is_zero();
    }
    CHECK(differs);
}

TEST_CASE("divisor law by probe perturbation")
{
    // for f = tau^2, a = 1, psi = 0 a probe delta T^k in v changes the sigma^(k-2)
    // residual slice by k(k+1) delta
    auto f = make_frame<Q>(0, 0, {});
    const auto nl = decompose_homogeneous(f, {term(0, Q(1), 2)}, 1);
    const auto eq = build_log_reduction(nl, make_hypersurface(XSeries<Q>(f)), Q(1), 8);
    const auto sol = solve(eq, no_trace<Q>(), 8);
    const Q delta(1, 7);
    for (int k = 1; k <= 6; ++k) {
        auto probe = sol;
        probe.v = sol.v + SigmaSeries<Q>::monomial(XSeries<Q>::constant(f, delta), k, 1, 8);
        const auto r = symbolic_residual(probe, nl, k - 2);
        CHECK(r.at(k - 2).constant_term() == Q(k * (k + 1)) * delta);
        CHECK(r.at(k - 2).constant_term() / delta == eq.divisor(k));
    }
}

TEST_CASE("solution evaluator")
{
    auto f = make_frame<double>(0, 0, {});
    const auto ode = decompose_homogeneous(f, {term(0, 1.0, 2)}, 1);
    const auto sol = solve(build_log_reduction(ode, make_hypersurface(XSeries<double>(f)), 1.0, 4), no_trace<double>(), 4);
    const SolutionEvaluator<double> ev(sol);
    const auto J = ev.jet<double>(0.5, std::span<const double>());
    CHECK(J.u == doctest::Approx(-std::log(0.5)));
    CHECK(J.u_t == doctest::Approx(-2.0));
    CHECK(J.u_tt == doctest::Approx(4.0));
    try {
        (void)ev.jet<double>(-0.1, std::span<const double>());
        FAIL("expected a domain error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::domain);
    }

    const double a = std::sqrt(2.0);
    const auto frac = solve(build_fractional_reduction(decompose_homogeneous(f, {term(0, -1.0, 3)}, 2),
                                                       make_hypersurface(XSeries<double>(f)), a, 2, 4),
                            no_trace<double>(), 4);
    const SolutionEvaluator<double> fe(frac);
    for (double T : {1e-2, 1e-4, 1e-6}) {
        const auto Jf = fe.jet<double>(T, std::span<const double>());
        CHECK(Jf.u == doctest::Approx(a * std::sqrt(T)));
        CHECK(Jf.u_t == doctest::Approx(a / 2 / std::sqrt(T)));
    }

    // x-dependent data: closed-form derivatives agree with finite differences
    auto f1 = make_frame<double>(1, 6, {0.0});
    const auto psi = XSeries<double>::variable(f1, 0) * 0.3;
    const auto nl = decompose_homogeneous(f1, {term(1, 1.0, 2), term(1, -1.0, 0, unit(1, 0, 2)),
                                               term(1.0, 0, unit(1, 0), 0, zeros(1))},
                                          1);
    const auto s1 = solve(build_log_reduction(nl, make_hypersurface(psi), 1.0, 6),
                          XSeries<double>::variable(f1, 0) * 0.5, 6);
    const SolutionEvaluator<double> e1(s1);
    const double t = 0.2, x = 0.1, h = 1e-5;
    const std::vector<double> xs{x}, xp{x + h}, xm{x - h};
    const auto Jc = e1.jet<double>(t, xs);
    const double ut = (e1.jet<double>(t + h, xs).u - e1.jet<double>(t - h, xs).u) / (2 * h);
    const double ux = (e1.jet<double>(t, xp).u - e1.jet<double>(t, xm).u) / (2 * h);
    const double uxx = (e1.jet<double>(t, xp).u_x[0] - e1.jet<double>(t, xm).u_x[0]) / (2 * h);
    CHECK(Jc.u_t == doctest::Approx(ut).epsilon(1e-7));
    CHECK(Jc.u_x[0] == doctest::Approx(ux).epsilon(1e-7));
    CHECK(Jc.u_xx[0] == doctest::Approx(uxx).epsilon(1e-7));
}
