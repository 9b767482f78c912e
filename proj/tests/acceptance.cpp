// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <swf/pipeline.hpp>

using namespace swf;
using Q = Rational;

namespace
{

const std::filesystem::path problems = SWF_PROBLEMS_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

class Stopwatch
{
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start).count();
    }

private:
    std::chrono::steady_clock::time_point m_start = std::chrono::steady_clock::now();
};

ProblemSpec load(const char *name, std::optional<Arithmetic> arithmetic = std::nullopt, std::optional<int> order = {})
{
    PipelineOptions opt;
    opt.arithmetic = arithmetic;
    opt.order = order;
    return apply_overrides(load_problem(problems / name), opt);
}

template <class S>
double max_v(const SingularSolution<S> &sol, int from = 0)
{
    double m = 0;
    for (int k = from; k < sol.v.stored(); ++k) {
        m = std::max(m, sol.v[k].max_abs());
    }
    return m;
}

double max_sample(const ResidualReport &r)
{
    double m = 0;
    for (const auto &s : r.samples) {
        m = std::max(m, std::abs(s.residual));
    }
    return m;
}

template <class S>
ReducedEquation<S> equation_of(const ProblemSpec &p)
{
    const auto frame = problem_frame<S>(p);
    return build_equation<S>(p, frame, resolve_psi<S>(p, frame));
}

// ---- random admissible log problems --------------------------------------

struct RandomProblem {
    Nonlinearity<Q> f;
    XSeries<Q> psi;
    Q a;
    XSeries<Q> v0;
};

Exponent unit(int n, int i)
{
    Exponent e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return e;
}

// Monomials t^j x^e with j + |e| <= 2.
std::vector<std::pair<int, Exponent>> low_monomials(int n)
{
    std::vector<std::pair<int, Exponent>> out;
    for (int j = 0; j <= 2; ++j) {
        out.push_back({j, Exponent(static_cast<std::size_t>(n), 0)});
    }
    for (int i = 0; i < n; ++i) {
        out.push_back({0, unit(n, i)});
        out.push_back({1, unit(n, i)});
        for (int k = i; k < n; ++k) {
            Exponent e = unit(n, i);
            e[static_cast<std::size_t>(k)] += 1;
            out.push_back({0, e});
        }
    }
    return out;
}

// f2 = a^-1 (tau^2 - |xi|^2) + (xi_i + psi_i tau)(b tau + g xi) + r (t - psi) tau^2
// satisfies the pseudo-Eikonal condition for every psi; f1 and f0 are free.
RandomProblem random_problem(std::mt19937 &rng, int n)
{
    std::uniform_int_distribution<int> num(-3, 3), den(1, 4), coin(0, 1), pick_a(1, 4);
    auto q = [&] { return Q(num(rng), den(rng)); };
    auto sparse_q = [&] { return coin(rng) ? q() : Q(0); };
    const Exponent zero(static_cast<std::size_t>(n), 0);
    auto frame = make_frame<Q>(n, 6, std::vector<Q>(static_cast<std::size_t>(n), Q(0)));

    const Q a = Q(pick_a(rng), 2);
    // psi: |grad psi(0)| < 1, degree <= 2
    std::vector<std::pair<Exponent, Q>> psi_terms{{zero, sparse_q()}};
    for (int i = 0; i < n; ++i) {
        psi_terms.push_back({unit(n, i), q() / Q(8)});
        for (int k = i; k < n; ++k) {
            Exponent e = unit(n, i);
            e[static_cast<std::size_t>(k)] += 1;
            psi_terms.push_back({e, sparse_q() / Q(4)});
        }
    }
    auto coeff_of = [](const std::vector<std::pair<Exponent, Q>> &terms, const Q &scale, int t_power) {
        std::vector<std::tuple<int, Exponent, Q>> c;
        for (const auto &[e, v] : terms) {
            c.emplace_back(t_power, e, scale * v);
        }
        return c;
    };
    auto d_psi = [&](int i) {
        std::vector<std::pair<Exponent, Q>> d;
        for (const auto &[e, v] : psi_terms) {
            if (e[static_cast<std::size_t>(i)] > 0) {
                Exponent f = e;
                f[static_cast<std::size_t>(i)] -= 1;
                d.push_back({f, v * Q(e[static_cast<std::size_t>(i)])});
            }
        }
        return d;
    };

    std::vector<RawMonomial<Q>> raw;
    const Q inv_a = Q(1) / a;
    raw.push_back({{{0, zero, inv_a}}, 2, zero});
    for (int i = 0; i < n; ++i) {
        Exponent xi = zero;
        xi[static_cast<std::size_t>(i)] = 2;
        raw.push_back({{{0, zero, Q(-inv_a)}}, 0, xi});
    }
    if (n > 0) {
        const int i = static_cast<int>(rng() % static_cast<unsigned>(n));
        const Q b = sparse_q();
        const Q g = sparse_q();
        const int j = static_cast<int>(rng() % static_cast<unsigned>(n));
        // (xi_i + psi_i tau)(b tau + g xi_j)
        raw.push_back({{{0, zero, b}}, 1, unit(n, i)});
        Exponent xij = unit(n, i);
        xij[static_cast<std::size_t>(j)] += 1;
        raw.push_back({{{0, zero, g}}, 0, xij});
        raw.push_back({coeff_of(d_psi(i), b, 0), 2, zero});
        raw.push_back({coeff_of(d_psi(i), g, 0), 1, unit(n, j)});
    }
    if (const Q r = sparse_q(); r != 0) {
        // r (t - psi) tau^2
        auto c = coeff_of(psi_terms, Q(-r), 0);
        c.emplace_back(1, zero, r);
        raw.push_back({c, 2, zero});
    }
    const auto monos = low_monomials(n);
    auto random_coeff = [&] {
        std::vector<std::tuple<int, Exponent, Q>> c;
        for (const auto &[j, e] : monos) {
            if (const Q v = sparse_q(); v != 0) {
                c.emplace_back(j, e, v);
            }
        }
        return c;
    };
    raw.push_back({random_coeff(), 1, zero});
    for (int i = 0; i < n; ++i) {
        raw.push_back({random_coeff(), 0, unit(n, i)});
    }
    raw.push_back({random_coeff(), 0, zero});

    std::vector<std::pair<Exponent, Q>> v0_terms;
    for (const auto &[j, e] : monos) {
        if (j == 0) {
            v0_terms.push_back({e, sparse_q()});
        }
    }
    return {decompose_homogeneous(frame, raw, 1), XSeries<Q>::from_terms(frame, psi_terms), a,
            XSeries<Q>::from_terms(frame, v0_terms)};
}

std::vector<RandomProblem> random_problems()
{
    std::mt19937 rng(20240917);
    std::vector<RandomProblem> out;
    for (int i = 0; i < 50; ++i) {
        out.push_back(random_problem(rng, i % 3));
    }
    return out;
}

// ---- ODE oracles for u'' = (u')^2 + 1 --------------------------------------

// Coefficient matching on u = -log t + sum v_k t^k: v_k is the root of the
// (affine in v_k) t^(k-2) coefficient of u'' - (u')^2 - 1.
std::vector<Q> ode_brute_force(int K)
{
    std::vector<Q> v(static_cast<std::size_t>(K + 1), Q(0));
    auto coefficient = [&](int k) {
        // p[i] is the t^(i-1) coefficient of u'
        std::vector<Q> p(static_cast<std::size_t>(K + 1), Q(0));
        p[0] = Q(-1);
        for (int i = 1; i <= K; ++i) {
            p[static_cast<std::size_t>(i)] = Q(i) * v[static_cast<std::size_t>(i)];
        }
        Q c = Q(k - 1) * p[static_cast<std::size_t>(k)];
        for (int i = 0; i <= k; ++i) {
            c -= p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(k - i)];
        }
        return k == 2 ? Q(c - 1) : c;
    };
    for (int k = 1; k <= K; ++k) {
        v[static_cast<std::size_t>(k)] = 0;
        const Q r0 = coefficient(k);
        v[static_cast<std::size_t>(k)] = 1;
        const Q r1 = coefficient(k);
        v[static_cast<std::size_t>(k)] = -r0 / (r1 - r0);
    }
    return v;
}

// The closed form u = -log sin t: v = -log(sin t / t).
std::vector<Q> ode_closed_form(int K)
{
    std::vector<Q> s(static_cast<std::size_t>(K + 1), Q(0)), L(static_cast<std::size_t>(K + 1), Q(0));
    Q fact(1);
    for (int k = 0; 2 * k <= K; ++k) {
        if (k > 0) {
            fact *= Q((2 * k) * (2 * k + 1));
        }
        s[static_cast<std::size_t>(2 * k)] = Q(k % 2 == 0 ? 1 : -1) / fact;
    }
    // s L' = s'
    for (int k = 1; k <= K; ++k) {
        Q acc = Q(k) * s[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) {
            acc -= Q(j) * L[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k - j)];
        }
        L[static_cast<std::size_t>(k)] = acc / Q(k);
    }
    for (auto &c : L) {
        c = -c;
    }
    return L;
}

// ---- criteria --------------------------------------------------------------

Outcome criterion1()
{
    Outcome o;
    Stopwatch clock;
    const auto p = load("log_prototype.json");
    const auto stored = solve_problem<double>(p);
    const auto ver = verify_solution(stored);
    const double t = clock.seconds();
    o.require(stored.solution.order() == 8, "K != 8");
    o.require(max_v(stored.solution) < 1e-14, "max |v_k| = " + fmt(max_v(stored.solution)));
    o.require(ver.report.samples.size() == 30, "grid has " + std::to_string(ver.report.samples.size()) + " points");
    o.require(max_sample(ver.report) < 1e-12, "max residual " + fmt(max_sample(ver.report)));
    o.require(ver.passed(), "verification failed");
    o.require(t < 1.0, "runtime " + fmt(t) + " s");
    o.detail = o.pass ? "max |v| " + fmt(max_v(stored.solution)) + ", max residual " + fmt(max_sample(ver.report)) +
                            ", " + fmt(t) + " s"
                      : o.detail;
    return o;
}

Outcome criterion2()
{
    Outcome o;
    std::string summary;
    for (const auto &[name, m] : {std::pair{"fractional_m2.json", 2}, std::pair{"fractional_m3.json", 3}}) {
        Stopwatch clock;
        const auto p = load(name);
        const auto frame = problem_frame<double>(p);
        const auto h = make_hypersurface(resolve_psi<double>(p, frame));
        const auto r = check_higher_conditions(h, problem_nonlinearity<double>(p, frame), to_scalar<double>(p.a), m);
        const auto stored = solve_problem<double>(p);
        const auto ver = verify_solution(stored);
        const double t = clock.seconds();
        const double e = ver.report.fitted_blowup_exponent;
        const std::string tag = "m=" + std::to_string(m) + ": ";
        o.require(r.top.max_abs() < 1e-12 && r.sub.max_abs() < 1e-12,
                  tag + "condition residuals " + fmt(r.top.max_abs()) + ", " + fmt(r.sub.max_abs()));
        o.require(max_v(stored.solution) < 1e-12, tag + "max |v| " + fmt(max_v(stored.solution)));
        o.require(ver.report.blowup_fit.valid && std::abs(e - 1.0 / m) <= 0.05, tag + "blowup exponent " + fmt(e));
        o.require(ver.passed(), tag + "verification failed");
        o.require(t < 1.0, tag + "runtime " + fmt(t) + " s");
        summary += tag + "exponent " + fmt(e) + " ";
    }
    if (o.pass) {
        o.detail = summary;
    }
    return o;
}

Outcome criterion3()
{
    Outcome o;
    Stopwatch clock;
    const auto p = load("forced_ode.json", Arithmetic::rational);
    const auto stored = solve_problem<Q>(p);
    const double t = clock.seconds();
    const auto &v = stored.solution.v;
    auto vk = [&](int k) { return v[k].constant_term(); };
    o.require(vk(2) == Q(1, 6), "v2 = " + format_numeral(vk(2)));
    o.require(vk(3) == 0, "v3 = " + format_numeral(vk(3)));
    o.require(vk(4) == Q(1, 180), "v4 = " + format_numeral(vk(4)));
    const auto brute = ode_brute_force(p.K);
    const auto closed = ode_closed_form(p.K);
    for (int k = 0; k <= p.K; ++k) {
        o.require(vk(k) == brute[static_cast<std::size_t>(k)], "brute-force oracle differs at k=" + std::to_string(k));
        o.require(vk(k) == closed[static_cast<std::size_t>(k)], "closed form differs at k=" + std::to_string(k));
    }
    o.require(t < 1.0, "runtime " + fmt(t) + " s");
    if (o.pass) {
        o.detail = "v2 = 1/6, v3 = 0, v4 = 1/180 exact; oracles agree through k=" + std::to_string(p.K);
    }
    return o;
}

Outcome criterion4()
{
    Outcome o;
    const auto p = load("plane_wave.json", Arithmetic::rational);
    const auto stored = solve_problem<Q>(p);
    const auto &sol = stored.solution;
    const auto ver = verify_solution(stored);
    double gradient = 0;
    for (int i = 0; i < 2; ++i) {
        gradient += std::pow(to_double(sol.psi.coeff(unit(2, i))), 2);
    }
    o.require(std::abs(std::sqrt(gradient) - 0.5) < 1e-15, "|c| != 0.5");
    o.require(sol.a == Q(2), "a != 2");
    o.require(max_v(sol, 1) == 0, "v_k != 0 for some k >= 1");
    o.require(sol.v[0].is_zero() == false && sol.v[0].degree() == 0, "v0 is not a constant");
    o.require(max_sample(ver.report) < 1e-12, "max residual " + fmt(max_sample(ver.report)));
    o.require(ver.slices.vanishes(), "symbolic slices do not vanish");
    if (o.pass) {
        o.detail = "v_k = 0 for k >= 1, max residual " + fmt(max_sample(ver.report));
    }
    return o;
}

Outcome criterion5()
{
    Outcome o;
    Stopwatch clock;
    int passed = 0;
    const auto set = random_problems();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto &rp = set[i];
        try {
            const auto sol = solve(build_log_reduction(rp.f, make_hypersurface(rp.psi), rp.a, 6), rp.v0, 6);
            const auto r = symbolic_residual(sol, rp.f, 4);
            bool zero = r.through_order == 4 && r.log_free;
            for (const auto &s : r.slices) {
                zero = zero && s.is_zero();
            }
            o.require(zero, "problem " + std::to_string(i) + " has a nonzero slice");
            passed += zero ? 1 : 0;
        } catch (const std::exception &e) {
            o.require(false, "problem " + std::to_string(i) + ": " + e.what());
        }
    }
    const double t = clock.seconds();
    o.require(t < 60.0, "runtime " + fmt(t) + " s");
    if (o.pass) {
        o.detail = std::to_string(passed) + "/50 exact zero through order 4, " + fmt(t) + " s";
    }
    return o;
}

Outcome criterion6()
{
    Outcome o;
    std::map<int, double> slope;
    for (int K : {6, 8}) {
        const auto stored = solve_problem<double>(load("generic_log.json", std::nullopt, K));
        const auto ver = verify_solution(stored);
        o.require(ver.report.residual_fit.valid, "K=" + std::to_string(K) + ": no slope fit");
        slope[K] = ver.report.fitted_slope;
        o.require(slope[K] >= K - 2 - 0.5, "K=" + std::to_string(K) + ": slope " + fmt(slope[K]));
    }
    const double diff = slope[8] - slope[6];
    o.require(std::abs(diff - 2.0) <= 0.5, "slope difference " + fmt(diff));
    if (o.pass) {
        o.detail = "slopes " + fmt(slope[6]) + " (K=6), " + fmt(slope[8]) + " (K=8), difference " + fmt(diff);
    }
    return o;
}

Outcome criterion7()
{
    Outcome o;
    PipelineOptions opt;
    opt.branch = "+";
    const auto p = apply_overrides(load_problem(problems / "eikonal.json"), opt);
    const auto frame = problem_frame<double>(p);
    const auto psi = resolve_psi<double>(p, frame);
    const auto expected =
        XSeries<double>::from_terms(frame, {{unit(2, 0), std::sqrt(1 - 0.5 - 0.0625)}, {unit(2, 1), 0.25}});
    const double err = (psi - expected).max_abs();
    o.require(p.n == 2 && p.a.value == 0.5, "unexpected problem data");
    o.require(err < 1e-12, "coefficient error " + fmt(err));
    const auto residual = check_pseudo_eikonal(make_hypersurface(psi), problem_nonlinearity<double>(p, frame).part(2),
                                               to_scalar<double>(p.a))
                              .truncated(p.D - 1);
    o.require(residual.max_abs() < 1e-12, "pseudo-Eikonal residual " + fmt(residual.max_abs()));
    if (o.pass) {
        o.detail = "coefficient error " + fmt(err) + ", residual through degree " + std::to_string(p.D - 1) + " " +
                   fmt(residual.max_abs());
    }
    return o;
}

Outcome criterion8()
{
    Outcome o;
    const auto p = load("elliptic.json", Arithmetic::rational);
    const auto stored = solve_problem<Q>(p);
    const auto ver = verify_solution(stored);
    o.require(p.n == 3 && p.a.exact == Q(17, 10), "unexpected problem data");
    o.require(max_v(stored.solution) == 0, "v is not zero");
    o.require(max_sample(ver.report) < 1e-12, "max residual " + fmt(max_sample(ver.report)));
    double u_err = 0;
    for (const auto &s : ver.report.samples) {
        u_err = std::max(u_err, std::abs(s.u + 1.7 * std::log(s.T)) / (1 + std::abs(s.u)));
    }
    o.require(u_err < 1e-14, "u differs from -a log x1 by " + fmt(u_err));
    if (o.pass) {
        o.detail = "v = 0, max residual " + fmt(max_sample(ver.report)) + " over " +
                   std::to_string(ver.report.samples.size()) + " points";
    }
    return o;
}

Outcome criterion9()
{
    Outcome o;
    const auto p = load("negative_side_curved.json");
    const auto frame = problem_frame<double>(p);
    const auto f = problem_nonlinearity<double>(p, frame);
    o.require(check_time_reversal(f.part(2)), "tau^2 - |xi|^2 fails the time-reversal check");
    const auto stored = solve_problem<double>(p);
    o.require(stored.solution.time_sign == -1, "solution is not on t < psi");
    const auto ver = verify_solution(stored);
    o.require(!ver.report.samples.empty(), "no samples");
    o.require(max_sample(ver.report) < 1e-10, "max residual " + fmt(max_sample(ver.report)));
    o.require(ver.passed(), "verification failed");

    const auto bad = load("time_reversal_bad.json");
    o.require(!check_time_reversal(problem_nonlinearity<double>(bad, problem_frame<double>(bad)).part(2)),
              "tau xi_1 accepted");
    PipelineOptions opt;
    opt.out_dir = std::filesystem::temp_directory_path() / "swf_acceptance_tr";
    std::ostringstream out, err;
    const int code = run_command(Command::all, problems / "time_reversal_bad.json", opt, out, err);
    o.require(code == 3, "tau xi_1 exit code " + std::to_string(code));
    if (o.pass) {
        o.detail = "negative-side max residual " + fmt(max_sample(ver.report)) + ", tau xi_1 exits 3";
    }
    return o;
}

// T^-2 (log) or s^-(m+1) (fractional) slice and the reduction's certificate.
template <class S>
std::pair<double, bool> certificate(const ProblemSpec &p)
{
    const auto eq = equation_of<S>(p);
    const auto stored = solve_problem<S>(p);
    const auto slices = symbolic_residual(stored.solution, stored_nonlinearity(stored));
    const double size = std::max(eq.cancellation_certificate().max_abs(), slices.at(slices.lowest).max_abs());
    return {size, eq.cancellation_certificate().is_zero() && slices.at(slices.lowest).is_zero()};
}

Outcome criterion10()
{
    Outcome o;
    int exact = 0, rounded = 0;
    for (const char *name : {"log_prototype.json", "fractional_m2.json", "fractional_m3.json", "forced_ode.json",
                             "plane_wave.json", "generic_log.json", "eikonal.json", "elliptic.json",
                             "negative_side_curved.json"}) {
        const auto p = load(name);
        const bool irrational = p.mode == Regime::fractional || std::holds_alternative<EikonalDirective>(p.psi);
        if (!irrational) {
            // rational data: the certificate must be the zero series exactly
            PipelineOptions opt;
            opt.arithmetic = Arithmetic::rational;
            const auto [size, zero] = certificate<Q>(apply_overrides(p, opt));
            o.require(zero, std::string(name) + ": certificate " + fmt(size));
            ++exact;
        } else {
            // irrational a or surface: zero up to the rounding of the data
            const auto [size, zero] = certificate<double>(p);
            o.require(size < 1e-12, std::string(name) + ": certificate " + fmt(size));
            ++rounded;
        }
    }
    for (const auto &rp : random_problems()) {
        const auto eq = build_log_reduction(rp.f, make_hypersurface(rp.psi), rp.a, 6);
        const auto sol = solve(eq, rp.v0, 6);
        const auto slices = symbolic_residual(sol, rp.f, 4);
        o.require(eq.cancellation_certificate().is_zero() && slices.at(-2).is_zero(), "random problem certificate");
        ++exact;
    }
    if (o.pass) {
        o.detail = std::to_string(exact) + " exact zero, " + std::to_string(rounded) + " below 1e-12 (irrational data)";
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9, criterion10};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
