#include <swf/pipeline.hpp>

#include <cstdlib>
#include <ostream>

#include <json.hpp>

namespace swf
{

using Json = nlohmann::ordered_json;

namespace
{

Json real(double x)
{
    return std::isfinite(x) ? Json(format_numeral(x)) : Json(nullptr);
}

template <class S>
FramePtr<S> prime_frame(const FramePtr<S> &frame)
{
    std::vector<S> base(frame->base_point.begin() + 1, frame->base_point.end());
    return make_frame<S>(frame->variables - 1, frame->max_degree, std::move(base));
}

template <class S>
double norm(const XSeries<S> &x)
{
    return x.max_abs();
}

} // namespace

ProblemSpec apply_overrides(ProblemSpec p, const PipelineOptions &opt)
{
    if (opt.order) {
        if (*opt.order < 0) {
            fail(ErrorKind::schema, "--order must be non-negative");
        }
        p.K = *opt.order;
    }
    if (opt.arithmetic) {
        p.arithmetic = *opt.arithmetic;
    }
    if (opt.branch) {
        auto *d = std::get_if<EikonalDirective>(&p.psi);
        if (d == nullptr) {
            fail(ErrorKind::schema, "--branch needs a psi solve directive in the problem");
        }
        if (*opt.branch != "+" && *opt.branch != "-") {
            fail(ErrorKind::schema, "--branch must be + or -");
        }
        d->branch = *opt.branch;
        d->slope.reset();
    }
    if (opt.grid) {
        p.verify = parse_grid_option(*opt.grid, p.verify);
    }
    return p;
}

template <class S>
XSeries<S> resolve_psi(const ProblemSpec &p, const FramePtr<S> &frame)
{
    if (const auto *terms = std::get_if<std::vector<PolyTerm>>(&p.psi)) {
        return to_series(frame, *terms);
    }
    const auto &d = std::get<EikonalDirective>(p.psi);
    const auto f2 = d.f2 ? to_nonlinearity(frame, *d.f2, 1, p.max_t_degree) : problem_nonlinearity<S>(p, frame);
    const auto sub = prime_frame(frame);
    const auto init = to_series(sub, d.init);
    const auto branch = d.slope ? Branch<S>::from_slope(to_scalar<S>(*d.slope)) : Branch<S>::sign(d.branch == "+");
    return solve_pseudo_eikonal(f2.part(2), to_scalar<S>(p.a), init, branch, frame);
}

template <class S>
ConditionReport check_problem(const ProblemSpec &p)
{
    const auto frame = problem_frame<S>(p);
    const S a = to_scalar<S>(p.a);
    ConditionReport r;
    const auto psi = resolve_psi<S>(p, frame);
    if (p.mode == Regime::elliptic) {
        const auto h = make_hypersurface(psi, -1);
        r.characteristic = to_double(h.Psi.constant_term());
        if (a == 0) {
            r.passed = false;
            r.failure = "the blowup coefficient a must be nonzero";
        }
        return r;
    }
    const auto f = problem_nonlinearity<S>(p, frame);
    Hypersurface<S> h = [&] {
        try {
            return make_hypersurface(psi);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::characteristic) {
                throw;
            }
            r.passed = false;
            r.failure = e.what();
            return make_hypersurface(XSeries<S>(frame));
        }
    }();
    if (!r.passed) {
        r.characteristic = 0;
        return r;
    }
    r.characteristic = to_double(h.Psi.constant_term());
    if (p.mode == Regime::fractional) {
        const auto res = check_higher_conditions(h, f, a, p.m);
        r.higher_top = norm(res.top);
        r.higher_sub = norm(res.sub);
        if (!vanishes(res.top)) {
            r.passed = false;
            r.failure = "top-degree condition fails: " + describe_residual(res.top);
        } else if (!vanishes(res.sub)) {
            r.passed = false;
            r.failure = "f_m must vanish on the surface: " + describe_residual(res.sub);
        }
        return r;
    }
    const auto res = check_pseudo_eikonal(h, f.part(2), a);
    r.pseudo_eikonal = norm(res);
    if (!vanishes(res)) {
        r.passed = false;
        r.failure = "pseudo-Eikonal condition fails: " + describe_residual(res);
    }
    if (p.mode == Regime::negative_side) {
        r.time_reversal = check_time_reversal(f.part(2));
        if (!*r.time_reversal && r.passed) {
            r.passed = false;
            r.failure = "f2 is not symmetric under tau -> -tau";
        }
    }
    return r;
}

template <class S>
ReducedEquation<S> build_equation(const ProblemSpec &p, const FramePtr<S> &frame, const XSeries<S> &psi)
{
    const S a = to_scalar<S>(p.a);
    switch (p.mode) {
        case Regime::elliptic:
            return build_elliptic_reduction(psi, a, p.K);
        case Regime::fractional:
            return build_fractional_reduction(problem_nonlinearity<S>(p, frame), make_hypersurface(psi), a, p.m, p.K);
        case Regime::negative_side:
            return build_negative_side(problem_nonlinearity<S>(p, frame), make_hypersurface(psi), a, p.K);
        case Regime::log:
            break;
    }
    return build_log_reduction(problem_nonlinearity<S>(p, frame), make_hypersurface(psi), a, p.K);
}

template <class S>
StoredSolution<S> solve_problem(const ProblemSpec &p)
{
    const auto frame = problem_frame<S>(p);
    const auto psi = resolve_psi<S>(p, frame);
    const auto eq = build_equation<S>(p, frame, psi);
    std::optional<XSeries<S>> v0;
    if (p.has_v0) {
        v0 = to_series(frame, p.v0);
    }
    return {solve(eq, v0, p.K), p.f, p.max_t_degree, p.verify};
}

template <class S>
Nonlinearity<S> stored_nonlinearity(const StoredSolution<S> &s)
{
    const auto &sol = s.solution;
    if (sol.regime == Regime::elliptic) {
        return elliptic_nonlinearity(sol.frame(), sol.a);
    }
    return to_nonlinearity(sol.frame(), s.f, sol.regime == Regime::fractional ? sol.m : 1, s.max_t_degree);
}

template <class S>
Verification<S> verify_solution(const StoredSolution<S> &s, const std::optional<GridOptions> &grid)
{
    const auto &sol = s.solution;
    const auto f = stored_nonlinearity(s);
    Verification<S> v{symbolic_residual(sol, f), {}, false, false, residual_tolerance(sol)};
    v.symbolic_ok = v.slices.vanishes(v.tolerance);

    std::vector<double> base;
    for (const auto &b : sol.frame()->base_point) {
        base.push_back(to_double(b));
    }
    const GridOptions &g = grid ? *grid : s.grid;
    GridSpec spec = GridSpec::standard(base);
    spec.trust_region = g.trust_region;
    if (!g.standard) {
        if (!g.T_values.empty()) {
            spec.T_values = g.T_values;
        }
        if (!g.x_points.empty()) {
            spec.x_points = g.x_points;
        }
    }
    v.report = numeric_residual(sol, f, spec);
    const double need = static_cast<double>(v.slices.through_order) / sol.denominator() - 0.5;
    v.numeric_ok = v.report.all_at_noise_floor || !v.report.residual_fit.valid || v.report.fitted_slope >= need;
    return v;
}

Command parse_command(std::string_view name)
{
    if (name == "check") {
        return Command::check;
    }
    if (name == "eikonal") {
        return Command::eikonal;
    }
    if (name == "solve") {
        return Command::solve;
    }
    if (name == "verify") {
        return Command::verify;
    }
    if (name == "all") {
        return Command::all;
    }
    fail(ErrorKind::schema, "unknown command '" + std::string(name) + "'");
}

namespace
{

std::filesystem::path output_dir(const PipelineOptions &opt)
{
    if (!opt.out_dir.empty()) {
        return opt.out_dir;
    }
    if (const char *env = std::getenv("SWF_OUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

Json condition_json(const ConditionReport &r)
{
    Json j{{"passed", r.passed}, {"characteristic", real(r.characteristic)}};
    if (r.pseudo_eikonal) {
        j["pseudo_eikonal_residual"] = real(*r.pseudo_eikonal);
    }
    if (r.higher_top) {
        j["higher_top_residual"] = real(*r.higher_top);
    }
    if (r.higher_sub) {
        j["higher_sub_residual"] = real(*r.higher_sub);
    }
    if (r.time_reversal) {
        j["time_reversal"] = *r.time_reversal;
    }
    if (!r.passed) {
        j["reason"] = r.failure;
    }
    return j;
}

template <class S>
int verify_and_write(const StoredSolution<S> &stored, const std::filesystem::path &dir, const std::optional<GridOptions> &grid,
                     Json &summary)
{
    const auto v = verify_solution(stored, grid);
    write_text(dir / "residual.csv", write_residual_csv(v.report, stored.solution.frame()->variables));
    write_text(dir / "fit.json", write_fit_json(v.report, v.symbolic_ok, v.numeric_ok, v.slices.through_order));
    summary["symbolic_pass"] = v.symbolic_ok;
    summary["numeric_pass"] = v.numeric_ok;
    summary["fitted_slope"] = real(v.report.fitted_slope);
    summary["fitted_blowup_exponent"] = real(v.report.fitted_blowup_exponent);
    summary["max_residual"] = real(v.report.max_residual);
    summary["artifacts"].push_back((dir / "residual.csv").string());
    summary["artifacts"].push_back((dir / "fit.json").string());
    if (!v.passed()) {
        fail(ErrorKind::numerical, v.symbolic_ok ? "numeric residual does not decay at the expected rate"
                                                 : "symbolic residual slices do not vanish");
    }
    return 0;
}

template <class S>
int run_problem(Command cmd, const ProblemSpec &p, const std::filesystem::path &dir, std::ostream &out)
{
    Json summary{{"command", cmd == Command::check     ? "check"
                             : cmd == Command::eikonal ? "eikonal"
                             : cmd == Command::solve   ? "solve"
                                                       : "all"},
                 {"mode", to_string(p.mode)},
                 {"arithmetic", to_string(p.arithmetic)},
                 {"artifacts", Json::array()}};
    struct Flush {
        Json &s;
        std::ostream &o;
        ~Flush()
        {
            o << s.dump() << '\n';
        }
    };
    if (cmd == Command::check) {
        const auto r = check_problem<S>(p);
        summary["conditions"] = condition_json(r);
        out << summary.dump() << '\n';
        if (!r.passed) {
            fail(ErrorKind::condition, r.failure);
        }
        return 0;
    }
    if (cmd == Command::eikonal) {
        if (!std::holds_alternative<EikonalDirective>(p.psi)) {
            fail(ErrorKind::schema, "eikonal needs a psi solve directive in the problem");
        }
        const auto frame = problem_frame<S>(p);
        const auto psi = resolve_psi<S>(p, frame);
        const auto f = problem_nonlinearity<S>(p, frame);
        const auto res = check_pseudo_eikonal(make_hypersurface(psi), f.part(2), to_scalar<S>(p.a));
        write_text(dir / "psi.json", write_series_json(psi, "psi"));
        summary["artifacts"].push_back((dir / "psi.json").string());
        summary["pseudo_eikonal_residual"] = real(res.truncated(p.D - 1).max_abs());
        out << summary.dump() << '\n';
        return 0;
    }
    const auto stored = solve_problem<S>(p);
    write_text(dir / "solution.json", write_solution_json(stored));
    summary["artifacts"].push_back((dir / "solution.json").string());
    summary["order"] = p.K;
    if (cmd == Command::solve) {
        out << summary.dump() << '\n';
        return 0;
    }
    Flush flush{summary, out};
    return verify_and_write(stored, dir, std::nullopt, summary);
}

template <class S>
int run_verify(std::string_view text, const PipelineOptions &opt, const std::filesystem::path &dir, std::ostream &out)
{
    const auto stored = read_solution_json<S>(text);
    std::optional<GridOptions> grid;
    if (opt.grid) {
        grid = parse_grid_option(*opt.grid, stored.grid);
    }
    Json summary{{"command", "verify"},
                 {"mode", to_string(stored.solution.regime)},
                 {"arithmetic", to_string(arithmetic_of_v<S>)},
                 {"artifacts", Json::array()}};
    try {
        verify_and_write(stored, dir, grid, summary);
    } catch (...) {
        out << summary.dump() << '\n';
        throw;
    }
    out << summary.dump() << '\n';
    return 0;
}

} // namespace

int run_command(Command cmd, const std::filesystem::path &input, const PipelineOptions &opt, std::ostream &out,
                std::ostream &err)
{
    const auto dir = output_dir(opt);
    try {
        std::filesystem::create_directories(dir);
        if (cmd == Command::verify) {
            const std::string text = read_text(input);
            if (solution_arithmetic(text) == Arithmetic::rational) {
                return run_verify<Rational>(text, opt, dir, out);
            }
            return run_verify<double>(text, opt, dir, out);
        }
        const ProblemSpec p = apply_overrides(load_problem(input), opt);
        if (p.arithmetic == Arithmetic::rational) {
            return run_problem<Rational>(cmd, p, dir, out);
        }
        return run_problem<double>(cmd, p, dir, out);
    } catch (const Error &e) {
        const int code = exit_code(e.kind());
        const Json failure{{"status", "failure"}, {"kind", to_string(e.kind())}, {"exit_code", code}, {"reason", e.what()}};
        try {
            write_text(dir / "failure.json", failure.dump(2) + "\n");
        } catch (const std::exception &) {
        }
        err << failure.dump() << '\n';
        return code;
    } catch (const std::exception &e) {
        const Json failure{{"status", "failure"}, {"kind", "internal"}, {"exit_code", 4}, {"reason", e.what()}};
        try {
            write_text(dir / "failure.json", failure.dump(2) + "\n");
        } catch (const std::exception &) {
        }
        err << failure.dump() << '\n';
        return 4;
    }
}

#define SWF_INSTANTIATE(S)                                                                                             \
    template ConditionReport check_problem<S>(const ProblemSpec &);                                                    \
    template XSeries<S> resolve_psi(const ProblemSpec &, const FramePtr<S> &);                                         \
    template ReducedEquation<S> build_equation(const ProblemSpec &, const FramePtr<S> &, const XSeries<S> &);          \
    template StoredSolution<S> solve_problem<S>(const ProblemSpec &);                                                  \
    template Nonlinearity<S> stored_nonlinearity(const StoredSolution<S> &);                                           \
    template Verification<S> verify_solution(const StoredSolution<S> &, const std::optional<GridOptions> &);

SWF_INSTANTIATE(double)
SWF_INSTANTIATE(Rational)

#undef SWF_INSTANTIATE

} // namespace swf
