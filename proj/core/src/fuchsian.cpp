#include <swf/fuchsian.hpp>

namespace swf
{

template <class S>
RecursionSpec<S> shift_initial_data(const RecursionSpec<S> &spec)
{
    if (spec.equation.regime() == Regime::fractional) {
        fail(ErrorKind::configuration, "the fractional regime has no trace to shift");
    }
    if (!spec.v0 || spec.v0->is_zero()) {
        return spec;
    }
    return {spec.equation.with_trace(*spec.v0), std::nullopt, spec.order};
}

template <class S>
SigmaSeries<S> solve_recursion(const RecursionSpec<S> &spec)
{
    const auto &eq = spec.equation;
    const auto &frame = eq.surface().frame();
    const int K = spec.order;
    if (K < 0 || K > eq.max_order()) {
        fail(ErrorKind::configuration, "recursion order " + std::to_string(K) + " exceeds the prepared order "
                                           + std::to_string(eq.max_order()));
    }
    const int first = eq.first_order();
    std::vector<XSeries<S>> c;
    if (first == 1) {
        c.push_back(spec.v0 ? *spec.v0 : XSeries<S>(frame));
    } else if (spec.v0) {
        fail(ErrorKind::configuration, "the fractional regime takes no initial trace");
    }
    for (int k = first; k <= K; ++k) {
        const S d = eq.divisor(k);
        if (d == 0) {
            fail(ErrorKind::internal, "zero divisor at order " + std::to_string(k));
        }
        const CoefficientView<S> view(c, k);
        c.push_back(eq.rhs_slice(k, view) * (S(1) / d));
    }
    return SigmaSeries<S>(frame, eq.denominator(), K, std::move(c));
}

template <class S>
SingularSolution<S> assemble_solution(const RecursionSpec<S> &spec, const SigmaSeries<S> &v)
{
    const auto &eq = spec.equation;
    SingularSolution<S> sol{eq.regime(), eq.a(), eq.m(), eq.time_sign(), eq.signature(), eq.original_psi(), v,
                            std::nullopt};
    if (eq.regime() != Regime::fractional) {
        if (const auto &offset = eq.trace_offset()) {
            sol.v = v + SigmaSeries<S>::constant(*offset, 1, v.order());
        }
        sol.v0 = sol.v[0];
    }
    return sol;
}

template <class S>
SingularSolution<S> solve(const ReducedEquation<S> &equation, const std::optional<XSeries<S>> &v0, int order)
{
    RecursionSpec<S> spec{equation, v0, order};
    if (equation.regime() != Regime::fractional) {
        spec = shift_initial_data(spec);
    }
    return assemble_solution(spec, solve_recursion(spec));
}

template <class S>
SolutionEvaluator<S>::SolutionEvaluator(const SingularSolution<S> &sol) : m_sol(sol)
{
    const int n = sol.psi.variables();
    for (int i = 0; i < n; ++i) {
        m_psi_i.push_back(sol.psi.partial(i));
        m_psi_ii.push_back(m_psi_i.back().partial(i));
    }
    for (int k = 0; k < sol.v.stored(); ++k) {
        std::vector<XSeries<S>> di, dii;
        for (int i = 0; i < n; ++i) {
            di.push_back(sol.v[k].partial(i));
            dii.push_back(di.back().partial(i));
        }
        m_v_i.push_back(std::move(di));
        m_v_ii.push_back(std::move(dii));
    }
}

template class SolutionEvaluator<double>;
template class SolutionEvaluator<Rational>;

#define SWF_INSTANTIATE(S)                                                                                             \
    template RecursionSpec<S> shift_initial_data(const RecursionSpec<S> &);                                            \
    template SigmaSeries<S> solve_recursion(const RecursionSpec<S> &);                                                 \
    template SingularSolution<S> assemble_solution(const RecursionSpec<S> &, const SigmaSeries<S> &);                  \
    template SingularSolution<S> solve(const ReducedEquation<S> &, const std::optional<XSeries<S>> &, int);

SWF_INSTANTIATE(double)
SWF_INSTANTIATE(Rational)

#undef SWF_INSTANTIATE

} // namespace swf
