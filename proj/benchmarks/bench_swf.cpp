#include <random>

#include <benchmark/benchmark.h>

#include <swf/pipeline.hpp>

using namespace swf;

namespace
{

template <class S>
XSeries<S> random_series(const FramePtr<S> &frame, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    std::vector<S> c(frame->basis->size());
    for (auto &x : c) {
        x = S(num(rng)) / S(den(rng));
    }
    c[0] = S(2);
    return XSeries<S>::from_dense(frame, std::move(c), frame->max_degree, true);
}

template <class S>
void BM_multiply(benchmark::State &state)
{
    const auto frame = make_frame<S>(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                     std::vector<S>(static_cast<std::size_t>(state.range(0)), S(0)));
    const auto a = random_series(frame, 1), b = random_series(frame, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}

template <class S>
void BM_reciprocal(benchmark::State &state)
{
    const auto frame = make_frame<S>(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                     std::vector<S>(static_cast<std::size_t>(state.range(0)), S(0)));
    const auto a = random_series(frame, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a.reciprocal());
    }
}

// Full reduction and recursion for a generic two-variable log problem.
template <class S>
void BM_solve(benchmark::State &state)
{
    ProblemSpec p = parse_problem(R"({
        "n": 2, "mode": "log", "a": 1, "base_point": ["0.1", "-0.2"], "truncation": {"D": 8, "K": 8},
        "f": [{"c": 1, "tau": 2}, {"c": -1, "xi": [2, 0]}, {"c": -1, "xi": [0, 2]},
              {"coeff": [{"x": [1, 0], "c": 1}, {"t": 1, "c": "1/2"}], "tau": 1},
              {"coeff": [{"x": [0, 1], "c": 1}, {"t": 2, "c": 1}]}],
        "psi": [{"x": [1, 0], "c": "1/5"}, {"x": [0, 2], "c": "1/10"}],
        "v0": [{"x": [1, 0], "c": 1}]})");
    p.K = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_problem<S>(p));
    }
}

} // namespace

BENCHMARK(BM_multiply<double>)->Args({1, 16})->Args({2, 8})->Args({2, 16})->Args({3, 8});
BENCHMARK(BM_multiply<Rational>)->Args({1, 16})->Args({2, 8});
BENCHMARK(BM_reciprocal<double>)->Args({1, 16})->Args({2, 8})->Args({2, 16})->Args({3, 8});
BENCHMARK(BM_reciprocal<Rational>)->Args({1, 16})->Args({2, 8});
BENCHMARK(BM_solve<double>)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_solve<Rational>)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
