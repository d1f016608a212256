#include <benchmark/benchmark.h>

#include <random>

#include "stlrobust/falsifier/falsifier.hpp"
#include "stlrobust/optim/cmaes.hpp"
#include "stlrobust/stl/evaluate.hpp"
#include "stlrobust/stl/parser.hpp"
#include "stlrobust/systems/registry.hpp"
#include "test_support.hpp"

using namespace stlrobust;

namespace {

// Nested temporal operators over a signal of state.range(0) samples.
const char* kNested = "G[0,2] ((s > -2) U[0,1] F[0,1] (q < 1 and abs(r) < 2.5))";

void BM_Evaluate(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto sig = testing::random_signal(rng, 0.01, static_cast<std::size_t>(state.range(0)));
  const auto f = stl::parse_formula(kNested);
  const auto span = sig.length() - f->horizon_steps(0.01);
  for (auto _ : state) benchmark::DoNotOptimize(stl::evaluate_trace(*f, sig, 0, span));
}
BENCHMARK(BM_Evaluate)->Arg(500)->Arg(2000);

void BM_EvaluateReference(benchmark::State& state) {
  // One start time only; the naive recursion is quadratic in each window.
  std::mt19937_64 rng(1);
  const auto sig = testing::random_signal(rng, 0.01, static_cast<std::size_t>(state.range(0)));
  const auto f = stl::parse_formula(kNested);
  for (auto _ : state) benchmark::DoNotOptimize(stl::evaluate_reference(*f, sig, 0));
}
BENCHMARK(BM_EvaluateReference)->Arg(500)->Arg(2000);

void BM_Simulate(benchmark::State& state, const char* id) {
  auto plant = systems::make_plant(id);
  const auto inst = systems::instantiate(plant, plant->deviation_domain().zero());
  const auto scenario = plant->scenario_space().center();
  for (auto _ : state) benchmark::DoNotOptimize(systems::simulate(inst, scenario));
}
BENCHMARK_CAPTURE(BM_Simulate, cartpole, "cartpole");
BENCHMARK_CAPTURE(BM_Simulate, watertank, "watertank");
BENCHMARK_CAPTURE(BM_Simulate, acc, "acc");

void BM_CmaEsSphere(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const optim::SearchBox box(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0));
  for (auto _ : state) {
    optim::CmaEs opt(box, 3, 400);
    while (opt.remaining() > 0) {
      const auto batch = opt.ask();
      std::vector<double> v;
      for (const auto& x : batch) {
        double s = 0.0;
        for (double xi : x) s += (xi - 0.7) * (xi - 0.7);
        v.push_back(s);
      }
      opt.tell(batch, v);
    }
    benchmark::DoNotOptimize(opt.best());
  }
}
BENCHMARK(BM_CmaEsSphere)->Arg(2)->Arg(8);

void BM_LowerFalsify(benchmark::State& state) {
  auto plant = systems::make_plant("cartpole");
  const auto inst = systems::instantiate(plant, systems::Deviation{{1.0, 20.0}});
  const auto phi = stl::parse_formula(plant->default_specification());
  for (auto _ : state) benchmark::DoNotOptimize(falsifier::lower_falsify(inst, *phi, 50, 1));
}
BENCHMARK(BM_LowerFalsify)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
