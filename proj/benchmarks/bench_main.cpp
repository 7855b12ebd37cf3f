#include <benchmark/benchmark.h>

#include <levydiv/dividend_ruin_delay.hpp>
#include <levydiv/parisian_ruin.hpp>
#include <levydiv/scale.hpp>
#include <levydiv/simulate.hpp>

using namespace levydiv;

namespace {

const RiskModel cl = CramerLundbergExp{2.0, 1.0, 1.0};
const RiskModel bm = BrownianDrift{1.0, 1.0};

void BM_ScaleW(benchmark::State& state) {
    const ScaleEval w(cl, 0.1);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(w.W(1.0 + x));
        x = x < 5.0 ? x + 1e-6 : 0.0;
    }
}
BENCHMARK(BM_ScaleW);

void BM_ParisianV(benchmark::State& state) {
    // memoized form: steady-state cost of one closed-form evaluation
    const ParisianSpec z1{1.0};
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parisian_V(cl, 0.1, z1, x));
        x = x < 5.0 ? x + 1e-6 : 0.5;
    }
}
BENCHMARK(BM_ParisianV);

void BM_SurvivalFactorQuadrature(benchmark::State& state) {
    const auto tilted =
        std::get<CramerLundbergExp>(tilt(cl, phi(cl, 0.1).phi_q));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cl_survival_factor(tilted, 1.0, tilted.claim_rate));
}
BENCHMARK(BM_SurvivalFactorQuadrature);

void BM_OptimalBarrier(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(optimal_barrier(cl, 0.1, ParisianSpec{1.0}));
}
BENCHMARK(BM_OptimalBarrier);

void BM_SimulateRuinDelayCL(benchmark::State& state) {
    SimConfig cfg;
    cfg.n_paths = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 1;
    const ParisianSpec z1{1.0};
    const BarrierPolicy pol{2.5};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate_ruin_delay(cl, 0.1, z1, pol, 1.0, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateRuinDelayCL)->Arg(1000)->Arg(4000);

void BM_SimulateRuinDelayBrownian(benchmark::State& state) {
    SimConfig cfg;
    cfg.n_paths = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 1;
    cfg.euler_step = 1e-3;
    cfg.horizon_epsilon = 1e-2;
    const ParisianSpec z1{1.0};
    const BarrierPolicy pol{2.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate_ruin_delay(bm, 0.05, z1, pol, 1.0, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateRuinDelayBrownian)->Arg(200);

} // namespace

BENCHMARK_MAIN();
