#include <benchmark/benchmark.h>

#include "gwdecohere/gwdecohere.hpp"

namespace {

void BM_IntegralLorentzian(benchmark::State& state) {
    const double gt = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gwd::dimensionless_integral(gt, 1e5, gwd::FilterShape::Lorentzian).value);
    }
}
BENCHMARK(BM_IntegralLorentzian)->Arg(1)->Arg(100)->Arg(100000000);

void BM_IntegralExplicitTail(benchmark::State& state) {
    gwd::QuadratureSettings s;
    s.tail_policy = gwd::TailPolicy::ExplicitToCutoff;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gwd::dimensionless_integral(1.0, 1e4, gwd::FilterShape::Lorentzian, s).value);
    }
}
BENCHMARK(BM_IntegralExplicitTail);

void BM_CriticalRadiusSolve(benchmark::State& state) {
    gwd::CriticalRadiusRequest req;
    req.background.omega_gw = 1e-15;
    req.bandwidth = state.range(0) == 0 ? gwd::BandwidthModel{gwd::FixedGammaTau{1.0}}
                                        : gwd::BandwidthModel{gwd::CrossCorrelated{}};
    req.method = gwd::RootFind{};
    for (auto _ : state) benchmark::DoNotOptimize(gwd::critical_radius(req).radius);
}
BENCHMARK(BM_CriticalRadiusSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_MonteCarlo(benchmark::State& state) {
    const gwd::SphereSpec sphere{3e-3, 2329.0};
    gwd::InterferometerConfig cfg;
    cfg.arm_half_separation = 3e-3;
    gwd::GWBackground bg;
    bg.omega_gw = 1e-15;
    bg.omega_c = 1e4 / cfg.tau();
    const auto ens = gwd::make_log_ensemble(1e-4 / cfg.tau(), bg.omega_c, static_cast<std::size_t>(state.range(0)),
                                            bg, {}, 1, 1000);
    for (auto _ : state) benchmark::DoNotOptimize(gwd::mc_phase_samples(ens, sphere, cfg, {}, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 1000);
}
BENCHMARK(BM_MonteCarlo)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
