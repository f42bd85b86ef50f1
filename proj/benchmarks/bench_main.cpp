#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "lunarbeam/diffraction.hpp"
#include "lunarbeam/dust.hpp"
#include "lunarbeam/mie.hpp"
#include "lunarbeam/phase.hpp"
#include "lunarbeam/receiver.hpp"

namespace lb = lunarbeam;

namespace {

void BM_FieldRow(benchmark::State& state) {
  const bool dusty = state.range(1) != 0;
  lb::LaserSource laser;
  lb::ScenarioGeometry geom;
  std::optional<lb::DustModel> dust;
  if (dusty) {
    dust.emplace();
    dust->cext = 5e-14;
  }
  const lb::Propagator p(laser, geom, dust,
                         lb::build_aperture_grid(laser, static_cast<int>(state.range(0))));
  std::vector<double> xs(32);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -0.25 + 0.5 * i / 31.0;
  std::vector<std::complex<double>> out(xs.size());
  for (auto _ : state) {
    p.field_row(0.01, xs, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * xs.size() * p.grid().nodes.size());
}
BENCHMARK(BM_FieldRow)->Args({64, 0})->Args({64, 1})->Args({256, 0})->Args({256, 1});

void BM_PanelPower(benchmark::State& state) {
  lb::Scenario s;
  s.geometry.distance = 20000.0;
  s.numerics.compute_shift = false;
  const lb::NumericsSettings settings{static_cast<int>(state.range(0)), 32};
  for (auto _ : state) benchmark::DoNotOptimize(lb::panel_power(s, settings).power);
}
BENCHMARK(BM_PanelPower)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_MediumPhase(benchmark::State& state) {
  lb::ScenarioGeometry geom;
  geom.source_height = 12.0;
  lb::DustModel dust;
  dust.cext = 5e-14;
  double y = 0.0;
  for (auto _ : state) {
    y += 1e-9;
    benchmark::DoNotOptimize(lb::medium_phase({0, y, 0}, {0, 0, geom.distance}, geom, dust, 1064e-9));
  }
}
BENCHMARK(BM_MediumPhase);

void BM_MediumPhaseQuadrature(benchmark::State& state) {
  lb::ScenarioGeometry geom;
  geom.source_height = 12.0;
  lb::DustModel dust;
  dust.cext = 5e-14;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lb::medium_phase_quadrature({0, 0, 0}, {0, 0, geom.distance}, geom, dust, 1064e-9, 1e-12));
  }
}
BENCHMARK(BM_MediumPhaseQuadrature);

void BM_Mie(benchmark::State& state) {
  const double d = static_cast<double>(state.range(0)) * 1e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lb::mie_scattering(d, 1064e-9, {1.733, 0.0}));
  }
}
BENCHMARK(BM_Mie)->Arg(175)->Arg(2000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
