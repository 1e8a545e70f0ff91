#include <benchmark/benchmark.h>

#include <cmath>

#include "nifield/averaging.hpp"
#include "nifield/particle_field.hpp"
#include "nifield/pulse.hpp"
#include "nifield/quadrature.hpp"
#include "nifield/solenoid.hpp"

using namespace nifield;

namespace {

const PulseProfile& pulse() {
  static const PulseProfile p = calibrate_pulse(kFineStructure);
  return p;
}

void BM_Integrate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate([](double x) { return std::pow(std::sin(0.5 * x), 5.63); }, 0.0, 6.283185307179586));
  }
}
BENCHMARK(BM_Integrate);

void BM_Calibrate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(calibrate_pulse(kFineStructure));
}
BENCHMARK(BM_Calibrate)->Unit(benchmark::kMillisecond);

void BM_RestFields(benchmark::State& state) {
  const auto src = ParticleSource::make(std::sqrt(kFineStructure), pulse(), Lifetime::eternal(), Vec3::Zero(),
                                        SimulationConstants::sim_units());
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rest_fields(src, Vec3(1.0, 0.5, -0.3), t));
    t += 1e-3;
  }
}
BENCHMARK(BM_RestFields);

void BM_AveragedParticle(benchmark::State& state) {
  const auto src = ParticleSource::make(std::sqrt(kFineStructure), pulse(), Lifetime::eternal(), Vec3::Zero(),
                                        SimulationConstants::sim_units());
  for (auto _ : state) benchmark::DoNotOptimize(averaged_particle_quantities_quadrature(src, Vec3(2.0, 0.0, 0.0), 0.3));
}
BENCHMARK(BM_AveragedParticle)->Unit(benchmark::kMicrosecond);

void BM_SolenoidPotential(benchmark::State& state) {
  SolenoidSpec s;
  s.pulse = pulse();
  SurfaceQuadrature q;
  q.azimuth_nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vector_potential_phi(s, 1.5, 0.0, 10.0, q));
}
BENCHMARK(BM_SolenoidPotential)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
