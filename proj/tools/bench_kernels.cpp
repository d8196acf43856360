// Benchmark comparing the serial reference kernels against the OpenMP
// variants on a large synthetic trace.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "entrap/batch.hpp"
#include "entrap/simulator.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto start = Clock::now();
        f();
        best = std::min(best, seconds_since(start));
    }
    return best;
}

}  // namespace

int main() {
    using namespace entrap;

    Scenario scenario;
    scenario.kind = ScenarioKind::rocky;
    scenario.duration_ms = 10 * 60 * 1000;  // 60k samples per copy
    scenario.seed = 42;
    const RoverGeometry geom;
    const Trace base = simulate(scenario, geom);

    // Tile up to ~1M samples.
    std::vector<TelemetrySample> samples;
    samples.reserve(base.samples.size() * 16);
    for (int i = 0; i < 16; ++i) {
        samples.insert(samples.end(), base.samples.begin(), base.samples.end());
    }

    const auto weights = DivergenceWeights::identity();

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled\n");
#endif
    std::printf("samples: %zu\n", samples.size());

    std::vector<batch::Feature> out;
    const double t_serial = time_best_of(3, [&] {
        out = batch::compute_features_serial(samples, geom, weights);
    });
    const double t_parallel = time_best_of(3, [&] {
        out = batch::compute_features(samples, geom, weights);
    });
    std::printf("features  serial: %8.3f ms   parallel: %8.3f ms   speedup: %.2fx\n",
                t_serial * 1e3, t_parallel * 1e3, t_serial / t_parallel);

    std::vector<double> qs(samples.size());
    for (std::size_t i = 0; i < out.size(); ++i) qs[i] = out[i].q;

    volatile double sink = 0.0;
    const double r_serial = time_best_of(5, [&] {
        sink = batch::sum_squares_serial(qs);
    });
    const double r_parallel = time_best_of(5, [&] {
        sink = batch::sum_squares(qs);
    });
    (void)sink;
    std::printf("reduction serial: %8.3f ms   parallel: %8.3f ms   speedup: %.2fx\n",
                r_serial * 1e3, r_parallel * 1e3, r_serial / r_parallel);
    return 0;
}
