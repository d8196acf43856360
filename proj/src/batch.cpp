#include "entrap/batch.hpp"

#include <cstddef>

namespace entrap::batch {

namespace {

Feature feature_of(const TelemetrySample& s, const RoverGeometry& geom,
                   const DivergenceWeights& weights) {
    const TaskVelocity assumed = assumed_velocity(s.joints(), geom);
    const TaskVelocity measured = s.measured();
    Feature f;
    f.q = weighted_divergence(velocity_error(assumed, measured), weights);
    f.speed = measured.linear_norm();
    return f;
}

constexpr std::size_t kBlock = 4096;

}  // namespace

std::vector<Feature> compute_features_serial(std::span<const TelemetrySample> samples,
                                             const RoverGeometry& geom,
                                             const DivergenceWeights& weights) {
    std::vector<Feature> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[i] = feature_of(samples[i], geom, weights);
    }
    return out;
}

std::vector<Feature> compute_features(std::span<const TelemetrySample> samples,
                                      const RoverGeometry& geom,
                                      const DivergenceWeights& weights) {
    std::vector<Feature> out(samples.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = feature_of(samples[i], geom, weights);
    }
    return out;
}

double sum_serial(std::span<const double> values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
}

double sum_squares_serial(std::span<const double> values) {
    double acc = 0.0;
    for (double v : values) acc += v * v;
    return acc;
}

namespace {

// Blocked reduction: per-block partials computed in parallel, combined in
// block order, so the result is independent of the thread count.
template <typename Op>
double blocked_reduce(std::span<const double> values, Op op) {
    const std::size_t n = values.size();
    const std::size_t num_blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partials(num_blocks, 0.0);
    const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(num_blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
        const std::size_t end = std::min(begin + kBlock, n);
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) acc += op(values[i]);
        partials[static_cast<std::size_t>(b)] = acc;
    }
    double total = 0.0;
    for (double p : partials) total += p;
    return total;
}

}  // namespace

double sum(std::span<const double> values) {
    return blocked_reduce(values, [](double v) { return v; });
}

double sum_squares(std::span<const double> values) {
    return blocked_reduce(values, [](double v) { return v * v; });
}

}  // namespace entrap::batch
