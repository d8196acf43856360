#pragma once

#include <span>
#include <vector>

#include "entrap/criteria.hpp"
#include "entrap/telemetry.hpp"

namespace entrap::batch {

/// Per-sample classifier features.
struct Feature {
    double q = 0.0;      ///< weighted divergence
    double speed = 0.0;  ///< ||v_m||
};

/// Serial reference for the feature kernel. Kept for testing and as the
/// baseline in the kernel benchmark.
std::vector<Feature> compute_features_serial(std::span<const TelemetrySample> samples,
                                             const RoverGeometry& geom,
                                             const DivergenceWeights& weights);

/// OpenMP variant; per-element map, bit-identical to the serial kernel.
std::vector<Feature> compute_features(std::span<const TelemetrySample> samples,
                                      const RoverGeometry& geom,
                                      const DivergenceWeights& weights);

/// Serial reference reductions.
double sum_serial(std::span<const double> values);
double sum_squares_serial(std::span<const double> values);

/// Blocked OpenMP reductions: fixed 4096-element block partials combined
/// serially, so the result does not depend on thread count.
double sum(std::span<const double> values);
double sum_squares(std::span<const double> values);

}  // namespace entrap::batch
