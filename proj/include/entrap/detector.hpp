#pragma once

#include <cstdint>
#include <optional>

#include "entrap/bayes.hpp"
#include "entrap/criteria.hpp"
#include "entrap/kinematics.hpp"
#include "entrap/telemetry.hpp"

namespace entrap {

enum class PriorMode {
    recursive,  ///< previous posterior feeds the next update
    fixed,      ///< uniform 0.5 prior every step
};

struct DetectorConfig {
    double clamp_eps = 0.01;
    double decision_threshold = 0.9;
    int persistence_steps = 10;
    DivergenceWeights weights = DivergenceWeights::identity();
    Tolerances tolerances;
    RoverGeometry geometry;
    std::int64_t sample_period_ms = 10;
    PriorMode prior_mode = PriorMode::recursive;

    void validate() const;
};

/// Per-step detector output: the step's features, the updated belief, the
/// fused status distribution, and the debounced binary decision.
struct StatusEstimate {
    std::int64_t t_ms = 0;
    double q_value = 0.0;
    double speed = 0.0;
    BeliefState belief;
    StatusDistribution status;
    bool decided_entrapped = false;
    bool evidence_degenerate = false;
};

/// Streaming entrapment detector. Single-owner mutable state; one updater
/// at a time. StatusEstimate snapshots are freely shareable.
class Detector {
public:
    Detector(DetectorConfig config, ClassifierModels models);

    /// Full pipeline for one sample: kinematics, divergence, Bayes update
    /// with clamping, status fusion, persistence-gated decision.
    /// Throws ValidationError on a non-increasing timestamp.
    StatusEstimate step(const TelemetrySample& sample);

    /// Measurement dropout: belief carried forward, estimate flagged degenerate.
    StatusEstimate step_missing_measurement(std::int64_t t_ms);

    /// Belief and persistence counter back to initial; config and models kept.
    void reset();

    const BeliefState& belief() const { return belief_; }
    const DetectorConfig& config() const { return config_; }

private:
    StatusEstimate finish_step(std::int64_t t_ms, double q, double speed, bool degenerate);

    DetectorConfig config_;
    ClassifierModels models_;
    BeliefState belief_{0.5, 0.5};
    int persistence_count_ = 0;
    std::optional<std::int64_t> last_t_ms_;
};

}  // namespace entrap
