#include "entrap/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "entrap/errors.hpp"

namespace entrap {

void DetectorConfig::validate() const {
    if (!(clamp_eps > 0.0) || !(clamp_eps < 0.5)) {
        throw ValidationError("clamp_eps must lie in (0, 0.5)");
    }
    if (!(decision_threshold > 0.5) || !(decision_threshold < 1.0)) {
        throw ValidationError("decision_threshold must lie in (0.5, 1)");
    }
    if (persistence_steps < 1) {
        throw ValidationError("persistence_steps must be at least 1");
    }
    if (sample_period_ms <= 0) {
        throw ValidationError("sample_period_ms must be positive");
    }
    tolerances.validate();
    geometry.validate();
}

Detector::Detector(DetectorConfig config, ClassifierModels models)
    : config_(std::move(config)), models_(std::move(models)) {
    config_.validate();
    models_.validate();
}

void Detector::reset() {
    belief_ = BeliefState{0.5, 0.5};
    persistence_count_ = 0;
    last_t_ms_.reset();
}

StatusEstimate Detector::step(const TelemetrySample& sample) {
    if (last_t_ms_ && sample.t_ms <= *last_t_ms_) {
        throw ValidationError("non-increasing timestamp at t_ms=" + std::to_string(sample.t_ms));
    }

    const TaskVelocity assumed = assumed_velocity(sample.joints(), config_.geometry);
    const TaskVelocity measured = sample.measured();
    const VelocityError err = velocity_error(assumed, measured);
    const double q = weighted_divergence(err, config_.weights);
    const double speed = measured.linear_norm();

    const BeliefState prior = config_.prior_mode == PriorMode::recursive
                                  ? belief_
                                  : BeliefState{0.5, 0.5};
    const PosteriorResult div = posterior_divergence(prior.p_diverged, q, models_);
    const PosteriorResult mov = posterior_movement(prior.p_stopped, speed, models_);

    belief_.p_diverged = std::clamp(div.p, config_.clamp_eps, 1.0 - config_.clamp_eps);
    belief_.p_stopped = std::clamp(mov.p, config_.clamp_eps, 1.0 - config_.clamp_eps);

    return finish_step(sample.t_ms, q, speed, div.degenerate || mov.degenerate);
}

StatusEstimate Detector::step_missing_measurement(std::int64_t t_ms) {
    if (last_t_ms_ && t_ms <= *last_t_ms_) {
        throw ValidationError("non-increasing timestamp at t_ms=" + std::to_string(t_ms));
    }
    // Dropout: belief carried forward untouched.
    return finish_step(t_ms, std::nan(""), std::nan(""), true);
}

StatusEstimate Detector::finish_step(std::int64_t t_ms, double q, double speed,
                                     bool degenerate) {
    last_t_ms_ = t_ms;

    StatusEstimate est;
    est.t_ms = t_ms;
    est.q_value = q;
    est.speed = speed;
    est.belief = belief_;
    est.status = status_distribution(belief_.p_diverged, belief_.p_stopped);
    est.evidence_degenerate = degenerate;

    if (est.status.p_entrapped >= config_.decision_threshold) {
        ++persistence_count_;
    } else {
        persistence_count_ = 0;
    }
    est.decided_entrapped = persistence_count_ >= config_.persistence_steps;
    return est;
}

}  // namespace entrap
