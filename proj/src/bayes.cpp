#include "entrap/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "entrap/errors.hpp"

namespace entrap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLogTwoPi = std::log(2.0 * std::numbers::pi);

// Two-class Bayes rule in log space. Returns the posterior of the class
// whose log-likelihood is log_a.
PosteriorResult two_class_posterior(double prior_a, double log_a, double log_b) {
    if (log_a == kNegInf && log_b == kNegInf) {
        return {prior_a, true};
    }
    const double wa = log_a + std::log(prior_a);
    const double wb = log_b + std::log1p(-prior_a);
    const double m = std::max(wa, wb);
    const double ea = std::exp(wa - m);
    const double eb = std::exp(wb - m);
    return {ea / (ea + eb), false};
}

}  // namespace

void ConditionalModel::validate() const {
    if (!(var > 0.0) || !std::isfinite(var)) {
        throw ValidationError("model variance must be positive and finite");
    }
    if (!std::isfinite(mu)) {
        throw ValidationError("model mean must be finite");
    }
    if (kind == ModelKind::half_gaussian && mu != 0.0) {
        throw ValidationError("half-gaussian model requires mu = 0");
    }
}

void ClassifierModels::validate() const {
    divergence_diverged.validate();
    divergence_consistent.validate();
    movement_moving.validate();
    movement_stopped.validate();
}

double log_likelihood(const ConditionalModel& model, double x) {
    const double z = (x - model.mu);
    const double base = -0.5 * (kLogTwoPi + std::log(model.var)) - z * z / (2.0 * model.var);
    switch (model.kind) {
        case ModelKind::gaussian:
            return base;
        case ModelKind::half_gaussian:
            if (x < 0.0) return kNegInf;
            return std::numbers::ln2 + base;
    }
    return kNegInf;
}

double likelihood(const ConditionalModel& model, double x) {
    return std::exp(log_likelihood(model, x));
}

ConditionalModel fit_gaussian(std::span<const double> samples) {
    if (samples.size() < 2) {
        throw FitError("gaussian fit requires at least 2 samples");
    }
    double sum = 0.0;
    for (double x : samples) {
        if (!std::isfinite(x)) throw FitError("gaussian fit: non-finite sample");
        sum += x;
    }
    const double n = static_cast<double>(samples.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        ss += d * d;
    }
    const double var = ss / n;
    if (!(var > 0.0)) {
        throw FitError("gaussian fit: zero variance (degenerate sample set)");
    }
    return ConditionalModel{ModelKind::gaussian, mean, var};
}

ConditionalModel fit_half_gaussian(std::span<const double> samples) {
    if (samples.empty()) {
        throw FitError("half-gaussian fit requires at least 1 sample");
    }
    double ss = 0.0;
    for (double x : samples) {
        if (!std::isfinite(x) || x < 0.0) {
            throw FitError("half-gaussian fit: negative or non-finite sample");
        }
        ss += x * x;
    }
    const double var = ss / static_cast<double>(samples.size());
    if (!(var > 0.0)) {
        throw FitError("half-gaussian fit: all samples zero (degenerate)");
    }
    return ConditionalModel{ModelKind::half_gaussian, 0.0, var};
}

std::vector<double> preprocess_diverged(std::span<const double> samples, double cutoff) {
    if (cutoff < 0.0) throw ValidationError("preprocessing cutoff must be nonnegative");
    std::vector<double> kept;
    kept.reserve(samples.size());
    // Inclusive removal: values equal to the cutoff are dropped too.
    std::copy_if(samples.begin(), samples.end(), std::back_inserter(kept),
                 [cutoff](double q) { return q > cutoff; });
    return kept;
}

PosteriorResult posterior_divergence(double prior_diverged, double q,
                                     const ClassifierModels& models) {
    if (!(prior_diverged > 0.0) || !(prior_diverged < 1.0)) {
        throw ValidationError("prior must lie strictly inside (0, 1)");
    }
    return two_class_posterior(prior_diverged,
                               log_likelihood(models.divergence_diverged, q),
                               log_likelihood(models.divergence_consistent, q));
}

PosteriorResult posterior_movement(double prior_stopped, double speed,
                                   const ClassifierModels& models) {
    if (!(prior_stopped > 0.0) || !(prior_stopped < 1.0)) {
        throw ValidationError("prior must lie strictly inside (0, 1)");
    }
    return two_class_posterior(prior_stopped,
                               log_likelihood(models.movement_stopped, speed),
                               log_likelihood(models.movement_moving, speed));
}

StatusDistribution status_distribution(double p_diverged, double p_stopped) {
    StatusDistribution s;
    // Split p_diverged so that p_entrapped + p_slipping = p_diverged holds
    // exactly: subtract the larger share, which keeps the difference in the
    // Sterbenz range where floating subtraction is error-free.
    if (p_stopped >= 0.5) {
        s.p_entrapped = p_diverged * p_stopped;
        s.p_slipping = p_diverged - s.p_entrapped;
    } else {
        s.p_slipping = p_diverged * (1.0 - p_stopped);
        s.p_entrapped = p_diverged - s.p_slipping;
    }
    s.p_stopped = p_stopped - s.p_entrapped;
    s.p_moving = (1.0 - p_diverged) * (1.0 - p_stopped);
    return s;
}

}  // namespace entrap
