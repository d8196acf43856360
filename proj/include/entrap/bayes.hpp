#pragma once

#include <span>
#include <vector>

namespace entrap {

enum class ModelKind { gaussian, half_gaussian };

/// One-dimensional conditional likelihood model. The half-Gaussian is the
/// half-normal density 2*N(x; 0, var) on x >= 0, zero elsewhere.
struct ConditionalModel {
    ModelKind kind = ModelKind::gaussian;
    double mu = 0.0;
    double var = 1.0;

    void validate() const;
};

/// The four class-conditional models of the two binary classifiers.
struct ClassifierModels {
    ConditionalModel divergence_diverged;    ///< Pr(Q | diverged)
    ConditionalModel divergence_consistent;  ///< Pr(Q | consistent)
    ConditionalModel movement_moving;        ///< Pr(||v_m|| | moving)
    ConditionalModel movement_stopped;       ///< Pr(||v_m|| | stopped)

    void validate() const;
};

/// Current posteriors of the two binary classifiers.
struct BeliefState {
    double p_diverged = 0.5;
    double p_stopped = 0.5;
};

/// Four-way status probabilities from the product rule.
struct StatusDistribution {
    double p_entrapped = 0.0;
    double p_slipping = 0.0;
    double p_moving = 0.0;
    double p_stopped = 0.0;
};

/// Two-class posterior update result. When both class likelihoods vanish
/// the prior is passed through and degenerate is set.
struct PosteriorResult {
    double p = 0.0;
    bool degenerate = false;
};

double likelihood(const ConditionalModel& model, double x);
double log_likelihood(const ConditionalModel& model, double x);

/// MLE Gaussian fit (variance divided by n). Throws FitError on fewer than
/// two samples or zero variance.
ConditionalModel fit_gaussian(std::span<const double> samples);

/// MLE half-normal fit: mu = 0, var = mean of x^2. Throws FitError on empty
/// input, negative samples, or all-zero samples.
ConditionalModel fit_half_gaussian(std::span<const double> samples);

/// Drops divergence samples with Q <= cutoff (inclusive), preserving order.
std::vector<double> preprocess_diverged(std::span<const double> samples, double cutoff);

/// Pr(diverged | Q = q) from the two-class Bayes rule, computed in log space.
PosteriorResult posterior_divergence(double prior_diverged, double q,
                                     const ClassifierModels& models);

/// Pr(stopped | ||v_m|| = speed).
PosteriorResult posterior_movement(double prior_stopped, double speed,
                                   const ClassifierModels& models);

/// Product-rule fusion of the two classifier posteriors.
StatusDistribution status_distribution(double p_diverged, double p_stopped);

}  // namespace entrap
