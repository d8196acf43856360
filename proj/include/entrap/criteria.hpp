#pragma once

#include <array>

#include "entrap/kinematics.hpp"

namespace entrap {

/// Maximum tolerable errors for the entrapment criteria. The yaw-rate
/// component of a stacked velocity norm is scaled by char_length so the
/// norm mixes m/s and rad/s coherently.
struct Tolerances {
    double eps_zero = 0.05;   ///< "rover does not move" threshold [m/s]
    double eps_ag = 0.15;     ///< assumed-vs-reference divergence threshold [m/s]
    double eps_mg = 0.02;     ///< measurement approximation threshold [m/s]
    double char_length = 0.4; ///< yaw-rate weighting length [m]

    void validate() const;
};

/// Split velocity error: linear magnitude and yaw-rate magnitude.
struct VelocityError {
    double e_v = 0.0;      ///< ||v_a - v_m|| [m/s]
    double e_omega = 0.0;  ///< |omega_a - omega_m| [rad/s]
};

/// Symmetric PSD 2x2 weight over (e_v, e_omega). Row-major storage.
class DivergenceWeights {
public:
    /// Throws ValidationError if m is asymmetric (beyond 1e-12) or indefinite.
    static DivergenceWeights from_matrix(const std::array<double, 4>& m);
    static DivergenceWeights identity();

    const std::array<double, 4>& matrix() const { return m_; }

private:
    explicit DivergenceWeights(const std::array<double, 4>& m) : m_(m) {}
    std::array<double, 4> m_;
};

/// Stacked norm ||(vx, vy, omega * char_length)||.
double stacked_norm(const TaskVelocity& x, double char_length);

VelocityError velocity_error(const TaskVelocity& assumed, const TaskVelocity& measured);

/// Q = sqrt(e^T R e); with R = I this is the plain error norm.
double weighted_divergence(const VelocityError& err, const DivergenceWeights& w);

/// ||x_g|| < eps_zero AND ||x_a - x_g|| > eps_ag. Ties resolve to false.
bool entrapped_ground_truth(const TaskVelocity& assumed, const TaskVelocity& ground_truth,
                            const Tolerances& tol);

/// Same predicate with the measured velocity standing in for ground truth.
bool entrapped_measured(const TaskVelocity& assumed, const TaskVelocity& measured,
                        const Tolerances& tol);

/// ||x_m - x_g|| < eps_mg, strict.
bool measurement_valid(const TaskVelocity& measured, const TaskVelocity& ground_truth,
                       const Tolerances& tol);

}  // namespace entrap
