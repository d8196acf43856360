#include "entrap/kinematics.hpp"

#include <cmath>
#include <numbers>

#include "entrap/errors.hpp"

namespace entrap {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Curvature implied by one steer joint under the single-track reduction:
// the wheel's turn center sits at L / tan(d) along the rear axle.
double wheel_curvature(double steer, double wheelbase) {
    return std::tan(steer) / wheelbase;
}

}  // namespace

void RoverGeometry::validate() const {
    if (!(wheelbase > 0.0) || !(track_width > 0.0) || !(wheel_radius > 0.0)) {
        throw ValidationError("rover geometry lengths must be strictly positive");
    }
}

void JointState::validate() const {
    for (double w : wheel_velocities) {
        if (!std::isfinite(w)) throw ValidationError("wheel velocity not finite");
    }
    for (double a : steer_angles) {
        if (!std::isfinite(a) || a <= -kHalfPi || a >= kHalfPi) {
            throw ValidationError("steer angle outside (-pi/2, pi/2)");
        }
    }
}

double effective_steer_angle(const JointState& joints, const RoverGeometry& geom) {
    const double k_left = wheel_curvature(joints.steer_angles[0], geom.wheelbase);
    const double k_right = wheel_curvature(joints.steer_angles[1], geom.wheelbase);
    const double k_mean = 0.5 * (k_left + k_right);
    return std::atan(geom.wheelbase * k_mean);
}

Jacobian jacobian(const JointState& joints, const RoverGeometry& geom) {
    const double delta = effective_steer_angle(joints, geom);
    const double vx_gain = geom.wheel_radius / 4.0;
    const double omega_gain = vx_gain * std::tan(delta) / geom.wheelbase;

    Jacobian j{};
    for (int i = 0; i < 4; ++i) {
        j[0][i] = vx_gain;
        j[1][i] = 0.0;  // no lateral velocity in the single-track model
        j[2][i] = omega_gain;
    }
    return j;
}

TaskVelocity assumed_velocity(const JointState& joints, const RoverGeometry& geom) {
    const Jacobian j = jacobian(joints, geom);
    TaskVelocity out;
    for (int i = 0; i < 4; ++i) {
        out.vx += j[0][i] * joints.wheel_velocities[i];
        out.vy += j[1][i] * joints.wheel_velocities[i];
        out.omega += j[2][i] * joints.wheel_velocities[i];
    }
    return out;
}

}  // namespace entrap
