#pragma once

#include <array>
#include <cmath>

namespace entrap {

/// Physical layout of the rover locomotion system: four driven wheels,
/// two steerable front wheels reduced to a planar single-track model.
struct RoverGeometry {
    double wheelbase = 0.4;     ///< front-to-rear axle distance [m]
    double track_width = 0.3;   ///< lateral wheel separation [m]
    double wheel_radius = 0.09; ///< driven wheel radius [m]

    static constexpr int kNumWheels = 4;
    static constexpr int kNumSteerJoints = 2;

    /// Throws ValidationError unless all lengths are strictly positive.
    void validate() const;
};

/// Locomotion joint state. Steer joint 0 is the left front wheel
/// (lateral offset +track_width/2), joint 1 the right front wheel.
struct JointState {
    std::array<double, 4> wheel_velocities{};  ///< [rad/s]
    std::array<double, 2> steer_angles{};      ///< [rad], each in (-pi/2, pi/2)

    void validate() const;
};

/// Planar body-frame task-space velocity.
struct TaskVelocity {
    double vx = 0.0;     ///< longitudinal [m/s]
    double vy = 0.0;     ///< lateral [m/s]
    double omega = 0.0;  ///< yaw rate [rad/s]

    double linear_norm() const { return std::hypot(vx, vy); }
};

using Jacobian = std::array<std::array<double, 4>, 3>;

/// Equivalent single-track steering angle for the Ackermann pair,
/// via curvature averaging of the two per-wheel turn centers.
double effective_steer_angle(const JointState& joints, const RoverGeometry& geom);

/// Linear map from the four wheel angular rates to body (vx, vy, omega).
/// The vy row is identically zero under the single-track model.
Jacobian jacobian(const JointState& joints, const RoverGeometry& geom);

/// Actuator odometry: task-space velocity implied by the joint state.
TaskVelocity assumed_velocity(const JointState& joints, const RoverGeometry& geom);

}  // namespace entrap
