#include <cmath>
#include <random>

#include <doctest.h>

#include "entrap/errors.hpp"
#include "entrap/kinematics.hpp"

using namespace entrap;

namespace {

const RoverGeometry kGeom{};  // wheelbase 0.4, track 0.3, wheel radius 0.09

JointState joints(std::array<double, 4> wheels, std::array<double, 2> steer) {
    return JointState{wheels, steer};
}

// Geometric oracle: each steer joint's turn center sits at L / tan(delta)
// along the rear axle under the single-track reduction; average the implied
// curvatures and invert.
double steer_oracle(double left, double right, double wheelbase) {
    auto curvature = [&](double d) {
        if (d == 0.0) return 0.0;
        const double radius = wheelbase / std::tan(d);
        return 1.0 / radius;
    };
    const double k_mean = 0.5 * (curvature(left) + curvature(right));
    return std::atan(wheelbase * k_mean);
}

}  // namespace

TEST_CASE("effective steer angle: straight-line symmetry") {
    CHECK(effective_steer_angle(joints({0, 0, 0, 0}, {0.0, 0.0}), kGeom) == 0.0);
}

TEST_CASE("effective steer angle: equal angles pass through") {
    for (double d : {-1.2, -0.5, -0.01, 0.01, 0.3, 0.9, 1.4}) {
        CHECK(effective_steer_angle(joints({}, {d, d}), kGeom) ==
              doctest::Approx(d).epsilon(1e-14));
    }
}

TEST_CASE("effective steer angle: asymmetric pair matches the turn-center oracle") {
    const double got = effective_steer_angle(joints({}, {0.20, 0.10}), kGeom);
    CHECK(got == doctest::Approx(steer_oracle(0.20, 0.10, kGeom.wheelbase)).epsilon(1e-12));
    CHECK(got > 0.10);
    CHECK(got < 0.20);
}

TEST_CASE("jacobian: zero curvature zeroes the yaw row, lateral row always zero") {
    const Jacobian j = jacobian(joints({1, 2, 3, 4}, {0.0, 0.0}), kGeom);
    for (int i = 0; i < 4; ++i) {
        CHECK(j[2][i] == 0.0);
        CHECK(j[1][i] == 0.0);
    }

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Jacobian jr = jacobian(joints({}, {angle(rng), angle(rng)}), kGeom);
        for (int i = 0; i < 4; ++i) CHECK(jr[1][i] == 0.0);
    }
}

TEST_CASE("jacobian: yaw-row entries follow tan(delta)/wheelbase") {
    const Jacobian j = jacobian(joints({}, {0.1, 0.1}), kGeom);
    const double expected = (0.09 / 4.0) * std::tan(0.1) / 0.4;
    for (int i = 0; i < 4; ++i) {
        CHECK(j[2][i] == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("assumed velocity: zero input gives exact zero") {
    const TaskVelocity v = assumed_velocity(joints({0, 0, 0, 0}, {0.2, 0.3}), kGeom);
    CHECK(v.vx == 0.0);
    CHECK(v.vy == 0.0);
    CHECK(v.omega == 0.0);
}

TEST_CASE("assumed velocity: straight driving") {
    const TaskVelocity v = assumed_velocity(joints({10, 10, 10, 10}, {0.0, 0.0}), kGeom);
    CHECK(v.vx == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(v.vy == 0.0);
    CHECK(v.omega == 0.0);
}

TEST_CASE("assumed velocity: curvature formula") {
    const TaskVelocity v = assumed_velocity(joints({10, 10, 10, 10}, {0.1, 0.1}), kGeom);
    CHECK(v.omega == doctest::Approx(0.9 * std::tan(0.1) / 0.4).epsilon(1e-12));
}

TEST_CASE("assumed velocity is linear in wheel rates at fixed steer") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> wheel(-20.0, 20.0);
    std::uniform_real_distribution<double> angle(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::array<double, 2> steer{angle(rng), angle(rng)};
        std::array<double, 4> w{wheel(rng), wheel(rng), wheel(rng), wheel(rng)};
        std::array<double, 4> w2;
        for (int i = 0; i < 4; ++i) w2[i] = 2.0 * w[i];

        const TaskVelocity v1 = assumed_velocity(joints(w, steer), kGeom);
        const TaskVelocity v2 = assumed_velocity(joints(w2, steer), kGeom);
        CHECK(v2.vx == 2.0 * v1.vx);
        CHECK(v2.vy == 2.0 * v1.vy);
        CHECK(v2.omega == 2.0 * v1.omega);
    }
}

TEST_CASE("euler pose integration matches the velocity map") {
    // Constant joints over a short horizon: the finite-difference body
    // velocity of the integrated pose must match assumed_velocity.
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> wheel(-15.0, 15.0);
    std::uniform_real_distribution<double> angle(-1.0, 1.0);

    const double dt = 1e-4;
    const int steps = 10;

    for (int trial = 0; trial < 100; ++trial) {
        const JointState js = joints({wheel(rng), wheel(rng), wheel(rng), wheel(rng)},
                                     {angle(rng), angle(rng)});
        const TaskVelocity v = assumed_velocity(js, kGeom);

        double x = 0.0, y = 0.0, theta = 0.0;
        for (int i = 0; i < steps; ++i) {
            x += (v.vx * std::cos(theta) - v.vy * std::sin(theta)) * dt;
            y += (v.vx * std::sin(theta) + v.vy * std::cos(theta)) * dt;
            theta += v.omega * dt;
        }
        const double h = dt * steps;
        const double fd_vx = x / h;
        const double fd_vy = y / h;
        const double fd_omega = theta / h;

        const double scale = std::max({std::abs(v.vx), std::abs(v.omega), 1e-6});
        CHECK(std::abs(fd_vx - v.vx) <= 1e-3 * scale);
        CHECK(std::abs(fd_vy - v.vy) <= 1e-3 * scale);
        CHECK(std::abs(fd_omega - v.omega) <= 1e-3 * scale);
    }
}

TEST_CASE("validation rejects bad geometry and joints") {
    RoverGeometry bad = kGeom;
    bad.wheelbase = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);

    JointState js;
    js.steer_angles = {1.6, 0.0};  // beyond pi/2
    CHECK_THROWS_AS(js.validate(), ValidationError);
}
