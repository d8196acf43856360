#include <cmath>
#include <random>

#include <doctest.h>

#include "entrap/criteria.hpp"
#include "entrap/errors.hpp"

using namespace entrap;

namespace {
const Tolerances kTol{};  // eps_zero 0.05, eps_ag 0.15, eps_mg 0.02, L_c 0.4
}

TEST_CASE("velocity error basics") {
    const TaskVelocity a{0.9, 0.0, 0.0};
    const TaskVelocity zero{};
    CHECK(velocity_error(a, a).e_v == 0.0);
    CHECK(velocity_error(a, a).e_omega == 0.0);
    CHECK(velocity_error(a, zero).e_v == doctest::Approx(0.9));
    CHECK(velocity_error(a, zero).e_omega == 0.0);
    CHECK(velocity_error(TaskVelocity{0.3, 0.4, 0.0}, zero).e_v == doctest::Approx(0.5));
}

TEST_CASE("weighted divergence examples") {
    const auto id = DivergenceWeights::identity();
    CHECK(weighted_divergence({0.0, 0.0}, id) == 0.0);
    CHECK(weighted_divergence({3.0, 4.0}, id) == doctest::Approx(5.0));

    const auto diag = DivergenceWeights::from_matrix({4, 0, 0, 1});
    CHECK(weighted_divergence({1.0, 2.0}, diag) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("weighted divergence scaling law: R = cI") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> err(0.0, 2.0);
    std::uniform_real_distribution<double> scale(0.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const VelocityError e{err(rng), err(rng)};
        const double c = scale(rng);
        const auto w = DivergenceWeights::from_matrix({c, 0, 0, c});
        const double expected = std::sqrt(c) * std::hypot(e.e_v, e.e_omega);
        CHECK(weighted_divergence(e, w) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("weighted divergence monotone in e_v for diagonal PSD weights") {
    const auto w = DivergenceWeights::from_matrix({2.5, 0, 0, 0.5});
    double prev = -1.0;
    for (double ev = 0.0; ev <= 2.0; ev += 0.05) {
        const double q = weighted_divergence({ev, 0.7}, w);
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("weight matrix validation") {
    CHECK_THROWS_AS(DivergenceWeights::from_matrix({1, 0.5, 0.2, 1}), ValidationError);
    CHECK_THROWS_AS(DivergenceWeights::from_matrix({1, 2, 2, 1}), ValidationError);  // indefinite
    CHECK_NOTHROW(DivergenceWeights::from_matrix({1, 1, 1, 1}));  // PSD, rank 1
    CHECK_NOTHROW(DivergenceWeights::from_matrix({0, 0, 0, 0}));
}

TEST_CASE("ground-truth entrapment criteria") {
    const TaskVelocity zero{};
    const TaskVelocity moving{0.9, 0.0, 0.0};
    CHECK_FALSE(entrapped_ground_truth(zero, zero, kTol));
    CHECK(entrapped_ground_truth(moving, zero, kTol));
    CHECK_FALSE(entrapped_ground_truth(moving, moving, kTol));
}

TEST_CASE("measured-variant criteria") {
    const TaskVelocity zero{};
    const TaskVelocity assumed{0.9, 0.0, 0.0};
    CHECK_FALSE(entrapped_measured(zero, zero, kTol));
    CHECK(entrapped_measured(assumed, zero, kTol));
    // Near-zero measured speed: ||x_m|| = 0.02 < 0.05 and divergence 0.88 > 0.15.
    CHECK(entrapped_measured(assumed, TaskVelocity{0.02, 0.0, 0.0}, kTol));
}

TEST_CASE("measured-variant is the textual substitution of the ground-truth one") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> vel(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const TaskVelocity a{vel(rng), vel(rng), vel(rng)};
        const TaskVelocity m{vel(rng), vel(rng), vel(rng)};
        CHECK(entrapped_measured(a, m, kTol) == entrapped_ground_truth(a, m, kTol));
    }
}

TEST_CASE("measurement validity boundary is strict") {
    const TaskVelocity gt{0.1, 0.0, 0.0};
    CHECK(measurement_valid(gt, gt, kTol));
    // Error norm exactly eps_mg: not valid.
    CHECK_FALSE(measurement_valid(TaskVelocity{0.1 + kTol.eps_mg, 0.0, 0.0}, gt, kTol));
    CHECK(measurement_valid(TaskVelocity{0.1 + kTol.eps_mg / 2.0, 0.0, 0.0}, gt, kTol));
}

TEST_CASE("entrapment ties resolve to not satisfied") {
    // ||x_g|| exactly eps_zero fails the first conjunct.
    const TaskVelocity gt{kTol.eps_zero, 0.0, 0.0};
    const TaskVelocity assumed{2.0, 0.0, 0.0};
    CHECK_FALSE(entrapped_ground_truth(assumed, gt, kTol));
    // Divergence exactly eps_ag fails the second conjunct.
    const TaskVelocity a2{kTol.eps_ag, 0.0, 0.0};
    CHECK_FALSE(entrapped_ground_truth(a2, TaskVelocity{}, kTol));
}

TEST_CASE("stacked norm weights yaw by the characteristic length") {
    const TaskVelocity x{0.0, 0.0, 1.0};
    CHECK(stacked_norm(x, 0.4) == doctest::Approx(0.4));
    CHECK(stacked_norm(TaskVelocity{3.0, 4.0, 0.0}, 0.4) == doctest::Approx(5.0));
}

TEST_CASE("tolerances validation") {
    Tolerances bad = kTol;
    bad.eps_mg = bad.eps_ag;  // must be strictly smaller
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = kTol;
    bad.eps_zero = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    CHECK_NOTHROW(kTol.validate());
}
