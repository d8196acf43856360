#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "entrap/batch.hpp"
#include "entrap/simulator.hpp"

using namespace entrap;

TEST_CASE("parallel feature kernel matches the serial reference bit for bit") {
    Scenario s;
    s.kind = ScenarioKind::rocky;
    s.duration_ms = 120000;
    s.seed = 4;
    const RoverGeometry geom;
    const Trace trace = simulate(s, geom);
    const auto weights = DivergenceWeights::from_matrix({2.0, 0.3, 0.3, 1.0});

    const auto serial = batch::compute_features_serial(trace.samples, geom, weights);
    const auto parallel = batch::compute_features(trace.samples, geom, weights);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].q == parallel[i].q);
        CHECK(serial[i].speed == parallel[i].speed);
    }
}

TEST_CASE("blocked reductions agree with the serial reference") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> num(-1.0, 1.0);
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{4095}, std::size_t{4096},
                          std::size_t{4097}, std::size_t{100000}}) {
        std::vector<double> xs(n);
        for (auto& x : xs) x = num(rng);

        const double s1 = batch::sum_serial(xs);
        const double s2 = batch::sum(xs);
        CHECK(std::abs(s1 - s2) <= 1e-9 * std::max(1.0, std::abs(s1)));

        const double q1 = batch::sum_squares_serial(xs);
        const double q2 = batch::sum_squares(xs);
        CHECK(std::abs(q1 - q2) <= 1e-9 * std::max(1.0, q1));
    }
}

TEST_CASE("blocked reductions are run-to-run deterministic") {
    std::vector<double> xs(123457);
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> num(-5.0, 5.0);
    for (auto& x : xs) x = num(rng);
    const double a = batch::sum(xs);
    const double b = batch::sum(xs);
    CHECK(a == b);
    CHECK(batch::sum_squares(xs) == batch::sum_squares(xs));
}
