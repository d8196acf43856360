#include <sstream>

#include <doctest.h>

#include "entrap/config.hpp"
#include "entrap/errors.hpp"

using namespace entrap;

#ifndef ENTRAP_DATA_DIR
#error "ENTRAP_DATA_DIR must point at the shipped data directory"
#endif

namespace {
const std::string kDataDir = ENTRAP_DATA_DIR;
}

TEST_CASE("shipped default model file carries the reference parameters") {
    const ClassifierModels m = load_models(kDataDir + "/default_models.json");
    CHECK(m.divergence_diverged.kind == ModelKind::gaussian);
    CHECK(m.divergence_diverged.mu == doctest::Approx(0.426055));
    CHECK(m.divergence_diverged.var == doctest::Approx(0.011208));
    CHECK(m.divergence_consistent.kind == ModelKind::half_gaussian);
    CHECK(m.divergence_consistent.var == doctest::Approx(0.042947));
    CHECK(m.movement_moving.mu == doctest::Approx(0.252618));
    CHECK(m.movement_moving.var == doctest::Approx(0.022222));
    CHECK(m.movement_stopped.var == doctest::Approx(0.000137));
}

TEST_CASE("shipped default config parses and validates") {
    const RunConfig cfg = load_run_config(kDataDir + "/default_config.json");
    CHECK(cfg.detector.clamp_eps == doctest::Approx(0.01));
    CHECK(cfg.detector.decision_threshold == doctest::Approx(0.9));
    CHECK(cfg.detector.persistence_steps == 10);
    CHECK(cfg.detector.prior_mode == PriorMode::recursive);
    CHECK(cfg.detector.geometry.wheelbase == doctest::Approx(0.4));
}

TEST_CASE("model serialization round trips and is deterministic") {
    const ClassifierModels m = load_models(kDataDir + "/default_models.json");
    const std::string a = models_to_string(m);
    std::istringstream in(a);
    const ClassifierModels reparsed = parse_models(in);
    CHECK(models_to_string(reparsed) == a);
    CHECK(reparsed.divergence_diverged.mu == m.divergence_diverged.mu);
    CHECK(reparsed.movement_stopped.var == m.movement_stopped.var);
}

TEST_CASE("model file validation errors") {
    std::istringstream missing(R"({"divergence":{}})");
    CHECK_THROWS_AS(parse_models(missing), ParseError);

    std::istringstream bad_kind(R"({
      "divergence": {
        "diverged": {"kind":"cauchy","mu":0,"var":1},
        "consistent": {"kind":"half_gaussian","mu":0,"var":1}
      },
      "movement": {
        "moving": {"kind":"gaussian","mu":0,"var":1},
        "stopped": {"kind":"half_gaussian","mu":0,"var":1}
      }
    })");
    CHECK_THROWS_AS(parse_models(bad_kind), ParseError);

    std::istringstream bad_var(R"({
      "divergence": {
        "diverged": {"kind":"gaussian","mu":0,"var":0},
        "consistent": {"kind":"half_gaussian","mu":0,"var":1}
      },
      "movement": {
        "moving": {"kind":"gaussian","mu":0,"var":1},
        "stopped": {"kind":"half_gaussian","mu":0,"var":1}
      }
    })");
    CHECK_THROWS_AS(parse_models(bad_var), ParseError);
}

TEST_CASE("config file errors") {
    std::istringstream bad_r(R"({"weights":{"R":[1,0,0]}})");
    CHECK_THROWS_AS(parse_run_config(bad_r), ParseError);

    std::istringstream bad_mode(R"({"detector":{"prior_mode":"sometimes"}})");
    CHECK_THROWS_AS(parse_run_config(bad_mode), ParseError);

    std::istringstream bad_clamp(R"({"detector":{"clamp_eps":0.7}})");
    CHECK_THROWS_AS(parse_run_config(bad_clamp), ParseError);

    std::istringstream empty("{}");
    CHECK_NOTHROW(parse_run_config(empty));
}
