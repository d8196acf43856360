#pragma once

#include <iosfwd>
#include <string>

#include "entrap/bayes.hpp"
#include "entrap/detector.hpp"

namespace entrap {

/// Full run configuration: geometry, tolerances, weights, and detector
/// knobs. Every field has a config-file equivalent; CLI flags win.
struct RunConfig {
    DetectorConfig detector;  // carries geometry, tolerances, weights

    void validate() const { detector.validate(); }
};

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(std::istream& in);

/// Model file: four named entries divergence.{diverged,consistent} and
/// movement.{moving,stopped}, each {kind, mu, var}.
ClassifierModels load_models(const std::string& path);
ClassifierModels parse_models(std::istream& in);

/// Deterministic serialization; identical models give identical bytes.
std::string models_to_string(const ClassifierModels& models);
void save_models(const std::string& path, const ClassifierModels& models);

}  // namespace entrap
