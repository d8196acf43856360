#include "entrap/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entrap/errors.hpp"

namespace entrap {

namespace {

using nlohmann::json;

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ConditionalModel parse_model(const json& j, const std::string& name) {
    if (!j.is_object()) throw ParseError("model entry '" + name + "' is not an object");
    if (!j.contains("kind") || !j.contains("mu") || !j.contains("var")) {
        throw ParseError("model entry '" + name + "' requires kind, mu, var");
    }
    ConditionalModel m;
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "gaussian") {
        m.kind = ModelKind::gaussian;
    } else if (kind == "half_gaussian") {
        m.kind = ModelKind::half_gaussian;
    } else {
        throw ParseError("model entry '" + name + "' has unknown kind '" + kind + "'");
    }
    m.mu = j["mu"].get<double>();
    m.var = j["var"].get<double>();
    try {
        m.validate();
    } catch (const ValidationError& e) {
        throw ParseError("model entry '" + name + "': " + e.what());
    }
    return m;
}

json load_json(std::istream& in, const char* what) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed ") + what + ": " + e.what());
    }
    return j;
}

}  // namespace

ClassifierModels parse_models(std::istream& in) {
    const json j = load_json(in, "model file");
    if (!j.is_object() || !j.contains("divergence") || !j.contains("movement")) {
        throw ParseError("model file requires 'divergence' and 'movement' sections");
    }
    ClassifierModels m;
    m.divergence_diverged = parse_model(j["divergence"]["diverged"], "divergence.diverged");
    m.divergence_consistent = parse_model(j["divergence"]["consistent"], "divergence.consistent");
    m.movement_moving = parse_model(j["movement"]["moving"], "movement.moving");
    m.movement_stopped = parse_model(j["movement"]["stopped"], "movement.stopped");
    return m;
}

ClassifierModels load_models(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file: " + path);
    return parse_models(in);
}

std::string models_to_string(const ClassifierModels& models) {
    auto entry = [](const ConditionalModel& m) {
        std::string out = "{\"kind\":\"";
        out += m.kind == ModelKind::gaussian ? "gaussian" : "half_gaussian";
        out += "\",\"mu\":" + fmt_num(m.mu) + ",\"var\":" + fmt_num(m.var) + "}";
        return out;
    };
    std::string out = "{\n  \"divergence\": {\n";
    out += "    \"diverged\": " + entry(models.divergence_diverged) + ",\n";
    out += "    \"consistent\": " + entry(models.divergence_consistent) + "\n  },\n";
    out += "  \"movement\": {\n";
    out += "    \"moving\": " + entry(models.movement_moving) + ",\n";
    out += "    \"stopped\": " + entry(models.movement_stopped) + "\n  }\n}\n";
    return out;
}

void save_models(const std::string& path, const ClassifierModels& models) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << models_to_string(models);
}

RunConfig parse_run_config(std::istream& in) {
    const json j = load_json(in, "config file");
    if (!j.is_object()) throw ParseError("config file is not an object");

    RunConfig cfg;
    DetectorConfig& d = cfg.detector;

    if (j.contains("geometry")) {
        const json& g = j["geometry"];
        d.geometry.wheelbase = g.value("wheelbase", d.geometry.wheelbase);
        d.geometry.track_width = g.value("track_width", d.geometry.track_width);
        d.geometry.wheel_radius = g.value("wheel_radius", d.geometry.wheel_radius);
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        d.tolerances.eps_zero = t.value("eps_zero", d.tolerances.eps_zero);
        d.tolerances.eps_ag = t.value("eps_ag", d.tolerances.eps_ag);
        d.tolerances.eps_mg = t.value("eps_mg", d.tolerances.eps_mg);
        d.tolerances.char_length = t.value("char_length", d.tolerances.char_length);
    }
    if (j.contains("weights")) {
        const json& w = j["weights"];
        if (!w.contains("R") || !w["R"].is_array() || w["R"].size() != 4) {
            throw ParseError("weights.R must be a row-major 4-element array");
        }
        std::array<double, 4> m{};
        for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)] = w["R"][i].get<double>();
        try {
            d.weights = DivergenceWeights::from_matrix(m);
        } catch (const ValidationError& e) {
            throw ParseError(std::string("weights.R: ") + e.what());
        }
    }
    if (j.contains("detector")) {
        const json& det = j["detector"];
        d.clamp_eps = det.value("clamp_eps", d.clamp_eps);
        d.decision_threshold = det.value("decision_threshold", d.decision_threshold);
        d.persistence_steps = det.value("persistence_steps", d.persistence_steps);
        d.sample_period_ms = det.value("sample_period_ms", d.sample_period_ms);
        if (det.contains("prior_mode")) {
            const std::string mode = det["prior_mode"].get<std::string>();
            if (mode == "recursive") {
                d.prior_mode = PriorMode::recursive;
            } else if (mode == "fixed") {
                d.prior_mode = PriorMode::fixed;
            } else {
                throw ParseError("detector.prior_mode must be 'recursive' or 'fixed'");
            }
        }
    }
    try {
        cfg.validate();
    } catch (const ValidationError& e) {
        throw ParseError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    return parse_run_config(in);
}

}  // namespace entrap
