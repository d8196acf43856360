#include "entrap/telemetry.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entrap/batch.hpp"
#include "entrap/errors.hpp"

namespace entrap {

namespace {

using nlohmann::json;

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double require_finite(const json& j, const char* key) {
    if (!j.is_number()) throw ParseError(std::string("key '") + key + "' is not a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(std::string("key '") + key + "' is not finite");
    return v;
}

}  // namespace

TelemetrySample parse_record(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed record: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("record is not an object");

    static const char* kKnown[] = {"t_ms", "wheel_vel", "steer", "meas_vx", "meas_vy",
                                   "meas_omega", "gt_vx", "gt_vy", "gt_omega", "label"};
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : kKnown) {
            if (key == k) { known = true; break; }
        }
        if (!known) throw ParseError("unknown key '" + key + "'");
    }

    auto require = [&](const char* key) -> const json& {
        auto it = j.find(key);
        if (it == j.end()) throw ParseError(std::string("missing required key '") + key + "'");
        return *it;
    };

    TelemetrySample s;
    const json& t = require("t_ms");
    if (!t.is_number_integer() || t.get<std::int64_t>() < 0) {
        throw ParseError("key 't_ms' must be a nonnegative integer");
    }
    s.t_ms = t.get<std::int64_t>();

    const json& wv = require("wheel_vel");
    if (!wv.is_array() || wv.size() != 4) throw ParseError("key 'wheel_vel' must have 4 elements");
    for (int i = 0; i < 4; ++i) s.wheel_vel[i] = require_finite(wv[i], "wheel_vel");

    const json& st = require("steer");
    if (!st.is_array() || st.size() != 2) throw ParseError("key 'steer' must have 2 elements");
    for (int i = 0; i < 2; ++i) s.steer[i] = require_finite(st[i], "steer");

    s.meas_vx = require_finite(require("meas_vx"), "meas_vx");
    s.meas_vy = require_finite(require("meas_vy"), "meas_vy");
    s.meas_omega = require_finite(require("meas_omega"), "meas_omega");

    const bool has_gt = j.contains("gt_vx") || j.contains("gt_vy") || j.contains("gt_omega");
    if (has_gt) {
        if (!j.contains("gt_vx") || !j.contains("gt_vy") || !j.contains("gt_omega")) {
            throw ParseError("keys 'gt_vx', 'gt_vy', 'gt_omega' must appear together");
        }
        s.gt_vx = require_finite(j["gt_vx"], "gt_vx");
        s.gt_vy = require_finite(j["gt_vy"], "gt_vy");
        s.gt_omega = require_finite(j["gt_omega"], "gt_omega");
    }

    if (auto it = j.find("label"); it != j.end()) {
        if (!it->is_string()) throw ParseError("key 'label' must be a string");
        auto parsed = status_from_string(it->get<std::string>());
        if (!parsed) throw ParseError("key 'label' has unknown value '" + it->get<std::string>() + "'");
        s.label = *parsed;
    }
    return s;
}

std::string write_record(const TelemetrySample& s) {
    std::string out;
    out.reserve(256);
    out += "{\"t_ms\":" + std::to_string(s.t_ms);
    out += ",\"wheel_vel\":[";
    for (int i = 0; i < 4; ++i) {
        if (i) out += ',';
        out += fmt_num(s.wheel_vel[i]);
    }
    out += "],\"steer\":[" + fmt_num(s.steer[0]) + ',' + fmt_num(s.steer[1]) + ']';
    out += ",\"meas_vx\":" + fmt_num(s.meas_vx);
    out += ",\"meas_vy\":" + fmt_num(s.meas_vy);
    out += ",\"meas_omega\":" + fmt_num(s.meas_omega);
    if (s.gt_vx) {
        out += ",\"gt_vx\":" + fmt_num(*s.gt_vx);
        out += ",\"gt_vy\":" + fmt_num(*s.gt_vy);
        out += ",\"gt_omega\":" + fmt_num(*s.gt_omega);
    }
    if (s.label) {
        out += ",\"label\":\"";
        out += to_string(*s.label);
        out += '"';
    }
    out += '}';
    return out;
}

namespace {

std::optional<TraceMeta> parse_meta_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error&) {
        return std::nullopt;
    }
    if (!j.is_object() || !j.contains("_meta")) return std::nullopt;

    const json& m = j["_meta"];
    TraceMeta meta;
    meta.scenario = m.value("scenario", std::string{});
    meta.seed = m.value("seed", std::uint64_t{0});
    if (m.contains("geometry")) {
        const json& g = m["geometry"];
        meta.geometry.wheelbase = g.value("wheelbase", meta.geometry.wheelbase);
        meta.geometry.track_width = g.value("track_width", meta.geometry.track_width);
        meta.geometry.wheel_radius = g.value("wheel_radius", meta.geometry.wheel_radius);
    }
    return meta;
}

}  // namespace

Trace load_trace(std::istream& in) {
    Trace trace;
    std::string line;
    std::size_t line_no = 0;
    std::size_t prev_line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1) {
            if (auto meta = parse_meta_line(line)) {
                trace.meta = std::move(meta);
                continue;
            }
        }
        TelemetrySample sample;
        try {
            sample = parse_record(line);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!trace.samples.empty()) {
            const auto prev_t = trace.samples.back().t_ms;
            if (sample.t_ms == prev_t) {
                throw ParseError("duplicate timestamp " + std::to_string(sample.t_ms) +
                                 " at lines " + std::to_string(prev_line_no) + " and " +
                                 std::to_string(line_no));
            }
            if (sample.t_ms < prev_t) {
                throw ParseError("timestamp regression at line " + std::to_string(line_no));
            }
        }
        trace.samples.push_back(sample);
        prev_line_no = line_no;
    }
    return trace;
}

Trace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace file: " + path);
    return load_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace) {
    if (trace.meta) {
        const TraceMeta& m = *trace.meta;
        out << "{\"_meta\":{\"scenario\":\"" << m.scenario << "\",\"seed\":" << m.seed
            << ",\"geometry\":{\"wheelbase\":" << fmt_num(m.geometry.wheelbase)
            << ",\"track_width\":" << fmt_num(m.geometry.track_width)
            << ",\"wheel_radius\":" << fmt_num(m.geometry.wheel_radius) << "}}}\n";
    }
    for (const auto& s : trace.samples) {
        out << write_record(s) << '\n';
    }
}

void write_trace(const std::string& path, const Trace& trace) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    write_trace(out, trace);
}

TrainingSets extract_training_sets(const Trace& trace, const RoverGeometry& geom,
                                   const DivergenceWeights& weights) {
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        if (!trace.samples[i].label) {
            throw ValidationError("unlabeled sample at index " + std::to_string(i));
        }
    }
    const auto features = batch::compute_features(trace.samples, geom, weights);

    TrainingSets sets;
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const Status label = *trace.samples[i].label;
        const bool diverged = label == Status::entrapped || label == Status::slipping;
        const bool stopped = label == Status::entrapped || label == Status::stopped;
        (diverged ? sets.diverged_q : sets.consistent_q).push_back(features[i].q);
        (stopped ? sets.stopped_speed : sets.moving_speed).push_back(features[i].speed);
    }
    return sets;
}

}  // namespace entrap
