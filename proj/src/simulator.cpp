#include "entrap/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "entrap/batch.hpp"
#include "entrap/errors.hpp"

namespace entrap {

namespace {

// Seedable cross-platform noise source: mt19937_64 driving Box-Muller,
// truncated at +/-2.5 sigma by rejection.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}

    double truncated_gaussian(double sigma) {
        if (sigma == 0.0) return 0.0;
        double z = standard_normal();
        while (std::abs(z) > kTruncation) z = standard_normal();
        return sigma * z;
    }

private:
    double standard_normal() {
        if (cached_) {
            cached_ = false;
            return cache_;
        }
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double u1 = unit(engine_);
        while (u1 <= 0.0) u1 = unit(engine_);
        const double u2 = unit(engine_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        cache_ = r * std::sin(theta);
        cached_ = true;
        return r * std::cos(theta);
    }

    static constexpr double kTruncation = 2.5;
    std::mt19937_64 engine_;
    double cache_ = 0.0;
    bool cached_ = false;
};

bool is_entrapped_kind(ScenarioKind kind) {
    return kind == ScenarioKind::high_centered || kind == ScenarioKind::entrapped_jiggling;
}

Status label_for(ScenarioKind kind) {
    return is_entrapped_kind(kind) ? Status::entrapped : Status::moving;
}

ScenarioKind kind_at(const Scenario& scenario, std::int64_t t_ms) {
    if (scenario.kind != ScenarioKind::scripted) return scenario.kind;
    ScenarioKind current = scenario.script.front().kind;
    for (const auto& seg : scenario.script) {
        if (t_ms >= seg.start_ms) current = seg.kind;
    }
    return current;
}

ClassStats stats_of(const std::vector<double>& xs) {
    ClassStats s;
    s.count = xs.size();
    if (xs.empty()) return s;
    const double n = static_cast<double>(xs.size());
    s.mean = batch::sum(xs) / n;
    s.mean_square = batch::sum_squares(xs) / n;
    s.var = s.mean_square - s.mean * s.mean;
    return s;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::flat: return "flat";
        case ScenarioKind::rocky: return "rocky";
        case ScenarioKind::entrapped_jiggling: return "entrapped_jiggling";
        case ScenarioKind::high_centered: return "high_centered";
        case ScenarioKind::scripted: return "scripted";
    }
    return "unknown";
}

std::optional<ScenarioKind> scenario_kind_from_string(std::string_view text) {
    if (text == "flat") return ScenarioKind::flat;
    if (text == "rocky") return ScenarioKind::rocky;
    if (text == "entrapped_jiggling") return ScenarioKind::entrapped_jiggling;
    if (text == "high_centered") return ScenarioKind::high_centered;
    if (text == "scripted") return ScenarioKind::scripted;
    return std::nullopt;
}

NoiseParams NoiseParams::defaults_for(ScenarioKind kind) {
    NoiseParams p;
    switch (kind) {
        case ScenarioKind::flat:
        case ScenarioKind::scripted:
            break;  // struct defaults are the flat calibration
        case ScenarioKind::rocky:
            p.encoder_sigma = 0.2;
            p.tracker_v_sigma = 0.08;
            p.tracker_omega_sigma = 0.04;
            break;
        case ScenarioKind::high_centered:
            // Truncated worst case keeps the divergence above eps_ag on
            // every sample: 0.426 - 0.09 * 2.5 * sigma > 0.15.
            p.encoder_sigma = 1.0;
            p.tracker_v_sigma = 0.00867;
            p.tracker_omega_sigma = 0.01;
            break;
        case ScenarioKind::entrapped_jiggling:
            p.encoder_sigma = 0.8;
            p.tracker_v_sigma = 0.00867;
            p.tracker_omega_sigma = 0.01;
            break;
    }
    return p;
}

void NoiseParams::validate() const {
    if (encoder_sigma < 0.0 || tracker_v_sigma < 0.0 || tracker_omega_sigma < 0.0 ||
        jiggle_amplitude < 0.0 || jiggle_period_ms <= 0.0) {
        throw ValidationError("noise parameters must be nonnegative");
    }
}

void Scenario::validate() const {
    if (duration_ms <= 0) throw ValidationError("scenario duration must be positive");
    if (!(command_speed > 0.0)) throw ValidationError("command speed must be positive");
    if (noise) noise->validate();
    if (kind == ScenarioKind::scripted) {
        if (script.empty()) throw ValidationError("scripted scenario requires segments");
        if (script.front().start_ms != 0) {
            throw ValidationError("scripted segments must start at t=0");
        }
        for (std::size_t i = 1; i < script.size(); ++i) {
            if (script[i].start_ms <= script[i - 1].start_ms) {
                throw ValidationError("scripted segment starts must be increasing");
            }
            if (script[i].kind == ScenarioKind::scripted) {
                throw ValidationError("scripted segment cannot nest scripted kind");
            }
        }
    } else if (!script.empty()) {
        throw ValidationError("script only valid for the scripted kind");
    }
}

Trace simulate(const Scenario& scenario, const RoverGeometry& geom) {
    scenario.validate();
    geom.validate();

    NoiseSource rng(scenario.seed);
    Trace trace;
    trace.meta = TraceMeta{std::string(to_string(scenario.kind)), scenario.seed, geom};

    const std::int64_t num_samples = scenario.duration_ms / kSamplePeriodMs;
    trace.samples.reserve(static_cast<std::size_t>(num_samples));

    for (std::int64_t i = 0; i < num_samples; ++i) {
        const std::int64_t t_ms = i * kSamplePeriodMs;
        const ScenarioKind kind = kind_at(scenario, t_ms);
        const NoiseParams noise = scenario.noise.value_or(NoiseParams::defaults_for(kind));
        const bool entrapped = is_entrapped_kind(kind);

        const double surface_speed =
            entrapped ? scenario.command_speed * scenario.entrapped_spin_scale
                      : scenario.command_speed;
        const double wheel_rate = surface_speed / geom.wheel_radius;

        TelemetrySample s;
        s.t_ms = t_ms;
        for (int w = 0; w < 4; ++w) {
            s.wheel_vel[w] = wheel_rate + rng.truncated_gaussian(noise.encoder_sigma);
        }
        s.steer = {0.0, 0.0};

        double gt_vx = 0.0;
        if (!entrapped) {
            gt_vx = scenario.command_speed;
        } else if (kind == ScenarioKind::entrapped_jiggling) {
            const double phase = 2.0 * std::numbers::pi *
                                 static_cast<double>(t_ms) / noise.jiggle_period_ms;
            gt_vx = noise.jiggle_amplitude * std::sin(phase);
        }
        s.gt_vx = gt_vx;
        s.gt_vy = 0.0;
        s.gt_omega = 0.0;

        s.meas_vx = gt_vx + rng.truncated_gaussian(noise.tracker_v_sigma);
        s.meas_vy = rng.truncated_gaussian(noise.tracker_v_sigma);
        s.meas_omega = rng.truncated_gaussian(noise.tracker_omega_sigma);

        s.label = label_for(kind);
        trace.samples.push_back(s);
    }
    return trace;
}

CalibrationReport calibration_report(const Trace& trace, const RoverGeometry& geom,
                                     const DivergenceWeights& weights) {
    const TrainingSets sets = extract_training_sets(trace, geom, weights);
    CalibrationReport report;
    report.diverged_q = stats_of(sets.diverged_q);
    report.consistent_q = stats_of(sets.consistent_q);
    report.moving_speed = stats_of(sets.moving_speed);
    report.stopped_speed = stats_of(sets.stopped_speed);
    return report;
}

}  // namespace entrap
