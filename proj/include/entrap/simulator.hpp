#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entrap/criteria.hpp"
#include "entrap/telemetry.hpp"

namespace entrap {

enum class ScenarioKind { flat, rocky, entrapped_jiggling, high_centered, scripted };

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(std::string_view text);

/// Noise and perturbation magnitudes per scenario. Defaults are calibrated
/// per kind; see defaults_for.
struct NoiseParams {
    double encoder_sigma = 0.05;        ///< per-wheel rate noise [rad/s]
    double tracker_v_sigma = 0.005;     ///< per-axis linear tracker noise [m/s]
    double tracker_omega_sigma = 0.005; ///< tracker yaw-rate noise [rad/s]
    double jiggle_amplitude = 0.03;     ///< sinusoidal pose perturbation [m/s]
    double jiggle_period_ms = 1000.0;

    static NoiseParams defaults_for(ScenarioKind kind);
    void validate() const;
};

struct ScriptSegment {
    std::int64_t start_ms = 0;
    ScenarioKind kind = ScenarioKind::flat;
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::flat;
    std::int64_t duration_ms = 60000;
    std::uint64_t seed = 0;
    double command_speed = 0.25;  ///< commanded ground speed [m/s]
    /// Wheel-rate multiplier while entrapped; calibrated so the mean
    /// divergence of entrapped traces lands near the shipped model mean.
    double entrapped_spin_scale = 1.70422;
    std::optional<NoiseParams> noise;  ///< nullopt = per-kind defaults
    std::vector<ScriptSegment> script; ///< scripted kind only

    void validate() const;
};

constexpr std::int64_t kSamplePeriodMs = 10;

/// Deterministic, seedable trace generation: one sample every 10 ms,
/// ground truth and scenario label on every sample. Noise draws come from
/// mt19937_64 + Box-Muller, truncated at +/-2.5 sigma.
Trace simulate(const Scenario& scenario, const RoverGeometry& geom);

struct ClassStats {
    std::size_t count = 0;
    double mean = 0.0;
    double var = 0.0;          ///< MLE (divide by n)
    double mean_square = 0.0;  ///< the half-normal scale estimate for mode-at-zero classes
};

/// Empirical per-class statistics of Q and ||v_m|| on a labeled trace.
struct CalibrationReport {
    ClassStats diverged_q;
    ClassStats consistent_q;
    ClassStats moving_speed;
    ClassStats stopped_speed;
};

CalibrationReport calibration_report(const Trace& trace, const RoverGeometry& geom,
                                     const DivergenceWeights& weights);

}  // namespace entrap
