#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entrap/criteria.hpp"
#include "entrap/kinematics.hpp"
#include "entrap/status.hpp"

namespace entrap {

/// One timestamped telemetry record: encoder readings, tracker velocity,
/// and (in simulation) ground truth and a scenario label.
struct TelemetrySample {
    std::int64_t t_ms = 0;
    std::array<double, 4> wheel_vel{};  ///< [rad/s]
    std::array<double, 2> steer{};      ///< [rad]
    double meas_vx = 0.0;
    double meas_vy = 0.0;
    double meas_omega = 0.0;
    std::optional<double> gt_vx;
    std::optional<double> gt_vy;
    std::optional<double> gt_omega;
    std::optional<Status> label;

    JointState joints() const { return JointState{wheel_vel, steer}; }
    TaskVelocity measured() const { return TaskVelocity{meas_vx, meas_vy, meas_omega}; }
    bool has_ground_truth() const { return gt_vx.has_value(); }
    TaskVelocity ground_truth() const { return TaskVelocity{*gt_vx, *gt_vy, *gt_omega}; }

    bool operator==(const TelemetrySample&) const = default;
};

/// Scenario provenance carried on the trace's leading `_meta` line.
struct TraceMeta {
    std::string scenario;
    std::uint64_t seed = 0;
    RoverGeometry geometry;
};

struct Trace {
    std::vector<TelemetrySample> samples;
    std::optional<TraceMeta> meta;
};

/// Parses one line-delimited record. Unknown keys are rejected; errors name
/// the offending key. Does not accept `_meta` lines.
TelemetrySample parse_record(const std::string& line);

/// Serializes one record, numbers rendered at 9 significant digits.
std::string write_record(const TelemetrySample& sample);

Trace load_trace(std::istream& in);
Trace load_trace(const std::string& path);

void write_trace(std::ostream& out, const Trace& trace);
void write_trace(const std::string& path, const Trace& trace);

/// Per-class scalar training sets extracted from a fully labeled trace.
/// entrapped/slipping -> diverged, moving/stopped -> consistent;
/// moving/slipping -> moving, entrapped/stopped -> stopped.
struct TrainingSets {
    std::vector<double> diverged_q;
    std::vector<double> consistent_q;
    std::vector<double> moving_speed;
    std::vector<double> stopped_speed;
};

TrainingSets extract_training_sets(const Trace& trace, const RoverGeometry& geom,
                                   const DivergenceWeights& weights);

}  // namespace entrap
