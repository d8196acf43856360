// Command-line front end: fit models, simulate scenarios, run detection
// over traces, and evaluate against labels.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entrap/bayes.hpp"
#include "entrap/config.hpp"
#include "entrap/detector.hpp"
#include "entrap/errors.hpp"
#include "entrap/simulator.hpp"
#include "entrap/telemetry.hpp"

namespace {

using namespace entrap;

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kFitDegenerate = 3 };

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("ENTRAP_LOG");
    if (!env) return LogLevel::error;
    const std::string v = env;
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    return LogLevel::error;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[info] " << msg << "\n";
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

RunConfig config_from(const std::string& config_path) {
    if (config_path.empty()) return RunConfig{};
    return load_run_config(config_path);
}

std::string detect_record(const StatusEstimate& e) {
    std::string out = "{\"t_ms\":" + std::to_string(e.t_ms);
    out += ",\"q\":" + fmt(e.q_value);
    out += ",\"speed\":" + fmt(e.speed);
    out += ",\"p_diverged\":" + fmt(e.belief.p_diverged);
    out += ",\"p_stopped\":" + fmt(e.belief.p_stopped);
    out += ",\"p_status_entrapped\":" + fmt(e.status.p_entrapped);
    out += ",\"p_status_slipping\":" + fmt(e.status.p_slipping);
    out += ",\"p_status_moving\":" + fmt(e.status.p_moving);
    out += ",\"p_status_stopped\":" + fmt(e.status.p_stopped);
    out += std::string(",\"decided\":") + (e.decided_entrapped ? "true" : "false");
    out += std::string(",\"degenerate\":") + (e.evidence_degenerate ? "true" : "false");
    out += "}";
    return out;
}

int run_fit(const std::string& trace_path, const std::string& config_path, double cutoff,
            const std::string& out_path) {
    const RunConfig cfg = config_from(config_path);
    const Trace trace = load_trace(trace_path);
    log_info("loaded " + std::to_string(trace.samples.size()) + " samples");

    const TrainingSets sets =
        extract_training_sets(trace, cfg.detector.geometry, cfg.detector.weights);
    const std::vector<double> diverged_q = preprocess_diverged(sets.diverged_q, cutoff);

    ClassifierModels models;
    try {
        if (diverged_q.empty()) {
            throw FitError("class 'divergence.diverged' is empty after preprocessing");
        }
        models.divergence_diverged = fit_gaussian(diverged_q);
        if (sets.consistent_q.empty()) throw FitError("class 'divergence.consistent' is empty");
        models.divergence_consistent = fit_half_gaussian(sets.consistent_q);
        if (sets.moving_speed.empty()) throw FitError("class 'movement.moving' is empty");
        models.movement_moving = fit_gaussian(sets.moving_speed);
        if (sets.stopped_speed.empty()) throw FitError("class 'movement.stopped' is empty");
        models.movement_stopped = fit_half_gaussian(sets.stopped_speed);
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return kFitDegenerate;
    }

    auto print = [](const char* name, const ConditionalModel& m) {
        std::cout << name << ": mu=" << fmt(m.mu) << " var=" << fmt(m.var) << "\n";
    };
    print("divergence.diverged", models.divergence_diverged);
    print("divergence.consistent", models.divergence_consistent);
    print("movement.moving", models.movement_moving);
    print("movement.stopped", models.movement_stopped);

    if (!out_path.empty()) {
        save_models(out_path, models);
        log_info("wrote model file " + out_path);
    }
    return kOk;
}

std::vector<ScriptSegment> parse_script(const std::string& text) {
    std::vector<ScriptSegment> script;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) {
            throw ValidationError("script segment '" + part + "' must be START_MS:KIND");
        }
        ScriptSegment seg;
        seg.start_ms = std::stoll(part.substr(0, colon));
        const auto kind = scenario_kind_from_string(part.substr(colon + 1));
        if (!kind) throw ValidationError("unknown scenario kind in script: " + part);
        seg.kind = *kind;
        script.push_back(seg);
    }
    return script;
}

int run_simulate(const std::string& kind_name, std::int64_t duration_ms, std::uint64_t seed,
                 double command_speed, const std::string& script_text,
                 const std::string& config_path, const std::string& out_path) {
    const RunConfig cfg = config_from(config_path);

    Scenario scenario;
    const auto kind = scenario_kind_from_string(kind_name);
    if (!kind) {
        std::cerr << "unknown scenario kind: " << kind_name << "\n";
        return kUsage;
    }
    scenario.kind = *kind;
    scenario.duration_ms = duration_ms;
    scenario.seed = seed;
    scenario.command_speed = command_speed;
    if (!script_text.empty()) scenario.script = parse_script(script_text);

    const Trace trace = simulate(scenario, cfg.detector.geometry);
    if (out_path.empty()) {
        write_trace(std::cout, trace);
    } else {
        write_trace(out_path, trace);
        log_info("wrote " + std::to_string(trace.samples.size()) + " samples to " + out_path);
    }
    return kOk;
}

int run_detect(const std::string& trace_path, const std::string& model_path,
               const std::string& config_path, const std::string& out_path) {
    const RunConfig cfg = config_from(config_path);
    const ClassifierModels models = load_models(model_path);
    const Trace trace = load_trace(trace_path);

    Detector detector(cfg.detector, models);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ParseError("cannot open output file: " + out_path);
        out = &file;
    }
    for (const auto& sample : trace.samples) {
        *out << detect_record(detector.step(sample)) << "\n";
    }
    return kOk;
}

int run_eval(const std::string& trace_path, const std::string& model_path,
             const std::string& config_path) {
    const RunConfig cfg = config_from(config_path);
    const ClassifierModels models = load_models(model_path);
    const Trace trace = load_trace(trace_path);

    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        if (!trace.samples[i].label || !trace.samples[i].has_ground_truth()) {
            throw ParseError("eval requires labels and ground truth (sample " +
                             std::to_string(i) + ")");
        }
    }

    Detector detector(cfg.detector, models);
    std::size_t correct = 0;
    std::size_t gt_agree = 0;
    std::size_t false_alarms = 0;
    bool prev_decided = false;
    std::optional<std::size_t> onset_step;
    std::optional<std::size_t> latency_steps;
    Status prev_label = Status::moving;

    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const TelemetrySample& s = trace.samples[i];
        const StatusEstimate est = detector.step(s);

        const StatusDistribution& d = est.status;
        Status argmax = Status::entrapped;
        double best = d.p_entrapped;
        if (d.p_slipping > best) { best = d.p_slipping; argmax = Status::slipping; }
        if (d.p_moving > best) { best = d.p_moving; argmax = Status::moving; }
        if (d.p_stopped > best) { argmax = Status::stopped; }

        if (argmax == *s.label) ++correct;

        const TaskVelocity assumed = assumed_velocity(s.joints(), cfg.detector.geometry);
        const bool gt_entrapped =
            entrapped_ground_truth(assumed, s.ground_truth(), cfg.detector.tolerances);
        if ((argmax == Status::entrapped) == gt_entrapped) ++gt_agree;

        if (i > 0 && *s.label == Status::entrapped && prev_label != Status::entrapped &&
            !onset_step) {
            onset_step = i;
        }
        if (est.decided_entrapped && !prev_decided) {
            if (onset_step && !latency_steps && i >= *onset_step) {
                latency_steps = i - *onset_step + 1;
            } else if (*s.label != Status::entrapped) {
                ++false_alarms;
            }
        }
        prev_decided = est.decided_entrapped;
        prev_label = *s.label;
    }

    const double n = static_cast<double>(trace.samples.size());
    std::cout << "samples: " << trace.samples.size() << "\n";
    std::cout << "argmax_accuracy: " << fmt(n > 0 ? correct / n : 0.0) << "\n";
    std::cout << "gt_agreement: " << fmt(n > 0 ? gt_agree / n : 0.0) << "\n";
    std::cout << "false_alarms: " << false_alarms << "\n";
    if (latency_steps) {
        std::cout << "detection_latency_steps: " << *latency_steps << "\n";
    } else {
        std::cout << "detection_latency_steps: n/a\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rover entrapment detection toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "Run configuration file (JSON)");

    auto* fit = app.add_subcommand("fit", "Fit classifier models from a labeled trace");
    std::string fit_trace, fit_out;
    double fit_cutoff = 0.075;
    fit->add_option("--trace", fit_trace, "Labeled input trace")->required();
    fit->add_option("--cutoff", fit_cutoff, "Low-divergence preprocessing cutoff");
    fit->add_option("--out", fit_out, "Output model file");

    auto* sim = app.add_subcommand("simulate", "Generate a synthetic trace");
    std::string sim_kind = "flat", sim_script, sim_out;
    std::int64_t sim_duration = 60000;
    std::uint64_t sim_seed = 0;
    double sim_speed = 0.25;
    sim->add_option("--kind", sim_kind,
                    "flat | rocky | entrapped_jiggling | high_centered | scripted");
    sim->add_option("--duration-ms", sim_duration, "Trace duration [ms]");
    sim->add_option("--seed", sim_seed, "Random seed");
    sim->add_option("--command-speed", sim_speed, "Commanded ground speed [m/s]");
    sim->add_option("--script", sim_script, "Segments START_MS:KIND,... (scripted kind)");
    sim->add_option("--out", sim_out, "Output trace file (default stdout)");

    auto* det = app.add_subcommand("detect", "Run the detector over a trace");
    std::string det_trace, det_model, det_out;
    det->add_option("--trace", det_trace, "Input trace")->required();
    det->add_option("--model", det_model, "Model file")->required();
    det->add_option("--out", det_out, "Output stream file (default stdout)");

    auto* ev = app.add_subcommand("eval", "Evaluate detection against labels");
    std::string ev_trace, ev_model;
    ev->add_option("--trace", ev_trace, "Labeled input trace with ground truth")->required();
    ev->add_option("--model", ev_model, "Model file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (fit->parsed()) return run_fit(fit_trace, config_path, fit_cutoff, fit_out);
        if (sim->parsed()) {
            return run_simulate(sim_kind, sim_duration, sim_seed, sim_speed, sim_script,
                                config_path, sim_out);
        }
        if (det->parsed()) return run_detect(det_trace, det_model, config_path, det_out);
        if (ev->parsed()) return run_eval(ev_trace, ev_model, config_path);
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kDataError;
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return kFitDegenerate;
    }
    return kUsage;
}
