#include "gearsense/run_commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "gearsense/align.hpp"
#include "gearsense/chirp_fit.hpp"
#include "gearsense/count_record.hpp"
#include "gearsense/errors.hpp"
#include "gearsense/fresnel.hpp"
#include "gearsense/fringe_fit.hpp"
#include "gearsense/gear.hpp"
#include "gearsense/simulate.hpp"
#include "gearsense/spiral_plate.hpp"
#include "gearsense/uncertainty.hpp"

namespace gearsense::cli {

namespace fs = std::filesystem;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    nlohmann::json j{
        {"command", manifest.command},
        {"config_ref", manifest.config_ref},
        {"config_hash", manifest.config_hash},
        {"seed", manifest.seed},
        {"outputs", manifest.outputs},
        {"tool_version", manifest.tool_version},
        {"wall_seconds", manifest.wall_seconds},
    };
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

SimulateResult cmd_simulate(const sim::RunConfig& cfg, const std::string& config_ref,
                            const std::string& out_dir) {
    Stopwatch timer;
    cfg.validate();
    if (cfg.mode != "sweep" && cfg.mode != "chirp")
        throw ConfigError("cmd_simulate handles sweep and chirp configs; use gear-check "
                          "for gear configs");
    ensure_dir(out_dir);

    const std::string manifest_name = "manifest_simulate.json";
    SimulateResult result;
    result.manifest_path = join(out_dir, manifest_name);

    std::vector<sim::CountRecord> records;
    if (cfg.mode == "sweep") {
        records = sim::simulate_sweep(cfg.experiment, cfg.sweep->angles(),
                                      cfg.sweep->offset_c0_deg);
    } else {
        const sim::ChirpPlan& plan = *cfg.chirp;
        const double speed_final = plan.speed_start + plan.accel * plan.duration;
        const sim::ChirpModel chirp =
            sim::make_chirp(plan.theta0, plan.speed_start, speed_final, plan.duration,
                            cfg.experiment.photon_number, cfg.experiment.charge);
        records.push_back(sim::simulate_chirp(cfg.experiment, chirp, plan.bins));
    }

    RunManifest manifest;
    manifest.command = "simulate";
    manifest.config_ref = config_ref;
    manifest.config_hash = fnv1a_hex(to_json(cfg).dump());
    manifest.seed = cfg.experiment.rng_seed;

    const std::string config_copy = join(out_dir, "config.json");
    sim::save_run_config(cfg, config_copy);
    manifest.outputs.push_back(config_copy);

    for (const sim::CountRecord& record : records) {
        char name[32];
        std::snprintf(name, sizeof name, "run_%03d.csv", record.run_index);
        const std::string csv_path = join(out_dir, name);
        sim::write_record_csv_file(record, csv_path);
        sim::write_sidecar_file(record, manifest_name, sim::sidecar_path_for(csv_path));
        manifest.outputs.push_back(csv_path);
        manifest.outputs.push_back(sim::sidecar_path_for(csv_path));
        result.record_csvs.push_back(csv_path);
    }

    manifest.wall_seconds = timer.seconds();
    write_manifest(manifest, result.manifest_path);
    std::cout << "simulate: wrote " << result.record_csvs.size() << " record(s) to "
              << out_dir << "\n";
    return result;
}

namespace {

FitResult fit_fringe_records(const std::vector<sim::CountRecord>& records,
                             const std::string& out_dir) {
    const est::Alignment alignment = est::align_runs(records);
    for (int idx : alignment.failed)
        std::cout << "fit: run " << idx << " failed cross-correlation alignment\n";

    const est::AngleStats stats = est::per_angle_stats(alignment.aligned);
    est::FringeFit fit = est::fit_fringe(stats);

    std::vector<double> measured_std(stats.variance.size());
    for (size_t i = 0; i < stats.variance.size(); ++i)
        measured_std[i] = std::sqrt(stats.variance[i]);
    const est::UncertaintyCurve curve =
        est::uncertainty_curve(fit.model, stats.angles_deg, measured_std);

    FitResult result;
    result.report = est::to_json(fit);
    result.report["acq_time_s"] = stats.acq_time;
    result.report["repeats_aligned"] = static_cast<int>(alignment.aligned.size());
    result.report["alignment_failed_runs"] = alignment.failed;
    result.report["angles_deg"] = stats.angles_deg;
    result.report["measured_std"] = measured_std;
    result.report["min_dtheta_measured_deg"] = curve.min_measured_deg;
    result.report["min_dtheta_poisson_deg"] = curve.min_poisson_deg;
    result.report["manifest"] = "manifest_fit.json";

    result.report_path = join(out_dir, "fringe_fit.json");
    result.uncertainty_path = join(out_dir, "uncertainty.csv");
    std::ofstream out(result.report_path);
    if (!out) throw DataError("cannot open " + result.report_path + " for writing");
    out << result.report.dump(2) << "\n";
    est::write_uncertainty_csv_file(curve, result.uncertainty_path);

    std::cout << "fit: visibility " << fit.visibility << " +/- " << fit.err_visibility << "\n";
    std::cout << "fit: min dtheta (measured) " << curve.min_measured_deg << " deg at "
              << curve.min_measured_angle_deg << " deg\n";
    std::cout << "fit: min dtheta (poisson) " << curve.min_poisson_deg << " deg at "
              << curve.min_poisson_angle_deg << " deg\n";
    return result;
}

FitResult fit_chirp_record(const sim::CountRecord& record, const std::string& out_dir) {
    const est::ChirpFit fit =
        est::fit_chirp(record, record.config.photon_number, record.config.charge);

    FitResult result;
    result.report = est::to_json(fit);
    result.report["acq_time_s"] = record.config.acq_time;
    result.report["manifest"] = "manifest_fit.json";
    result.report_path = join(out_dir, "chirp_fit.json");
    std::ofstream out(result.report_path);
    if (!out) throw DataError("cannot open " + result.report_path + " for writing");
    out << result.report.dump(2) << "\n";

    std::cout << "fit: acceleration " << fit.acceleration_deg_s2 << " +/- "
              << fit.err_acceleration_deg_s2 << " deg/s^2 (distinct minima: "
              << fit.landscape.distinct_minima << ")\n";
    return result;
}

} // namespace

FitResult cmd_fit(const std::vector<std::string>& record_csvs, const std::string& mode,
                  const std::string& out_dir) {
    Stopwatch timer;
    if (record_csvs.empty()) throw ConfigError("fit: no record files given");
    if (mode != "fringe" && mode != "chirp")
        throw ConfigError("fit: mode must be fringe or chirp");
    ensure_dir(out_dir);

    std::vector<sim::CountRecord> records;
    records.reserve(record_csvs.size());
    for (const std::string& path : record_csvs) records.push_back(sim::read_record(path));

    FitResult result;
    if (mode == "fringe") {
        for (const auto& record : records)
            if (record.kind != sim::CountRecord::Kind::Angle)
                throw DataError("fit fringe: record " + record_csvs.front() +
                                " is not an angle sweep");
        result = fit_fringe_records(records, out_dir);
    } else {
        if (records.size() != 1)
            throw ConfigError("fit chirp: expected exactly one record");
        result = fit_chirp_record(records.front(), out_dir);
    }

    RunManifest manifest;
    manifest.command = "fit --mode " + mode;
    manifest.config_ref = record_csvs.front();
    manifest.config_hash = fnv1a_hex(result.report.dump());
    manifest.seed = records.front().config.rng_seed;
    manifest.outputs.push_back(result.report_path);
    if (!result.uncertainty_path.empty()) manifest.outputs.push_back(result.uncertainty_path);
    manifest.wall_seconds = timer.seconds();
    write_manifest(manifest, join(out_dir, "manifest_fit.json"));
    return result;
}

nlohmann::json cmd_gear_check(const sim::GearPlan& plan, const std::string& out_dir,
                              const std::string& dump_field_path) {
    Stopwatch timer;
    if (plan.charge == 0) throw ConfigError("gear-check: charge_l must be nonzero");
    if (plan.theta_deg.empty()) throw ConfigError("gear-check: theta_deg must be nonempty");
    ensure_dir(out_dir);

    optics::GearScenario scenario;
    scenario.grid = optics::GridSpec{plan.grid_n, plan.extent_m, plan.wavelength_m};
    scenario.waist = plan.waist_m;
    scenario.offset_x = plan.offset_x_m;
    scenario.offset_y = plan.offset_y_m;
    scenario.separation = plan.separation_m;
    scenario.charge = plan.charge;

    std::vector<double> thetas_rad(plan.theta_deg.size());
    for (size_t i = 0; i < thetas_rad.size(); ++i)
        thetas_rad[i] = plan.theta_deg[i] * std::numbers::pi / 180.0;
    const std::vector<optics::GearReport> reports =
        optics::run_gear_sweep(scenario, thetas_rad);

    nlohmann::json entries = nlohmann::json::array();
    for (size_t i = 0; i < reports.size(); ++i) {
        entries.push_back({{"theta_deg", plan.theta_deg[i]},
                           {"residual_mean_rad", reports[i].residual_mean},
                           {"residual_std_rad", reports[i].residual_std},
                           {"expected_rad", reports[i].expected}});
        std::cout << "gear-check: theta " << plan.theta_deg[i] << " deg -> residual std "
                  << reports[i].residual_std << " rad\n";
    }
    nlohmann::json report{
        {"grid_n", plan.grid_n},
        {"extent_m", plan.extent_m},
        {"wavelength_m", plan.wavelength_m},
        {"waist_m", plan.waist_m},
        {"offset_x_m", plan.offset_x_m},
        {"offset_y_m", plan.offset_y_m},
        {"separation_m", plan.separation_m},
        {"charge_l", plan.charge},
        {"sweep", entries},
        {"manifest", "manifest_gear.json"},
    };

    const std::string report_path = join(out_dir, "gear_report.json");
    {
        std::ofstream out(report_path);
        if (!out) throw DataError("cannot open " + report_path + " for writing");
        out << report.dump(2) << "\n";
    }

    RunManifest manifest;
    manifest.command = "gear-check";
    manifest.config_ref = "<gear plan>";
    manifest.config_hash = fnv1a_hex(report.dump());
    manifest.outputs.push_back(report_path);

    if (!dump_field_path.empty()) {
        // Dump the output beam after the full chain at the first theta.
        const optics::FieldGrid psi0 = optics::make_gaussian(
            scenario.waist, scenario.offset_x, scenario.offset_y, scenario.grid);
        optics::FieldGrid beam =
            optics::apply_spiral_plate(psi0, {scenario.charge, 0.0, 0.0, 0.0});
        if (scenario.separation > 0.0)
            beam = optics::propagate_fresnel(beam, scenario.separation);
        beam = optics::apply_spiral_plate(beam, {-scenario.charge, 0.0, 0.0, thetas_rad.front()});
        optics::write_field_file(beam, dump_field_path);
        manifest.outputs.push_back(dump_field_path);
    }

    manifest.wall_seconds = timer.seconds();
    write_manifest(manifest, join(out_dir, "manifest_gear.json"));
    return report;
}

namespace {

nlohmann::json load_fit_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open fit report " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("fit report parse error in " + path + ": " + e.what());
    }
    if (!j.contains("model")) throw DataError(path + " is not a fit report");
    return j;
}

} // namespace

std::vector<std::string> cmd_report(const std::vector<std::string>& fit_reports,
                                    const std::string& out_dir) {
    Stopwatch timer;
    if (fit_reports.empty()) throw ConfigError("report: no fit reports given");
    ensure_dir(out_dir);

    std::vector<nlohmann::json> reports;
    reports.reserve(fit_reports.size());
    for (const std::string& path : fit_reports) reports.push_back(load_fit_report(path));

    const std::string kind = reports.front().at("model").get<std::string>();
    for (const auto& r : reports)
        if (r.at("model").get<std::string>() != kind)
            throw ConfigError("report: cannot mix fringe and chirp fit reports");

    std::vector<std::string> outputs;
    for (size_t r = 0; r < reports.size(); ++r) {
        const nlohmann::json& j = reports[r];
        const int charge = j.at("topological_charge_l").get<int>();
        const double acq = j.at("acq_time_s").get<double>();
        char suffix[48];

        if (kind == "fringe") {
            quantum::FringeModel model;
            model.amplitude = j.at("amplitude_counts").get<double>();
            model.offset = j.at("offset_counts").get<double>();
            model.phase_deg = j.at("phase_c_deg").get<double>();
            model.photon_number = j.at("photon_number_n").get<int>();
            model.charge = charge;

            std::snprintf(suffix, sizeof suffix, "fringe_curve_l%d.csv", charge);
            const std::string curve_path = join(out_dir, suffix);
            std::ofstream out(curve_path);
            if (!out) throw DataError("cannot open " + curve_path + " for writing");
            out << "theta_deg,rate_hz\n";
            for (int i = 0; i < 3600; ++i) {
                const double theta = 0.1 * i;
                out << format_g(theta) << ","
                    << format_g(quantum::fringe_rate(theta, model) / acq) << "\n";
            }
            outputs.push_back(curve_path);

            const auto angles = j.at("angles_deg").get<std::vector<double>>();
            const auto spread = j.at("measured_std").get<std::vector<double>>();
            const est::UncertaintyCurve curve =
                est::uncertainty_curve(model, angles, spread);
            std::snprintf(suffix, sizeof suffix, "uncertainty_l%d.csv", charge);
            const std::string unc_path = join(out_dir, suffix);
            est::write_uncertainty_csv_file(curve, unc_path);
            outputs.push_back(unc_path);
        } else {
            std::snprintf(suffix, sizeof suffix, "chirp_curve_l%d.csv", charge);
            const std::string curve_path = join(out_dir, suffix);
            const double amplitude = j.at("amplitude_counts").get<double>();
            const double offset = j.at("offset_counts").get<double>();
            const double theta0 = j.at("theta0_rad").get<double>();
            const double w0 = j.at("speed_start_deg_per_s").get<double>();
            const double k = j.at("k_rad_per_s2").get<double>();
            const double duration = j.at("duration_s").get<double>();
            const int n = j.at("photon_number_n").get<int>();
            const double omega = std::numbers::pi * n * charge / 180.0;

            std::ofstream out(curve_path);
            if (!out) throw DataError("cannot open " + curve_path + " for writing");
            out << "time_s,rate_hz\n";
            const int samples = 2000;
            for (int i = 0; i < samples; ++i) {
                const double t = duration * i / samples;
                const double phase = theta0 + omega * w0 * t + 0.5 * k * t * t;
                const double counts = 0.5 * amplitude * (1.0 - std::cos(phase)) + offset;
                out << format_g(t) << "," << format_g(counts / acq) << "\n";
            }
            outputs.push_back(curve_path);
        }
    }

    RunManifest manifest;
    manifest.command = "report";
    manifest.config_ref = fit_reports.front();
    manifest.config_hash = fnv1a_hex(reports.front().dump());
    manifest.outputs = outputs;
    manifest.wall_seconds = timer.seconds();
    const std::string manifest_path = join(out_dir, "manifest_report.json");
    write_manifest(manifest, manifest_path);

    nlohmann::json index{{"series", outputs}, {"manifest", "manifest_report.json"}};
    const std::string index_path = join(out_dir, "report_index.json");
    std::ofstream out(index_path);
    if (!out) throw DataError("cannot open " + index_path + " for writing");
    out << index.dump(2) << "\n";
    outputs.push_back(index_path);

    std::cout << "report: wrote " << outputs.size() << " file(s) to " << out_dir << "\n";
    return outputs;
}

} // namespace gearsense::cli
