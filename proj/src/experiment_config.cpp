#include "gearsense/experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "gearsense/errors.hpp"

namespace gearsense::sim {

void ExperimentConfig::validate() const {
    if (!(pair_rate > 0.0)) throw ConfigError("pair_rate_hz must be > 0");
    if (singles1_rate < 0.0 || singles2_rate < 0.0)
        throw ConfigError("singles rates must be >= 0");
    if (coincidence_window < 0.0) throw ConfigError("coincidence_window_s must be >= 0");
    if (!(acq_time > 0.0)) throw ConfigError("acq_time_s must be > 0");
    if (visibility < 0.0 || visibility > 1.0) throw ConfigError("visibility must be in [0, 1]");
    if (photon_number < 1) throw ConfigError("photon_number_n must be >= 1");
    if (charge == 0) throw ConfigError("topological_charge_l must be nonzero");
    if (repeats < 1) throw ConfigError("repeats_m must be >= 1");
    if (drift_std_deg < 0.0) throw ConfigError("drift_std_deg_per_bin must be >= 0");
}

std::vector<double> SweepPlan::angles() const {
    if (count < 1) throw ConfigError("sweep count must be >= 1");
    if (!(step_deg > 0.0)) throw ConfigError("sweep step_deg must be > 0");
    std::vector<double> out(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = start_deg + step_deg * i;
    return out;
}

double ChirpModel::omega() const {
    return std::numbers::pi * photon_number * charge / 180.0;
}

void ChirpModel::validate() const {
    if (!(duration > 0.0)) throw ConfigError("chirp duration must be > 0");
    if (photon_number < 1 || charge == 0) throw ConfigError("chirp needs N >= 1 and l != 0");
    const double lhs = k * 180.0 * duration;
    const double rhs = std::numbers::pi * photon_number * charge * (speed_final - speed_start);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    if (std::abs(lhs - rhs) > 1e-12 * scale)
        throw ConfigError("chirp k is inconsistent with (w0, w_f, T, N, l)");
}

ChirpModel make_chirp(double theta0, double speed_start, double speed_final,
                      double duration, int photon_number, int charge) {
    ChirpModel chirp;
    chirp.theta0 = theta0;
    chirp.speed_start = speed_start;
    chirp.speed_final = speed_final;
    chirp.duration = duration;
    chirp.photon_number = photon_number;
    chirp.charge = charge;
    chirp.k = std::numbers::pi * photon_number * charge * (speed_final - speed_start) /
              (180.0 * duration);
    chirp.validate();
    return chirp;
}

void RunConfig::validate() const {
    if (schema_version != 1) throw ConfigError("unsupported schema_version");
    if (mode == "sweep") {
        if (!sweep) throw ConfigError("mode sweep requires a sweep section");
        experiment.validate();
        sweep->angles();
    } else if (mode == "chirp") {
        if (!chirp) throw ConfigError("mode chirp requires a chirp section");
        experiment.validate();
        if (chirp->bins < 1) throw ConfigError("chirp bins must be >= 1");
        if (!(chirp->duration > 0.0)) throw ConfigError("chirp duration_s must be > 0");
    } else if (mode == "gear") {
        if (!gear) throw ConfigError("mode gear requires a gear section");
        if (gear->charge == 0) throw ConfigError("gear charge_l must be nonzero");
        if (gear->grid_n < 2) throw ConfigError("gear grid_n must be >= 2");
        if (gear->theta_deg.empty()) throw ConfigError("gear theta_deg must be nonempty");
    } else {
        throw ConfigError("mode must be sweep, chirp or gear");
    }
}

namespace {

template <typename T>
T require(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing config field: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config field has wrong type: ") + key);
    }
}

} // namespace

nlohmann::json to_json(const ExperimentConfig& cfg) {
    return {
        {"pair_rate_hz", cfg.pair_rate},
        {"singles1_rate_hz", cfg.singles1_rate},
        {"singles2_rate_hz", cfg.singles2_rate},
        {"coincidence_window_s", cfg.coincidence_window},
        {"acq_time_s", cfg.acq_time},
        {"visibility", cfg.visibility},
        {"photon_number_n", cfg.photon_number},
        {"topological_charge_l", cfg.charge},
        {"repeats_m", cfg.repeats},
        {"drift_std_deg_per_bin", cfg.drift_std_deg},
        {"rng_seed", cfg.rng_seed},
        {"randomize_offset", cfg.randomize_offset},
    };
}

ExperimentConfig experiment_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.pair_rate = require<double>(j, "pair_rate_hz");
    cfg.singles1_rate = require<double>(j, "singles1_rate_hz");
    cfg.singles2_rate = require<double>(j, "singles2_rate_hz");
    cfg.coincidence_window = require<double>(j, "coincidence_window_s");
    cfg.acq_time = require<double>(j, "acq_time_s");
    cfg.visibility = require<double>(j, "visibility");
    cfg.photon_number = require<int>(j, "photon_number_n");
    cfg.charge = require<int>(j, "topological_charge_l");
    cfg.repeats = require<int>(j, "repeats_m");
    cfg.drift_std_deg = require<double>(j, "drift_std_deg_per_bin");
    cfg.rng_seed = require<std::uint64_t>(j, "rng_seed");
    cfg.randomize_offset = require<bool>(j, "randomize_offset");
    cfg.validate();
    return cfg;
}

nlohmann::json to_json(const RunConfig& cfg) {
    nlohmann::json j{{"schema_version", cfg.schema_version}, {"mode", cfg.mode}};
    if (cfg.mode == "sweep" || cfg.mode == "chirp") j["experiment"] = to_json(cfg.experiment);
    if (cfg.sweep) {
        j["sweep"] = {{"start_deg", cfg.sweep->start_deg},
                      {"step_deg", cfg.sweep->step_deg},
                      {"count", cfg.sweep->count},
                      {"offset_c0_deg", cfg.sweep->offset_c0_deg}};
    }
    if (cfg.chirp) {
        j["chirp"] = {{"theta0_rad", cfg.chirp->theta0},
                      {"speed_start_deg_per_s", cfg.chirp->speed_start},
                      {"accel_deg_per_s2", cfg.chirp->accel},
                      {"duration_s", cfg.chirp->duration},
                      {"bins", cfg.chirp->bins}};
    }
    if (cfg.gear) {
        j["gear"] = {{"grid_n", cfg.gear->grid_n},
                     {"extent_m", cfg.gear->extent_m},
                     {"wavelength_m", cfg.gear->wavelength_m},
                     {"waist_m", cfg.gear->waist_m},
                     {"offset_x_m", cfg.gear->offset_x_m},
                     {"offset_y_m", cfg.gear->offset_y_m},
                     {"separation_m", cfg.gear->separation_m},
                     {"charge_l", cfg.gear->charge},
                     {"theta_deg", cfg.gear->theta_deg}};
    }
    return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.schema_version = require<int>(j, "schema_version");
    cfg.mode = require<std::string>(j, "mode");
    if (cfg.mode == "sweep" || cfg.mode == "chirp") {
        if (!j.contains("experiment")) throw ConfigError("missing config field: experiment");
        cfg.experiment = experiment_from_json(j.at("experiment"));
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        SweepPlan plan;
        plan.start_deg = require<double>(s, "start_deg");
        plan.step_deg = require<double>(s, "step_deg");
        plan.count = require<int>(s, "count");
        plan.offset_c0_deg = require<double>(s, "offset_c0_deg");
        cfg.sweep = plan;
    }
    if (j.contains("chirp")) {
        const auto& c = j.at("chirp");
        ChirpPlan plan;
        plan.theta0 = require<double>(c, "theta0_rad");
        plan.speed_start = require<double>(c, "speed_start_deg_per_s");
        plan.accel = require<double>(c, "accel_deg_per_s2");
        plan.duration = require<double>(c, "duration_s");
        plan.bins = require<int>(c, "bins");
        cfg.chirp = plan;
    }
    if (j.contains("gear")) {
        const auto& g = j.at("gear");
        GearPlan plan;
        plan.grid_n = require<int>(g, "grid_n");
        plan.extent_m = require<double>(g, "extent_m");
        plan.wavelength_m = require<double>(g, "wavelength_m");
        plan.waist_m = require<double>(g, "waist_m");
        plan.offset_x_m = require<double>(g, "offset_x_m");
        plan.offset_y_m = require<double>(g, "offset_y_m");
        plan.separation_m = require<double>(g, "separation_m");
        plan.charge = require<int>(g, "charge_l");
        plan.theta_deg = require<std::vector<double>>(g, "theta_deg");
        cfg.gear = plan;
    }
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return run_config_from_json(j);
}

void save_run_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << to_json(cfg).dump(2) << "\n";
}

} // namespace gearsense::sim
