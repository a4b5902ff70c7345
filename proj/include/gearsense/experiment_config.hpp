#ifndef GEARSENSE_EXPERIMENT_CONFIG_HPP
#define GEARSENSE_EXPERIMENT_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace gearsense::sim {

// Source, detector and acquisition parameters for one simulated experiment.
// Rates are per second; the fringe amplitude decomposition is
//   A = V * pair_rate * acq_time                      [counts/bin]
//   B = ((1-V)/2 * pair_rate + s1*s2*window) * acq    [counts/bin]
// so the fitted visibility A/(A+2B) returns V when accidentals vanish and
// the angle-averaged pair flux is pair_rate/2 regardless of V.
struct ExperimentConfig {
    double pair_rate = 44900.0;            // coincidences/s at full fringe swing
    double singles1_rate = 500000.0;       // counts/s
    double singles2_rate = 490000.0;       // counts/s
    double coincidence_window = 0.5e-9;    // s
    double acq_time = 0.1;                 // s per bin
    double visibility = 1.0;               // in [0, 1]
    int photon_number = 2;                 // N
    int charge = 1;                        // l
    int repeats = 1;                       // M
    double drift_std_deg = 0.0;            // random-walk std of C per bin [deg of fringe phase]
    std::uint64_t rng_seed = 1;
    // When true each repeat draws its starting fringe offset uniformly over
    // one period (every run starts at a distinct relative phase); when false
    // all repeats start exactly at the supplied C0.
    bool randomize_offset = true;

    void validate() const; // throws ConfigError

    double amplitude_counts() const { return visibility * pair_rate * acq_time; }
    double accidental_rate() const { return singles1_rate * singles2_rate * coincidence_window; }
    double offset_counts() const {
        return (0.5 * (1.0 - visibility) * pair_rate + accidental_rate()) * acq_time;
    }
};

struct SweepPlan {
    double start_deg = 0.0;
    double step_deg = 3.0;
    int count = 120;
    double offset_c0_deg = 0.0;

    std::vector<double> angles() const;
};

// Accelerating-rotation fringe: the phase argument is
//   theta0 + (pi N l / 180) w0 t + (k/2) t^2,
// k = pi N l (w_f - w0) / (180 T). Mechanical acceleration in deg/s^2 is
// (w_f - w0) / T = 180 k / (pi N l).
struct ChirpModel {
    double theta0 = 0.0;       // initial phase [rad]
    double speed_start = 0.0;  // w0 [deg/s]
    double speed_final = 0.0;  // w_f [deg/s]
    double duration = 0.0;     // T [s]
    double k = 0.0;            // [rad/s^2]
    int photon_number = 2;
    int charge = 1;

    double omega() const;                 // pi N l / 180 [rad per deg]
    double acceleration_deg_s2() const { return omega() > 0 ? k / omega() : 0.0; }
    void validate() const;                // checks the k consistency identity to 1e-12
};

// Build a consistent chirp from speeds; k is derived.
ChirpModel make_chirp(double theta0, double speed_start, double speed_final,
                      double duration, int photon_number, int charge);

struct ChirpPlan {
    double theta0 = 0.0;          // [rad]
    double speed_start = 0.0;     // [deg/s]
    double accel = 1.0;           // [deg/s^2]
    double duration = 10.0;       // [s]
    int bins = 1000;
};

// Geometry for the plate-pair phase check.
struct GearPlan {
    int grid_n = 1024;
    double extent_m = 8e-3;
    double wavelength_m = 1064e-9;
    double waist_m = 0.5e-3;
    double offset_x_m = 2e-3;
    double offset_y_m = 0.0;
    double separation_m = 0.05;
    int charge = 16;
    std::vector<double> theta_deg = {0.0, 5.0, 10.0, 15.0, 20.0};
};

// Top-level config file: versioned JSON, one mode per file.
struct RunConfig {
    int schema_version = 1;
    std::string mode; // "sweep", "chirp" or "gear"
    ExperimentConfig experiment;
    std::optional<SweepPlan> sweep;
    std::optional<ChirpPlan> chirp;
    std::optional<GearPlan> gear;

    void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& cfg, const std::string& path);

} // namespace gearsense::sim

#endif
